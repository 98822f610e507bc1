//! Collapsing a subsurface to once-decorated discs.
//!
//! A selection is a set of decorations. Its polygons glued along the arcs
//! they share form the subsurface Σ. Each boundary cycle of Σ made of arcs
//! (a frontier cycle) becomes one new polygon whose weight is its side count
//! minus two; enclosed boundary components disappear with Σ.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arc::{dual_sgraph, ClosedArcWord, EdgeId, HalfEdge, SGraph, VertexId};
use crate::surface::{
    ArcId, Boundary, BuildError, Decoration, MixedAngulation, Occ, PolygonDesc, Side, SideDesc, SurfaceSpec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectionError {
    /// Nothing selected, or nothing left outside.
    EmptySelection { complement: bool },
    UnknownDecoration(String),
    /// The selection touches a boundary component without containing all of it.
    DanglingBoundary(String),
    NonSimpleFrontier(String),
}

impl fmt::Display for SelectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionError::EmptySelection { complement: false } => write!(f, "EmptySelection: nothing selected"),
            SelectionError::EmptySelection { complement: true } => {
                write!(f, "EmptySelection: the selection must leave some decoration out")
            }
            SelectionError::UnknownDecoration(d) => write!(f, "UnknownDecoration: {d}"),
            SelectionError::DanglingBoundary(b) => write!(f, "DanglingBoundary: {b}"),
            SelectionError::NonSimpleFrontier(m) => write!(f, "NonSimpleFrontier: {m}"),
        }
    }
}

/// Connected piece Σᵢ of the selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub polygons: Vec<usize>,
    pub interior: Vec<ArcId>,
    /// Indices into [`SubsurfaceSelection::cycles`].
    pub cycles: Vec<usize>,
    pub enclosed: Vec<usize>,
    pub genus: u32,
    /// One per frontier corner plus the marked points of enclosed boundaries.
    pub marked: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsurfaceSelection {
    pub inside: Vec<bool>,
    /// Arcs with both sides in the selection.
    pub interior: Vec<ArcId>,
    /// Frontier cycles as the inner sides, counterclockwise around the disc
    /// that replaces them.
    pub cycles: Vec<Vec<Side>>,
    pub components: Vec<Component>,
    pub enclosed: Vec<usize>,
}

impl SubsurfaceSelection {
    pub fn is_interior(&self, x: ArcId) -> bool {
        self.interior.contains(&x)
    }

    pub fn component_of_polygon(&self, p: usize) -> Option<usize> {
        self.components.iter().position(|c| c.polygons.contains(&p))
    }

    pub fn cycle_of_side(&self, s: Side) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(&s))
    }
}

pub fn select_by_name(a: &MixedAngulation, names: &[&str]) -> Result<SubsurfaceSelection, SelectionError> {
    let mut decs = Vec::new();
    for n in names {
        decs.push(a.spec.decoration_index(n).ok_or_else(|| SelectionError::UnknownDecoration((*n).into()))?);
    }
    select_subsurface(a, &decs)
}

pub fn select_subsurface(a: &MixedAngulation, decs: &[usize]) -> Result<SubsurfaceSelection, SelectionError> {
    select(a, decs, false)
}

/// Like [`select_subsurface`], but boundary segments of partly covered
/// boundary components count as frontier sides. Used to project angulations
/// reached by lifted flips, where selected polygons may meet the boundary.
pub fn select_open(a: &MixedAngulation, decs: &[usize]) -> Result<SubsurfaceSelection, SelectionError> {
    select(a, decs, true)
}

fn select(a: &MixedAngulation, decs: &[usize], open: bool) -> Result<SubsurfaceSelection, SelectionError> {
    if decs.is_empty() {
        return Err(SelectionError::EmptySelection { complement: false });
    }
    if let Some(&d) = decs.iter().find(|&&d| d >= a.spec.decorations.len()) {
        return Err(SelectionError::UnknownDecoration(format!("#{d}")));
    }
    let inside: Vec<bool> = a.polygons.iter().map(|p| decs.contains(&p.dec)).collect();
    if inside.iter().all(|&b| b) {
        return Err(SelectionError::EmptySelection { complement: true });
    }
    let occ = a.occurrences();
    let interior: Vec<ArcId> =
        (0..a.arcs.len()).filter(|&x| inside[occ[x][0].0] && inside[occ[x][1].0]).collect();
    let is_interior = |x: ArcId| inside[occ[x][0].0] && inside[occ[x][1].0];

    let mut touched = BTreeSet::new();
    for (p, poly) in a.polygons.iter().enumerate() {
        if inside[p] {
            for s in &poly.sides {
                if let Side::Bseg(b, _) = *s {
                    touched.insert(b);
                }
            }
        }
    }
    let mut partial = BTreeSet::new();
    for &b in &touched {
        for k in 0..a.spec.boundaries[b].marked {
            let (p, _) = a.locate_bseg(b, k).expect("segment present");
            if !inside[p] {
                if !open {
                    return Err(SelectionError::DanglingBoundary(a.spec.boundaries[b].name.clone()));
                }
                partial.insert(b);
            }
        }
    }
    let touched: BTreeSet<usize> = touched.difference(&partial).copied().collect();
    let on_frontier = |s: Side| match s {
        Side::Arc(x, _) => !is_interior(x),
        Side::Bseg(b, _) => partial.contains(&b),
    };

    let mut frontier: Vec<(usize, usize)> = Vec::new();
    for (p, poly) in a.polygons.iter().enumerate() {
        if !inside[p] {
            continue;
        }
        for (k, s) in poly.sides.iter().enumerate() {
            if on_frontier(*s) {
                frontier.push((p, k));
            }
        }
    }
    let total_sides: usize = a.polygons.iter().map(|p| p.sides.len()).sum();
    let mut used = vec![false; frontier.len()];
    let mut cycles = Vec::new();
    for i in 0..frontier.len() {
        if used[i] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = frontier[i];
        loop {
            let j = frontier.iter().position(|&f| f == cur).expect("frontier side");
            if used[j] {
                return Err(SelectionError::NonSimpleFrontier(format!(
                    "side {} revisited",
                    a.side_token(a.polygons[cur.0].sides[cur.1])
                )));
            }
            used[j] = true;
            cycle.push(a.polygons[cur.0].sides[cur.1]);
            let n = a.polygons[cur.0].sides.len();
            let mut c = (cur.0, (cur.1 + 1) % n);
            let mut guard = 0;
            loop {
                guard += 1;
                if guard > total_sides {
                    return Err(SelectionError::NonSimpleFrontier("frontier does not close".into()));
                }
                match a.polygons[c.0].sides[c.1] {
                    s if on_frontier(s) => break,
                    Side::Arc(..) => c = a.cw_corner(c).expect("arc side"),
                    Side::Bseg(b, _) => {
                        return Err(SelectionError::DanglingBoundary(a.spec.boundaries[b].name.clone()))
                    }
                }
            }
            cur = c;
            if cur == frontier[i] {
                break;
            }
        }
        cycles.push(cycle);
    }

    // components by union-find over interior arcs
    let mut parent: Vec<usize> = (0..a.polygons.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &x in &interior {
        let (p, q) = (occ[x][0].0, occ[x][1].0);
        let (rp, rq) = (root(&mut parent, p), root(&mut parent, q));
        parent[rp] = rq;
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut components: Vec<Component> = Vec::new();
    for p in 0..a.polygons.len() {
        if !inside[p] {
            continue;
        }
        let r = root(&mut parent, p);
        let ci = match roots.iter().position(|&x| x == r) {
            Some(ci) => ci,
            None => {
                roots.push(r);
                components.push(Component {
                    polygons: Vec::new(),
                    interior: Vec::new(),
                    cycles: Vec::new(),
                    enclosed: Vec::new(),
                    genus: 0,
                    marked: 0,
                });
                roots.len() - 1
            }
        };
        components[ci].polygons.push(p);
    }
    for c in components.iter_mut() {
        c.interior = interior.iter().copied().filter(|&x| c.polygons.contains(&occ[x][0].0)).collect();
        for (ci, cyc) in cycles.iter().enumerate() {
            let p = match cyc[0] {
                Side::Arc(x, o) => occ[x][o as usize].0,
                Side::Bseg(b, k) => a.locate_bseg(b, k).expect("segment present").0,
            };
            if c.polygons.contains(&p) {
                c.cycles.push(ci);
            }
        }
        for &b in &touched {
            let (p, _) = a.locate_bseg(b, 0).expect("segment present");
            if c.polygons.contains(&p) {
                c.enclosed.push(b);
            }
        }
        let chi = c.polygons.len() as i64 - c.interior.len() as i64;
        let holes = (c.cycles.len() + c.enclosed.len()) as i64;
        let twice_genus = 2 - holes - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(SelectionError::NonSimpleFrontier(format!("component with euler characteristic {chi}")));
        }
        c.genus = (twice_genus / 2) as u32;
        c.marked = c.cycles.iter().map(|&i| cycles[i].len() as u32).sum::<u32>()
            + c.enclosed.iter().map(|&b| a.spec.boundaries[b].marked).sum::<u32>();
    }
    Ok(SubsurfaceSelection { inside, interior, cycles, components, enclosed: touched.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseError {
    Selection(SelectionError),
    Build(BuildError),
}

impl fmt::Display for CollapseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseError::Selection(e) => e.fmt(f),
            CollapseError::Build(e) => write!(f, "NonSimpleFrontier: collapsed complex is invalid: {e}"),
        }
    }
}

impl From<SelectionError> for CollapseError {
    fn from(e: SelectionError) -> Self {
        CollapseError::Selection(e)
    }
}

#[derive(Clone, Debug)]
pub struct CollapseContext {
    pub original: MixedAngulation,
    pub selection: SubsurfaceSelection,
    pub collapsed: MixedAngulation,
    /// New id of each original arc, `None` for interior arcs.
    pub arc_map: Vec<Option<ArcId>>,
    /// New occurrence tag of each original occurrence of a kept arc.
    pub tag_map: Vec<[Occ; 2]>,
    /// New decoration of each original decoration; selected ones map to
    /// the decoration of their component when it has a single cycle.
    pub dec_map: Vec<Option<usize>>,
    /// New decoration created for each frontier cycle.
    pub cycle_dec: Vec<usize>,
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = String::from(base);
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

pub fn collapse(a: &MixedAngulation, sel: &SubsurfaceSelection) -> Result<CollapseContext, CollapseError> {
    let desc_side = |s: Side| match s {
        Side::Arc(x, _) => SideDesc::Arc(a.arcs[x].name.clone()),
        Side::Bseg(b, k) => SideDesc::Bseg(a.spec.boundaries[b].name.clone(), k),
    };
    let mut decorations = Vec::new();
    let mut descs = Vec::new();
    let mut raw: Vec<Vec<Side>> = Vec::new();
    let mut dec_map = vec![None; a.spec.decorations.len()];
    for (p, poly) in a.polygons.iter().enumerate() {
        if sel.inside[p] {
            continue;
        }
        let d = &a.spec.decorations[poly.dec];
        dec_map[poly.dec] = Some(decorations.len());
        decorations.push(d.clone());
        descs.push(PolygonDesc { dec: d.name.clone(), sides: poly.sides.iter().map(|&s| desc_side(s)).collect() });
        raw.push(poly.sides.clone());
    }
    let mut taken: Vec<String> = a.spec.decorations.iter().map(|d| d.name.clone()).collect();
    let mut cycle_dec = Vec::new();
    for (j, cyc) in sel.cycles.iter().enumerate() {
        let name = fresh_name(&taken, &format!("c{j}"));
        taken.push(name.clone());
        cycle_dec.push(decorations.len());
        decorations.push(Decoration { name: name.clone(), weight: cyc.len() as i32 - 2 });
        descs.push(PolygonDesc { dec: name, sides: cyc.iter().map(|&s| desc_side(s)).collect() });
        raw.push(cyc.clone());
    }
    for comp in &sel.components {
        if comp.cycles.len() == 1 {
            for &p in &comp.polygons {
                dec_map[a.polygons[p].dec] = Some(cycle_dec[comp.cycles[0]]);
            }
        }
    }
    let boundaries: Vec<Boundary> = a
        .spec
        .boundaries
        .iter()
        .enumerate()
        .filter(|(b, _)| !sel.enclosed.contains(b))
        .map(|(_, bd)| bd.clone())
        .collect();
    let kept: Vec<ArcId> = (0..a.arcs.len()).filter(|x| !sel.is_interior(*x)).collect();
    let chi = descs.len() as i64 - kept.len() as i64;
    let twice_genus = 2 - boundaries.len() as i64 - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(SelectionError::NonSimpleFrontier(format!("collapsed euler characteristic {chi}")).into());
    }
    let spec = SurfaceSpec { genus: (twice_genus / 2) as u32, boundaries, decorations };
    let shifts: Vec<(String, i64)> = kept.iter().map(|&x| (a.arcs[x].name.clone(), a.arcs[x].shift)).collect();
    let collapsed = MixedAngulation::build(spec, &descs, &shifts).map_err(CollapseError::Build)?;

    let mut arc_map = vec![None; a.arcs.len()];
    for &x in &kept {
        arc_map[x] = collapsed.arc_id(&a.arcs[x].name);
    }
    let mut tag_map = vec![[Occ::First, Occ::Second]; a.arcs.len()];
    let mut seen = vec![false; a.arcs.len()];
    for sides in &raw {
        for s in sides {
            if let Side::Arc(x, o) = *s {
                tag_map[x][o as usize] = if seen[x] { Occ::Second } else { Occ::First };
                seen[x] = true;
            }
        }
    }
    Ok(CollapseContext { original: a.clone(), selection: sel.clone(), collapsed, arc_map, tag_map, dec_map, cycle_dec })
}

/// Image of a closed arc under the collapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Collapsed {
    Word(ClosedArcWord),
    Vanished,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseArcError {
    UnknownArc(String),
    /// The word is not a path in the original dual graph.
    Inconsistent,
    /// The word runs through a component of Σ that is not a disc with one
    /// frontier cycle along one of its non-tree edges.
    NonDiscPass(String),
    /// The word passes a component of Σ with several frontier cycles.
    MultiCycleComponent,
    /// A pass through Σ returns to the same merged turn class from both
    /// sides, so its winding is not determined.
    AmbiguousTurn,
}

impl fmt::Display for CollapseArcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseArcError::UnknownArc(a) => write!(f, "UnknownArc: {a}"),
            CollapseArcError::Inconsistent => write!(f, "word is not a path in the dual graph"),
            CollapseArcError::NonDiscPass(e) => write!(f, "word crosses {e} around the topology of the subsurface"),
            CollapseArcError::MultiCycleComponent => write!(f, "word passes a subsurface with several frontier cycles"),
            CollapseArcError::AmbiguousTurn => write!(f, "winding of a pass through the subsurface is not determined"),
        }
    }
}

/// Cyclic rotation of one vertex during contraction; `None` marks a dead
/// vertex.
struct Work {
    rotation: Vec<Vec<HalfEdge>>,
    ends: Vec<[VertexId; 2]>,
}

impl Work {
    fn pos(&self, v: VertexId, h: HalfEdge) -> usize {
        self.rotation[v].iter().position(|&x| x == h).expect("half-edge at vertex")
    }
}

fn arrive(e: EdgeId, fwd: bool) -> HalfEdge {
    HalfEdge::End(e, if fwd { 1 } else { 0 })
}

fn leave(e: EdgeId, fwd: bool) -> HalfEdge {
    HalfEdge::End(e, if fwd { 0 } else { 1 })
}

fn split_turn(t: i64, n: i64) -> (i64, i64) {
    let r = (t - 1).rem_euclid(n) + 1;
    ((t - r) / n, r)
}

/// Contracts a non-loop edge, merging its far end into its near end and
/// rewriting every word. Words made only of the edge become `None`, as do
/// words whose merged turn is ambiguous; the indices of the latter are
/// returned.
fn contract(w: &mut Work, e: EdgeId, words: &mut [Option<ClosedArcWord>]) -> Vec<usize> {
    let mut ambiguous = Vec::new();
    let [x, y] = w.ends[e];
    debug_assert_ne!(x, y);
    let hx = HalfEdge::End(e, 0);
    let hy = HalfEdge::End(e, 1);
    let nx = w.rotation[x].len() as i64;
    let ny = w.rotation[y].len() as i64;
    let nm = nx + ny - 2;
    let px = w.pos(x, hx);
    let py = w.pos(y, hy);
    let xs: Vec<HalfEdge> = (1..nx as usize).map(|i| w.rotation[x][(px + i) % nx as usize]).collect();
    let ys: Vec<HalfEdge> = (1..ny as usize).map(|i| w.rotation[y][(py + i) % ny as usize]).collect();
    let mpos = |v: VertexId, h: HalfEdge| -> i64 {
        if v == x {
            xs.iter().position(|&g| g == h).expect("x half-edge") as i64
        } else {
            nx - 1 + ys.iter().position(|&g| g == h).expect("y half-edge") as i64
        }
    };
    let touches = |v: VertexId| v == x || v == y;
    for (wi, slot) in words.iter_mut().enumerate() {
        let Some(word) = slot.as_ref() else { continue };
        let mut verts = vec![word.start];
        for &(f, fwd) in &word.path {
            verts.push(w.ends[f][if fwd { 1 } else { 0 }]);
        }
        if !verts.iter().any(|&v| touches(v)) {
            continue;
        }
        let kept: Vec<usize> = (0..word.path.len()).filter(|&i| word.path[i].0 != e).collect();
        if kept.is_empty() {
            *slot = None;
            continue;
        }
        let mut turns = Vec::with_capacity(kept.len() - 1);
        for pair in kept.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b == a + 1 && !touches(verts[b]) {
                turns.push(word.turns[a]);
                continue;
            }
            let (f1, d1) = word.path[a];
            let (f2, d2) = word.path[b];
            let rho = mpos(verts[a + 1], arrive(f1, d1)) - mpos(verts[b], leave(f2, d2));
            let sweep = word.turns[a..b].iter().map(|&t| -turn_delta(t)).sum();
            match merged_turn(sweep, (-rho).rem_euclid(nm), nm) {
                Some(t) => turns.push(t),
                None => break,
            }
        }
        if turns.len() + 1 != kept.len() {
            *slot = None;
            ambiguous.push(wi);
            continue;
        }
        let first = kept[0];
        let grading = word.grading + word.turns[..first].iter().map(|&t| turn_delta(t)).sum::<i64>();
        let start = if verts[first] == y { x } else { verts[first] };
        let path = kept.iter().map(|&i| word.path[i]).collect();
        *slot = Some(ClosedArcWord { start, path, turns, grading });
    }
    let mut merged = xs;
    merged.extend(ys);
    w.rotation[x] = merged;
    w.rotation[y] = Vec::new();
    for ends in w.ends.iter_mut() {
        for v in ends.iter_mut() {
            if *v == y {
                *v = x;
            }
        }
    }
    ambiguous
}

fn turn_delta(t: i64) -> i64 {
    t.signum() - t
}

/// The turn congruent to `rho` modulo `nm` whose sweep `t - sgn t` is
/// nearest to `sweep`, preferring the shorter turn on a tie. `None` when
/// two opposite turns tie.
fn merged_turn(sweep: i64, rho: i64, nm: i64) -> Option<i64> {
    let near = |t: i64| ((t - t.signum() - sweep).abs(), t.abs());
    let base = if rho == 0 { nm } else { rho };
    let k = (sweep - base).div_euclid(nm);
    let mut c: Vec<i64> = (k - 2..=k + 2).map(|j| base + j * nm).filter(|&t| t != 0).collect();
    c.sort_by_key(|&t| near(t));
    (c.len() == 1 || near(c[0]) != near(c[1])).then_some(c[0])
}

/// Deletes a half-edge from a vertex, recounting the turns that sweep it.
fn delete_half_edge(w: &mut Work, v: VertexId, h: HalfEdge, words: &mut [Option<ClosedArcWord>]) {
    let n = w.rotation[v].len() as i64;
    let ph = w.pos(v, h) as i64;
    for word in words.iter_mut().flatten() {
        let mut cur = word.start;
        for i in 0..word.turns.len() {
            let (e, fwd) = word.path[i];
            cur = w.ends[e][if fwd { 1 } else { 0 }];
            if cur != v {
                continue;
            }
            let p1 = w.pos(v, arrive(e, fwd)) as i64;
            let (k, r) = split_turn(word.turns[i], n);
            let off = (ph - p1).rem_euclid(n);
            let swept = off >= 1 && off <= r;
            let r2 = if swept { r - 1 } else { r };
            word.turns[i] = k * (n - 1) + r2;
        }
        let _ = cur;
    }
    w.rotation[v].retain(|&x| x != h);
}

impl CollapseContext {
    /// Images of several closed arcs on the dual graph of the original
    /// angulation, as words on the dual graph of the collapsed one.
    pub fn collapse_words(
        &self,
        words: &[ClosedArcWord],
    ) -> Vec<Result<Collapsed, CollapseArcError>> {
        let s = dual_sgraph(&self.original);
        let sel = &self.selection;
        let mut out: Vec<Option<Result<Collapsed, CollapseArcError>>> = vec![None; words.len()];
        for (i, wd) in words.iter().enumerate() {
            if !wd.is_consistent(&s) {
                out[i] = Some(Err(CollapseArcError::Inconsistent));
            } else if wd.path.iter().all(|&(e, _)| sel.is_interior(e)) {
                out[i] = Some(Ok(Collapsed::Vanished));
            }
        }
        let mut work = Work { rotation: s.rotation.clone(), ends: s.edges.iter().map(|e| e.ends).collect() };
        let mut live: Vec<Option<ClosedArcWord>> =
            words.iter().enumerate().map(|(i, w)| if out[i].is_none() { Some(w.clone()) } else { None }).collect();
        for (ci, comp) in sel.components.iter().enumerate() {
            let touches = |w: &ClosedArcWord| {
                let mut vs = vec![w.start];
                vs.extend(w.path.iter().map(|&(e, f)| s.edges[e].ends[if f { 1 } else { 0 }]));
                vs.iter().any(|v| comp.polygons.contains(v))
            };
            if comp.cycles.len() != 1 {
                for (i, w) in live.iter_mut().enumerate() {
                    if w.as_ref().is_some_and(&touches) {
                        *w = None;
                        out[i] = Some(Err(CollapseArcError::MultiCycleComponent));
                    }
                }
                continue;
            }
            let _ = ci;
            // spanning tree by repeated contraction of non-loop interior edges
            let mut tree = Vec::new();
            loop {
                let next = comp.interior.iter().copied().find(|&e| {
                    let [a, b] = work.ends[e];
                    a != b && !tree.contains(&e)
                });
                match next {
                    Some(e) => {
                        for i in contract(&mut work, e, &mut live) {
                            out[i] = Some(Err(CollapseArcError::AmbiguousTurn));
                        }
                        tree.push(e);
                    }
                    None => break,
                }
            }
            let root = work.ends[comp.interior.first().copied().unwrap_or(0)][0];
            let root = if comp.interior.is_empty() { comp.polygons[0] } else { root };
            for &e in comp.interior.iter().filter(|e| !tree.contains(e)) {
                for (i, w) in live.iter_mut().enumerate() {
                    if w.as_ref().is_some_and(|w| w.path.iter().any(|&(f, _)| f == e)) {
                        *w = None;
                        out[i] = Some(Err(CollapseArcError::NonDiscPass(s.edges[e].name.clone())));
                    }
                }
                delete_half_edge(&mut work, root, HalfEdge::End(e, 0), &mut live);
                delete_half_edge(&mut work, root, HalfEdge::End(e, 1), &mut live);
            }
            let legs: Vec<HalfEdge> =
                work.rotation[root].iter().copied().filter(|h| matches!(h, HalfEdge::Ext(_))).collect();
            for h in legs {
                delete_half_edge(&mut work, root, h, &mut live);
            }
        }
        let target = dual_sgraph(&self.collapsed);
        for (i, w) in live.into_iter().enumerate() {
            if out[i].is_some() {
                continue;
            }
            let Some(w) = w else {
                out[i] = Some(Ok(Collapsed::Vanished));
                continue;
            };
            out[i] = Some(self.translate(&s, &target, &w));
        }
        out.into_iter().map(|o| o.expect("every word handled")).collect()
    }

    fn translate(&self, s: &SGraph, target: &SGraph, w: &ClosedArcWord) -> Result<Collapsed, CollapseArcError> {
        let vmap = |v: VertexId| -> Result<VertexId, CollapseArcError> {
            self.dec_map[self.original.polygons[v].dec].ok_or(CollapseArcError::MultiCycleComponent)
        };
        let mut path = Vec::new();
        for &(e, fwd) in &w.path {
            let ne = self.arc_map[e].ok_or_else(|| CollapseArcError::UnknownArc(s.edges[e].name.clone()))?;
            let flipped = self.tag_map[e][0] == Occ::Second;
            path.push((ne, fwd != flipped));
        }
        let out = ClosedArcWord { start: vmap(w.start)?, path, turns: w.turns.clone(), grading: w.grading };
        if !out.is_consistent(target) {
            return Err(CollapseArcError::Inconsistent);
        }
        let mut out = out;
        out.reduce();
        if out.is_empty() {
            return Ok(Collapsed::Vanished);
        }
        Ok(Collapsed::Word(out))
    }

    pub fn collapse_arc(&self, w: &ClosedArcWord) -> Result<Collapsed, CollapseArcError> {
        self.collapse_words(core::slice::from_ref(w)).pop().expect("one word")
    }
}
