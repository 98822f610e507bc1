//! Lifting flips of a collapsed angulation to flip sequences upstairs.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::collapse::{collapse, select_open, CollapseContext, CollapseError};
use crate::exchange::canonical_key;
use crate::flip::{flip, monogon_disc, Direction};
use crate::surface::{ArcId, MixedAngulation, Occ, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipType {
    /// Neither side of the arc is a collapsed polygon.
    Plain,
    /// The collapsed polygon has at least three sides, or is a bigon over
    /// a component carrying nonzero weights.
    I,
    /// Bigon over a chain of weight 0 polygons; `chain` lists its arcs.
    II { chain: Vec<ArcId> },
    /// Monogon around a component with marked points inside.
    III,
    /// Monogon around a component without marked points inside.
    IV,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    UnknownArc(ArcId),
    NoValidRefinement(String),
    Collapse(CollapseError),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::UnknownArc(a) => write!(f, "UnknownArc: {a}"),
            LiftError::NoValidRefinement(s) => write!(f, "NoValidRefinement: {s}"),
            LiftError::Collapse(e) => write!(f, "{e}"),
        }
    }
}

impl From<CollapseError> for LiftError {
    fn from(e: CollapseError) -> Self {
        LiftError::Collapse(e)
    }
}

/// A flip of the collapsed angulation realised upstairs.
#[derive(Clone, Debug)]
pub struct Lift {
    pub kind: FlipType,
    /// Flips of arcs inside the selection turning the original angulation
    /// into the refinement.
    pub refinement: Vec<(ArcId, Direction)>,
    pub refined: MixedAngulation,
    /// The lifted sequence, starting with the preimage of the arc.
    pub flips: Vec<(ArcId, Direction)>,
    /// Type IV only: number of half-edges at `A` before each flip and at
    /// the end.
    pub half_edges: Vec<usize>,
    /// Type IV only: for each flip after the first, whether the previous
    /// flipped arc precedes the new one at `B`.
    pub order: Vec<bool>,
    pub result: MixedAngulation,
}

/// Selected decorations of the context.
pub fn selected_decorations(ctx: &CollapseContext) -> Vec<usize> {
    let a = &ctx.original;
    (0..a.polygons.len()).filter(|&p| ctx.selection.inside[p]).map(|p| a.polygons[p].dec).collect()
}

/// Collapses another angulation of the same surface along the same
/// decorations.
pub fn project(ctx: &CollapseContext, a: &MixedAngulation) -> Result<CollapseContext, LiftError> {
    let sel = select_open(a, &selected_decorations(ctx)).map_err(CollapseError::from)?;
    Ok(collapse(a, &sel)?)
}

/// Breadth-first serialization keeping arc names but dropping decoration
/// names and gradings.
pub fn named_key(a: &MixedAngulation) -> String {
    let occ = a.occurrences();
    let mut seen = vec![false; a.polygons.len()];
    let mut out = String::new();
    let Some(root) = a.locate_bseg(0, 0) else { return out };
    let mut queue = VecDeque::new();
    queue.push_back(root);
    seen[root.0] = true;
    while let Some((p, start)) = queue.pop_front() {
        let sides = &a.polygons[p].sides;
        let _ = write!(out, "[{}:", a.spec.decorations[a.polygons[p].dec].weight);
        for k in 0..sides.len() {
            match sides[(start + k) % sides.len()] {
                Side::Bseg(b, i) => {
                    let _ = write!(out, " b{b}.{i}");
                }
                Side::Arc(x, o) => {
                    let _ = write!(out, " {}", a.arcs[x].name);
                    let (q, j) = occ[x][o.other() as usize];
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back((q, j));
                    }
                }
            }
        }
        out.push(']');
    }
    out
}

/// Whether `upstairs` collapses to the forward flip of `gbar` downstairs,
/// up to renaming arcs and decorations.
pub fn commutes(ctx: &CollapseContext, gbar: ArcId, upstairs: &MixedAngulation) -> bool {
    let Ok(down) = flip(&ctx.collapsed, gbar, Direction::Forward) else { return false };
    let Ok(proj) = project(ctx, upstairs) else { return false };
    canonical_key(&proj.collapsed) == canonical_key(&down.0)
}

fn preimage(ctx: &CollapseContext, gbar: ArcId) -> Result<ArcId, LiftError> {
    let name = &ctx.collapsed.arcs.get(gbar).ok_or(LiftError::UnknownArc(gbar))?.name;
    ctx.original.arc_id(name).ok_or(LiftError::UnknownArc(gbar))
}

/// Collapsed polygons on either side of `gbar` with the component behind
/// each, first occurrence first.
fn collapsed_sides(ctx: &CollapseContext, gbar: ArcId) -> Vec<(Occ, usize, usize)> {
    let b = &ctx.collapsed;
    let mut out = Vec::new();
    for o in [Occ::First, Occ::Second] {
        let (p, _) = b.locate(gbar, o);
        let dec = b.polygons[p].dec;
        if let Some(j) = ctx.cycle_dec.iter().position(|&d| d == dec) {
            if let Some(ci) = ctx.selection.components.iter().position(|c| c.cycles.contains(&j)) {
                out.push((o, p, ci));
            }
        }
    }
    out
}

pub fn classify_flip_type(ctx: &CollapseContext, gbar: ArcId) -> Result<FlipType, LiftError> {
    let gt = preimage(ctx, gbar)?;
    let sides = collapsed_sides(ctx, gbar);
    let Some(&(_, p, ci)) = sides.first() else { return Ok(FlipType::Plain) };
    let comp = &ctx.selection.components[ci];
    let n = ctx.collapsed.polygons[p].sides.len();
    let a = &ctx.original;
    Ok(match n {
        1 if !comp.enclosed.is_empty() => FlipType::III,
        1 => FlipType::IV,
        2 if comp.polygons.iter().all(|&q| a.spec.decorations[a.polygons[q].dec].weight == 0) => {
            match bigon_chain(ctx, gt, ci) {
                Some(chain) => FlipType::II { chain },
                None => FlipType::I,
            }
        }
        _ => FlipType::I,
    })
}

/// Interior arcs of a chain of bigons, walking away from `gt`.
fn bigon_chain(ctx: &CollapseContext, gt: ArcId, ci: usize) -> Option<Vec<ArcId>> {
    let a = &ctx.original;
    let comp = &ctx.selection.components[ci];
    let occ = a.occurrences();
    let start = [Occ::First, Occ::Second].into_iter().find(|&o| comp.polygons.contains(&occ[gt][o as usize].0))?;
    let (mut p, mut i) = occ[gt][start as usize];
    let mut chain = Vec::new();
    loop {
        let sides = &a.polygons[p].sides;
        if sides.len() != 2 {
            return None;
        }
        let Side::Arc(x, o) = sides[(i + 1) % 2] else { return None };
        if !ctx.selection.is_interior(x) {
            break;
        }
        chain.push(x);
        (p, i) = occ[x][o.other() as usize];
    }
    (chain.len() == comp.interior.len()).then_some(chain)
}

/// Half-edges `(arc, end)` at marked point `v`, counterclockwise from the
/// outgoing boundary segment. `end` is 0 for the start of the arc.
pub fn half_edges(a: &MixedAngulation, v: usize) -> Vec<(ArcId, u8)> {
    let mp = a.marked_points();
    let fan = &mp.fan[v];
    let mut out = Vec::new();
    for &(p, k) in &fan[..fan.len().saturating_sub(1)] {
        let n = a.polygons[p].sides.len();
        if let Side::Arc(x, o) = a.polygons[p].sides[(k + n - 1) % n] {
            out.push((x, if o == Occ::First { 1 } else { 0 }));
        }
    }
    out
}

fn arcs_inside(ctx: &CollapseContext) -> Vec<ArcId> {
    ctx.selection.interior.clone()
}

/// Interior flip sequences tried by the type I search, breadth first.
const SEARCH_NODES: usize = 4000;

fn search_refinement(ctx: &CollapseContext, gbar: ArcId, gt: ArcId) -> Result<(Vec<(ArcId, Direction)>, MixedAngulation), LiftError> {
    let inner = arcs_inside(ctx);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(named_key(&ctx.original));
    queue.push_back((Vec::new(), ctx.original.clone()));
    while let Some((path, a)) = queue.pop_front() {
        let up = flip(&a, gt, Direction::Forward).map_err(|_| LiftError::UnknownArc(gbar))?.0;
        if commutes(ctx, gbar, &up) {
            return Ok((path, a));
        }
        for &x in &inner {
            for d in [Direction::Forward, Direction::Backward] {
                let b = flip(&a, x, d).expect("interior arc").0;
                if seen.len() >= SEARCH_NODES || !seen.insert(named_key(&b)) {
                    continue;
                }
                let mut p = path.clone();
                p.push((x, d));
                queue.push_back((p, b));
            }
        }
    }
    Err(LiftError::NoValidRefinement(String::from("no interior flips align the arc")))
}

/// Arcs joining the outer point to marked points inside, in increasing
/// half-edge order at the outer point.
fn spokes(ctx: &CollapseContext, a: &MixedAngulation, at: usize) -> Vec<ArcId> {
    let mp = a.marked_points();
    let inner: Vec<usize> = (0..mp.label.len()).filter(|&v| ctx.selection.enclosed.contains(&mp.label[v].0)).collect();
    let hs = half_edges(a, at);
    let mut out = Vec::new();
    for &(x, _) in hs.iter().rev() {
        if !ctx.selection.is_interior(x) || out.contains(&x) {
            continue;
        }
        let (u, v) = a.arc_endpoints(x, &mp);
        if (u == at && inner.contains(&v)) || (v == at && inner.contains(&u)) {
            out.push(x);
        }
    }
    out
}

/// Marked points `A` and `B`: the ends of the side following the preimage
/// in the outer polygon.
fn outer_points(ctx: &CollapseContext, gt: ArcId, a: &MixedAngulation) -> Result<(usize, usize, ArcId), LiftError> {
    let mp = a.marked_points();
    for o in [Occ::First, Occ::Second] {
        let (p, i) = a.locate(gt, o);
        if ctx.selection.inside[p] {
            continue;
        }
        let n = a.polygons[p].sides.len();
        let j = (i + 1) % n;
        return Ok((mp.point[p][j], mp.point[p][(j + 1) % n], gt));
    }
    Err(LiftError::NoValidRefinement(String::from("arc has no outer side")))
}

/// Lesser half-edge of `x` at `v`: the one further counterclockwise.
fn lesser(hs: &[(ArcId, u8)], x: ArcId) -> Option<usize> {
    hs.iter().rposition(|h| h.0 == x)
}

struct TypeFour {
    flips: Vec<(ArcId, Direction)>,
    counts: Vec<usize>,
    order: Vec<bool>,
    result: MixedAngulation,
}

/// Whether the half-edge of `x` at `v` is the immediate predecessor of
/// that of `y` in the order at `v`. Loops are taken at their greater end,
/// except `y` at its lesser one when `y_lesser` is set.
fn precedes_at(a: &MixedAngulation, v: usize, x: ArcId, y: ArcId, y_lesser: bool) -> bool {
    let hs = half_edges(a, v);
    let j = if y_lesser { lesser(&hs, y) } else { hs.iter().position(|h| h.0 == y) };
    match (hs.iter().position(|h| h.0 == x), j) {
        (Some(i), Some(j)) => i == j + 1,
        _ => false,
    }
}

fn type_four(ctx: &CollapseContext, gt: ArcId, a0: &MixedAngulation) -> Result<TypeFour, LiftError> {
    let (pa, pb, _) = outer_points(ctx, gt, a0)?;
    let mut order = Vec::new();
    let mut a = a0.clone();
    let mut flips = Vec::new();
    let mut counts = Vec::new();
    let mut cur = gt;
    let mut prev: Option<ArcId> = None;
    let cap = 4 * a.arcs.len() + 8;
    loop {
        if flips.len() > cap {
            return Err(LiftError::NoValidRefinement(String::from("type IV iteration does not terminate")));
        }
        let hs = half_edges(&a, pa);
        counts.push(hs.len());
        let mono = monogon_disc(&a, cur).is_some();
        let next = if mono {
            Some(prev.ok_or_else(|| LiftError::NoValidRefinement(String::from("first arc is a monogon")))?)
        } else {
            let l = lesser(&hs, cur).ok_or_else(|| LiftError::NoValidRefinement(String::from("arc misses A")))?;
            // the successor in the order at A sits one step clockwise
            l.checked_sub(1).map(|k| hs[k].0)
        };
        a = flip(&a, cur, Direction::Forward).expect("arc in range").0;
        if let Some(&(p, _)) = flips.last() {
            order.push(precedes_at(&a, pb, p, cur, mono));
        }
        flips.push((cur, Direction::Forward));
        match next {
            Some(n) => {
                prev = Some(cur);
                cur = n;
            }
            None => break,
        }
    }
    counts.push(half_edges(&a, pa).len());
    Ok(TypeFour { flips, counts, order, result: a })
}

/// Refinement of the original angulation adapted to flipping `gbar`.
pub fn refine(ctx: &CollapseContext, gbar: ArcId, kind: &FlipType) -> Result<(Vec<(ArcId, Direction)>, MixedAngulation), LiftError> {
    let gt = preimage(ctx, gbar)?;
    match kind {
        FlipType::I => search_refinement(ctx, gbar, gt),
        _ => Ok((Vec::new(), ctx.original.clone())),
    }
}

pub fn lift_flip(ctx: &CollapseContext, gbar: ArcId) -> Result<Lift, LiftError> {
    let gt = preimage(ctx, gbar)?;
    let kind = classify_flip_type(ctx, gbar)?;
    let (refinement, refined) = refine(ctx, gbar, &kind)?;
    let fwd = |x: ArcId| (x, Direction::Forward);
    let mut half_edges = Vec::new();
    let mut order = Vec::new();
    let (flips, result) = match &kind {
        FlipType::Plain | FlipType::I => {
            let r = flip(&refined, gt, Direction::Forward).expect("arc in range").0;
            (vec![fwd(gt)], r)
        }
        FlipType::II { chain } => {
            let seq: Vec<_> = core::iter::once(gt).chain(chain.iter().copied()).map(fwd).collect();
            let r = crate::flip::apply_script(&refined, &seq).expect("arcs in range");
            (seq, r)
        }
        FlipType::III => {
            let (pa, _, _) = outer_points(ctx, gt, &refined)?;
            let seq: Vec<_> = core::iter::once(gt).chain(spokes(ctx, &refined, pa)).map(fwd).collect();
            let r = crate::flip::apply_script(&refined, &seq).expect("arcs in range");
            (seq, r)
        }
        FlipType::IV => {
            let t = type_four(ctx, gt, &refined)?;
            half_edges = t.counts;
            order = t.order;
            (t.flips, t.result)
        }
    };
    if !commutes(ctx, gbar, &result) {
        return Err(LiftError::NoValidRefinement(String::from("lifted flips do not project to the flip")));
    }
    Ok(Lift { kind, refinement, refined, flips, half_edges, order, result })
}
