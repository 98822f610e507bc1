//! Dual S-graphs and graded closed arcs as reduced words over them.
//!
//! A word runs along edges of a reference S-graph. At every intermediate
//! vertex it records a turn: the signed number of clockwise half-edge steps
//! from the half-edge it arrives on to the one it leaves by. Winding is
//! allowed, so a full turn around a vertex is `±valency`. A turn of zero is
//! a backtrack and is removed by [`ClosedArcWord::reduce`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::surface::{MixedAngulation, Occ, Side};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfEdge {
    /// End 0 or 1 of an internal edge.
    End(EdgeId, u8),
    /// Unpaired leg, e.g. the dual of a boundary segment.
    Ext(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SEdge {
    pub name: String,
    pub ends: [VertexId; 2],
    pub shift: i64,
}

/// Ribbon graph with clockwise rotation at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<SEdge>,
    pub externals: Vec<String>,
    pub rotation: Vec<Vec<HalfEdge>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcError {
    DistinctVertices,
    EndpointMismatch,
    DegenerateArc,
    NoSharedEndpoint,
    UnknownEdge(String),
    /// Half twists need a core with two distinct endpoints.
    LoopCore,
}

impl fmt::Display for ArcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcError::DistinctVertices => write!(f, "DistinctVertices: ends sit at different vertices"),
            ArcError::EndpointMismatch => write!(f, "EndpointMismatch"),
            ArcError::DegenerateArc => write!(f, "DegenerateArc: result is contractible"),
            ArcError::NoSharedEndpoint => write!(f, "NoSharedEndpoint"),
            ArcError::UnknownEdge(e) => write!(f, "UnknownEdge: {e}"),
            ArcError::LoopCore => write!(f, "twist core is a loop"),
        }
    }
}

/// Dual S-graph: a vertex per decoration, an edge per arc (end 0 in the
/// polygon of the first occurrence), a leg per boundary segment.
pub fn dual_sgraph(a: &MixedAngulation) -> SGraph {
    let vertices = a.spec.decorations.iter().map(|d| d.name.clone()).collect();
    let occ = a.occurrences();
    let edges = a
        .arcs
        .iter()
        .enumerate()
        .map(|(i, arc)| SEdge {
            name: arc.name.clone(),
            ends: [occ[i][0].0, occ[i][1].0],
            shift: arc.shift,
        })
        .collect();
    let mut externals = Vec::new();
    let mut ext_id = BTreeIndex::default();
    for (b, bd) in a.spec.boundaries.iter().enumerate() {
        for k in 0..bd.marked {
            ext_id.insert((b, k), externals.len());
            externals.push(format!("{}.{}", bd.name, k));
        }
    }
    let rotation = a
        .polygons
        .iter()
        .map(|p| {
            p.sides
                .iter()
                .rev()
                .map(|&s| match s {
                    Side::Arc(x, o) => HalfEdge::End(x, if o == Occ::First { 0 } else { 1 }),
                    Side::Bseg(b, k) => HalfEdge::Ext(ext_id.get((b, k))),
                })
                .collect()
        })
        .collect();
    SGraph { vertices, edges, externals, rotation }
}

#[derive(Default)]
struct BTreeIndex(alloc::collections::BTreeMap<(usize, u32), usize>);

impl BTreeIndex {
    fn insert(&mut self, k: (usize, u32), v: usize) {
        self.0.insert(k, v);
    }
    fn get(&self, k: (usize, u32)) -> usize {
        self.0[&k]
    }
}

/// `1 - d`.
pub fn dual_index(d: i64) -> i64 {
    1 - d
}

impl SGraph {
    pub fn valency(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> Option<VertexId> {
        match h {
            HalfEdge::End(e, i) => Some(self.edges[e].ends[i as usize]),
            HalfEdge::Ext(x) => self.rotation.iter().position(|r| r.contains(&HalfEdge::Ext(x))),
        }
    }

    pub fn position(&self, v: VertexId, h: HalfEdge) -> Option<usize> {
        self.rotation[v].iter().position(|&x| x == h)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Clockwise steps from `h1` to `h2` at vertex `v`, in `1..=valency`.
    pub fn cw_steps(&self, v: VertexId, h1: HalfEdge, h2: HalfEdge) -> usize {
        let n = self.valency(v);
        let p1 = self.position(v, h1).expect("half-edge at vertex");
        let p2 = self.position(v, h2).expect("half-edge at vertex");
        let d = (p2 + n - p1) % n;
        if d == 0 {
            n
        } else {
            d
        }
    }

    /// Clockwise corner steps from `h1` to `h2` plus the shift difference of
    /// their edges. A half-edge paired with itself counts a full turn.
    pub fn corner_index(&self, h1: HalfEdge, h2: HalfEdge) -> Result<i64, ArcError> {
        let v1 = self.vertex_of(h1).ok_or(ArcError::DistinctVertices)?;
        let v2 = self.vertex_of(h2).ok_or(ArcError::DistinctVertices)?;
        if v1 != v2 {
            return Err(ArcError::DistinctVertices);
        }
        let shift = |h: HalfEdge| match h {
            HalfEdge::End(e, _) => self.edges[e].shift,
            HalfEdge::Ext(_) => 0,
        };
        Ok(self.cw_steps(v1, h1, h2) as i64 + shift(h2) - shift(h1))
    }

    /// Euler characteristic of the underlying graph, legs ignored.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (i, j) in [(0, 1), (1, 0)] {
                    if e.ends[i] == v && !seen[e.ends[j]] {
                        seen[e.ends[j]] = true;
                        stack.push(e.ends[j]);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Single-edge word along `e` from end 0 to end 1.
    pub fn edge_word(&self, e: EdgeId) -> ClosedArcWord {
        ClosedArcWord {
            start: self.edges[e].ends[0],
            path: vec![(e, true)],
            turns: Vec::new(),
            grading: self.edges[e].shift,
        }
    }
}

/// Graded closed arc as a path with turns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedArcWord {
    pub start: VertexId,
    /// Edge and direction; `true` runs from end 0 to end 1.
    pub path: Vec<(EdgeId, bool)>,
    /// Turn at each intermediate vertex, `path.len() - 1` of them.
    pub turns: Vec<i64>,
    pub grading: i64,
}

/// Which end of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordEnd {
    Start,
    End,
}

/// Position of a word end among all curves leaving a vertex along the same
/// half-edge. Larger means further clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum TurnKey {
    Left(i64),
    Stop,
    Right(i64),
}

fn turn_key(t: i64) -> TurnKey {
    if t > 0 {
        TurnKey::Left(t)
    } else {
        TurnKey::Right(t)
    }
}

/// Local change of the grading label along a turn.
fn turn_delta(t: i64) -> i64 {
    t.signum() - t
}

impl ClosedArcWord {
    fn leave(e: EdgeId, fwd: bool) -> HalfEdge {
        HalfEdge::End(e, if fwd { 0 } else { 1 })
    }

    fn arrive(e: EdgeId, fwd: bool) -> HalfEdge {
        HalfEdge::End(e, if fwd { 1 } else { 0 })
    }

    pub fn end_vertex(&self, s: &SGraph) -> VertexId {
        let &(e, fwd) = self.path.last().expect("nonempty word");
        s.edges[e].ends[if fwd { 1 } else { 0 }]
    }

    pub fn vertex(&self, s: &SGraph, end: WordEnd) -> VertexId {
        match end {
            WordEnd::Start => self.start,
            WordEnd::End => self.end_vertex(s),
        }
    }

    /// Half-edge the word occupies at one of its ends.
    pub fn half_edge(&self, end: WordEnd) -> HalfEdge {
        match end {
            WordEnd::Start => {
                let (e, f) = self.path[0];
                Self::leave(e, f)
            }
            WordEnd::End => {
                let &(e, f) = self.path.last().expect("nonempty word");
                Self::arrive(e, f)
            }
        }
    }

    /// Grading label at an end: the grading at the start, accumulated turn
    /// deltas at the end.
    pub fn label(&self, end: WordEnd) -> i64 {
        match end {
            WordEnd::Start => self.grading,
            WordEnd::End => self.grading + self.turns.iter().map(|&t| turn_delta(t)).sum::<i64>(),
        }
    }

    pub fn reversed(&self, s: &SGraph) -> ClosedArcWord {
        ClosedArcWord {
            start: self.end_vertex(s),
            path: self.path.iter().rev().map(|&(e, f)| (e, !f)).collect(),
            turns: self.turns.iter().rev().map(|&t| -t).collect(),
            grading: self.label(WordEnd::End),
        }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Checks continuity and that each turn lands on the next edge.
    pub fn is_consistent(&self, s: &SGraph) -> bool {
        if self.path.is_empty() || self.turns.len() + 1 != self.path.len() {
            return false;
        }
        let (e0, f0) = self.path[0];
        if s.edges[e0].ends[if f0 { 0 } else { 1 }] != self.start {
            return false;
        }
        for i in 0..self.turns.len() {
            let (e, f) = self.path[i];
            let (e2, f2) = self.path[i + 1];
            let v = s.edges[e].ends[if f { 1 } else { 0 }];
            if s.edges[e2].ends[if f2 { 0 } else { 1 }] != v {
                return false;
            }
            let n = s.valency(v) as i64;
            let (Some(p1), Some(p2)) = (s.position(v, Self::arrive(e, f)), s.position(v, Self::leave(e2, f2)))
            else {
                return false;
            };
            if (p2 as i64 - p1 as i64 - self.turns[i]).rem_euclid(n) != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_reduced(&self) -> bool {
        !self.turns.contains(&0)
    }

    /// Cancels the backtrack at turn `i`.
    fn cancel_at(&mut self, i: usize) {
        debug_assert_eq!(self.turns[i], 0);
        let before = if i > 0 { Some(self.turns[i - 1]) } else { None };
        let after = self.turns.get(i + 1).copied();
        self.path.drain(i..i + 2);
        match (before, after) {
            (Some(a), Some(b)) => {
                self.turns.drain(i - 1..i + 2);
                self.turns.insert(i - 1, a + b);
            }
            (Some(_), None) => {
                self.turns.drain(i - 1..i + 1);
            }
            (None, Some(_)) => {
                self.turns.drain(i..i + 2);
            }
            (None, None) => {
                self.turns.clear();
            }
        }
    }

    /// Removes backtracks, always picking the first.
    pub fn reduce(&mut self) {
        self.reduce_with(&mut |_| 0)
    }

    /// Removes backtracks, `pick(k)` choosing among the `k` currently
    /// available ones.
    pub fn reduce_with(&mut self, pick: &mut dyn FnMut(usize) -> usize) {
        loop {
            let zeros: Vec<usize> = (0..self.turns.len()).filter(|&i| self.turns[i] == 0).collect();
            if zeros.is_empty() {
                return;
            }
            let i = zeros[pick(zeros.len()) % zeros.len()];
            self.cancel_at(i);
        }
    }

    /// Turn keys read from one end; the terminator marks the far end.
    fn key_from(&self, end: WordEnd) -> Vec<TurnKey> {
        let mut out: Vec<TurnKey> = match end {
            WordEnd::Start => self.turns.iter().map(|&t| turn_key(t)).collect(),
            WordEnd::End => self.turns.iter().rev().map(|&t| turn_key(-t)).collect(),
        };
        out.push(TurnKey::Stop);
        out
    }

    /// Canonical orientation: the smaller of the word and its reverse.
    pub fn canonical(&self, s: &SGraph) -> ClosedArcWord {
        let r = self.reversed(s);
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    pub fn render(&self, s: &SGraph) -> String {
        let mut out = String::new();
        out.push_str(&s.vertices[self.start]);
        out.push_str(" -");
        for (i, &(e, f)) in self.path.iter().enumerate() {
            if !f {
                out.push('~');
            }
            out.push_str(&s.edges[e].name);
            if let Some(t) = self.turns.get(i) {
                out.push_str(&format!("({t})"));
            }
        }
        out.push_str(&format!("-> {} @{}", s.vertices[self.end_vertex(s)], self.grading));
        out
    }
}

/// Orders word ends sitting at one vertex clockwise, starting from the
/// rotation's first half-edge.
pub fn compare_ends(s: &SGraph, a: (&ClosedArcWord, WordEnd), b: (&ClosedArcWord, WordEnd)) -> Ordering {
    let v = a.0.vertex(s, a.1);
    debug_assert_eq!(v, b.0.vertex(s, b.1));
    let pa = s.position(v, a.0.half_edge(a.1)).expect("at vertex");
    let pb = s.position(v, b.0.half_edge(b.1)).expect("at vertex");
    pa.cmp(&pb).then_with(|| a.0.key_from(a.1).cmp(&b.0.key_from(b.1)))
}

/// Clockwise steps from end `x` to end `y` at their common vertex, using the
/// refined order of curves sharing a half-edge. Equal ends give a full turn.
pub fn end_steps(s: &SGraph, x: (&ClosedArcWord, WordEnd), y: (&ClosedArcWord, WordEnd)) -> Result<i64, ArcError> {
    let v = x.0.vertex(s, x.1);
    if v != y.0.vertex(s, y.1) {
        return Err(ArcError::DistinctVertices);
    }
    let n = s.valency(v) as i64;
    let px = s.position(v, x.0.half_edge(x.1)).expect("at vertex") as i64;
    let py = s.position(v, y.0.half_edge(y.1)).expect("at vertex") as i64;
    let d = (py - px).rem_euclid(n);
    if d != 0 {
        return Ok(d);
    }
    Ok(match x.0.key_from(x.1).cmp(&y.0.key_from(y.1)) {
        Ordering::Less => 0,
        _ => n,
    })
}

/// Intersection index at a shared endpoint: clockwise steps plus the
/// difference of grading labels.
pub fn word_index(s: &SGraph, x: (&ClosedArcWord, WordEnd), y: (&ClosedArcWord, WordEnd)) -> Result<i64, ArcError> {
    Ok(end_steps(s, x, y)? + y.0.label(y.1) - x.0.label(x.1))
}

/// Smoothing of `alpha` (ending at `z`) with `beta` (starting at `z`)
/// through the clockwise sector from the end of `alpha` to the start of
/// `beta`. The result keeps the grading of `alpha`.
pub fn smooth(s: &SGraph, alpha: &ClosedArcWord, beta: &ClosedArcWord, z: VertexId) -> Result<ClosedArcWord, ArcError> {
    if alpha.end_vertex(s) != z || beta.start != z {
        return Err(ArcError::EndpointMismatch);
    }
    let t = sector(s, (alpha, WordEnd::End), (beta, WordEnd::Start));
    join(alpha, beta, t)
}

/// Clockwise sector width from `x` to `y`; zero when they are the same
/// curve leaving along the same half-edge.
fn sector(s: &SGraph, x: (&ClosedArcWord, WordEnd), y: (&ClosedArcWord, WordEnd)) -> i64 {
    let v = x.0.vertex(s, x.1);
    let n = s.valency(v) as i64;
    let px = s.position(v, x.0.half_edge(x.1)).expect("at vertex") as i64;
    let py = s.position(v, y.0.half_edge(y.1)).expect("at vertex") as i64;
    let d = (py - px).rem_euclid(n);
    if d != 0 {
        return d;
    }
    match x.0.key_from(x.1).cmp(&y.0.key_from(y.1)) {
        Ordering::Greater => n,
        _ => 0,
    }
}

/// Same as [`smooth`] through the counterclockwise sector.
pub fn smooth_ccw(
    s: &SGraph,
    alpha: &ClosedArcWord,
    beta: &ClosedArcWord,
    z: VertexId,
) -> Result<ClosedArcWord, ArcError> {
    if alpha.end_vertex(s) != z || beta.start != z {
        return Err(ArcError::EndpointMismatch);
    }
    let t = sector(s, (beta, WordEnd::Start), (alpha, WordEnd::End));
    join(alpha, beta, -t)
}

fn join(alpha: &ClosedArcWord, beta: &ClosedArcWord, turn: i64) -> Result<ClosedArcWord, ArcError> {
    let mut w = ClosedArcWord {
        start: alpha.start,
        path: alpha.path.iter().chain(beta.path.iter()).copied().collect(),
        turns: alpha.turns.iter().copied().chain([turn]).chain(beta.turns.iter().copied()).collect(),
        grading: alpha.grading,
    };
    w.reduce();
    if w.path.is_empty() {
        return Err(ArcError::DegenerateArc);
    }
    Ok(w)
}

/// `eta` read from its end at `z`, choosing, for a loop, the end met first
/// when turning from `from` in the given sense.
fn eta_from(s: &SGraph, eta: &ClosedArcWord, from: (&ClosedArcWord, WordEnd), cw: bool) -> ClosedArcWord {
    let z = from.0.vertex(s, from.1);
    let rev = eta.reversed(s);
    let mut cands = Vec::new();
    if eta.start == z {
        cands.push(eta.clone());
    }
    if rev.start == z {
        cands.push(rev);
    }
    cands
        .into_iter()
        .min_by_key(|c| {
            let st = if cw {
                end_steps(s, from, (c, WordEnd::Start))
            } else {
                end_steps(s, (c, WordEnd::Start), from)
            };
            st.unwrap_or(i64::MAX)
        })
        .expect("eta meets z")
}

/// One half twist along `eta` applied at a single end of `alpha`.
pub fn twist_end(
    s: &SGraph,
    eta: &ClosedArcWord,
    alpha: &ClosedArcWord,
    end: WordEnd,
    positive: bool,
) -> Result<ClosedArcWord, ArcError> {
    let z = alpha.vertex(s, end);
    if eta.start != z && eta.end_vertex(s) != z {
        return Err(ArcError::NoSharedEndpoint);
    }
    match end {
        WordEnd::End => {
            let e = eta_from(s, eta, (alpha, WordEnd::End), positive);
            if positive {
                smooth(s, alpha, &e, z)
            } else {
                smooth_ccw(s, alpha, &e, z)
            }
        }
        WordEnd::Start => {
            let r = alpha.reversed(s);
            let t = twist_end(s, eta, &r, WordEnd::End, positive)?;
            let mut out = t.reversed(s);
            out.grading = alpha.grading;
            Ok(out)
        }
    }
}

/// Half twist along `eta` acting on a whole word: the word is cut wherever
/// it passes through an endpoint of `eta`, each piece is twisted at its
/// ends and the pieces are glued back with the transported turns.
fn half_twist(s: &SGraph, eta: &ClosedArcWord, w: &ClosedArcWord, positive: bool) -> Result<ClosedArcWord, ArcError> {
    let ez = [eta.start, eta.end_vertex(s)];
    let eta_edge = eta.path[0].0;
    if ez[0] == ez[1] || eta.path.len() != 1 {
        return Err(ArcError::LoopCore);
    }
    // cut points
    let mut pieces: Vec<ClosedArcWord> = Vec::new();
    let mut joints: Vec<i64> = Vec::new();
    let mut cur = ClosedArcWord { start: w.start, path: vec![w.path[0]], turns: Vec::new(), grading: 0 };
    for i in 0..w.turns.len() {
        let v = cur.end_vertex(s);
        if ez.contains(&v) {
            pieces.push(cur);
            joints.push(w.turns[i]);
            cur = ClosedArcWord { start: v, path: vec![w.path[i + 1]], turns: Vec::new(), grading: 0 };
        } else {
            cur.path.push(w.path[i + 1]);
            cur.turns.push(w.turns[i]);
        }
    }
    pieces.push(cur);
    let mut images = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let img = if p.path.len() == 1 && p.path[0].0 == eta_edge {
            p.reversed(s)
        } else {
            let mut q = p.clone();
            for end in [WordEnd::End, WordEnd::Start] {
                if ez.contains(&q.vertex(s, end)) {
                    q = twist_end(s, eta, &q, end, positive)?;
                }
            }
            q
        };
        images.push(img);
    }
    let mut out = images[0].clone();
    for (i, &t) in joints.iter().enumerate() {
        let v = pieces[i].end_vertex(s);
        let n = s.valency(v) as i64;
        let s0 = sector_or_full(s, (&pieces[i], WordEnd::End), (&pieces[i + 1], WordEnd::Start));
        let wraps = (t - s0).div_euclid(n);
        let s1 = sector_or_full(s, (&images[i], WordEnd::End), (&images[i + 1], WordEnd::Start));
        let nv = images[i].end_vertex(s);
        let n1 = s.valency(nv) as i64;
        let turn = s1 + n1 * wraps;
        out.path.extend(images[i + 1].path.iter().copied());
        out.turns.push(turn);
        out.turns.extend(images[i + 1].turns.iter().copied());
    }
    out.reduce();
    if out.path.is_empty() {
        return Err(ArcError::DegenerateArc);
    }
    out.grading = w.grading;
    Ok(out)
}

/// Like `sector`, but a curve meeting itself counts a full turn.
fn sector_or_full(s: &SGraph, x: (&ClosedArcWord, WordEnd), y: (&ClosedArcWord, WordEnd)) -> i64 {
    end_steps(s, x, y).expect("common vertex")
}

/// `B_eta^power(alpha)`, the half twist along `eta`, clockwise for positive
/// powers.
pub fn braid_twist(s: &SGraph, eta: &ClosedArcWord, alpha: &ClosedArcWord, power: i64) -> Result<ClosedArcWord, ArcError> {
    let ez = [eta.start, eta.end_vertex(s)];
    if !ez.contains(&alpha.start) && !ez.contains(&alpha.end_vertex(s)) {
        return Err(ArcError::NoSharedEndpoint);
    }
    let (ca, ce) = (alpha.canonical(s), eta.canonical(s));
    if ca.path == ce.path && ca.turns == ce.turns {
        return Ok(alpha.clone());
    }
    let mut cur = alpha.clone();
    for _ in 0..power.unsigned_abs() {
        cur = half_twist(s, eta, &cur, power > 0)?;
    }
    Ok(cur)
}
