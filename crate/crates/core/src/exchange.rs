//! Breadth-first enumeration of the exchange graph of forward flips.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::flip::{flip, Direction};
use crate::surface::{ArcId, MixedAngulation, Side};
use crate::track::{OpenWord, Reference, Tracked};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// States are sets of isotopy classes of arcs.
    Tracked,
    /// States are angulations up to renaming arcs and decorations.
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StateKey {
    Tracked(Vec<OpenWord>),
    Canonical(String),
}

#[derive(Clone, Debug)]
pub struct State {
    pub angulation: MixedAngulation,
    pub tracked: Option<Tracked>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub mode: Mode,
    pub nodes: Vec<State>,
    /// `(from, to, arc)` for each forward flip between kept states.
    pub edges: Vec<(usize, usize, ArcId)>,
    /// Flips leading to states past the node limit.
    pub frontier: Vec<(usize, ArcId)>,
    pub truncated: bool,
}

impl ExchangeGraph {
    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count() + self.frontier.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }
}

/// Serialization of a breadth-first walk rooted at the first boundary
/// segment. Arc and decoration names are dropped; gradings are ignored.
pub fn canonical_key(a: &MixedAngulation) -> String {
    key(a, false)
}

/// [`canonical_key`] keeping the grading shift of every arc.
pub fn graded_key(a: &MixedAngulation) -> String {
    key(a, true)
}

fn key(a: &MixedAngulation, graded: bool) -> String {
    let occ = a.occurrences();
    let mut label: Vec<Option<usize>> = alloc::vec![None; a.arcs.len()];
    let mut seen = alloc::vec![false; a.polygons.len()];
    let mut next = 0usize;
    let mut out = String::new();
    let root = a.locate_bseg(0, 0).expect("boundary segment");
    let mut queue = alloc::collections::VecDeque::new();
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
                    let l = *label[x].get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    });
                    let _ = write!(out, " {l}");
                    if graded {
                        let _ = write!(out, "@{}", a.arcs[x].shift);
                    }
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

/// Expands one state into its forward-flip successors.
pub fn successors(reference: Option<&Reference>, s: &State, mode: Mode) -> Vec<(ArcId, State, StateKey)> {
    (0..s.angulation.arcs.len())
        .map(|x| {
            let (b, _) = flip(&s.angulation, x, Direction::Forward).expect("arc in range");
            let tracked = match (reference, &s.tracked) {
                (Some(r), Some(t)) => Some(t.after_flip(r, &s.angulation, x, Direction::Forward)),
                _ => None,
            };
            let st = State { angulation: b, tracked };
            let k = key_of(reference, &st, mode);
            (x, st, k)
        })
        .collect()
}

fn key_of(reference: Option<&Reference>, s: &State, mode: Mode) -> StateKey {
    match mode {
        Mode::Tracked => StateKey::Tracked(s.tracked.as_ref().expect("tracked").key(reference.expect("reference"))),
        Mode::Canonical => StateKey::Canonical(canonical_key(&s.angulation)),
    }
}

/// Successor lists of a layer of states, in layer order.
pub type Expand<'a> = dyn Fn(Option<&Reference>, &[State]) -> Vec<Vec<(ArcId, State, StateKey)>> + 'a;

pub fn enumerate(a0: &MixedAngulation, max_nodes: usize, mode: Mode) -> ExchangeGraph {
    enumerate_with(a0, max_nodes, mode, &|r, layer| layer.iter().map(|s| successors(r, s, mode)).collect())
}

/// Layered breadth-first search; `expand` maps a layer of states to their
/// successors and may do so in parallel without changing the result.
pub fn enumerate_with(
    a0: &MixedAngulation,
    max_nodes: usize,
    mode: Mode,
    expand: &Expand,
) -> ExchangeGraph {
    let reference = match mode {
        Mode::Tracked => Some(Reference::new(a0)),
        Mode::Canonical => None,
    };
    let r = reference.as_ref();
    let root = State { angulation: a0.clone(), tracked: r.map(|r| Tracked::initial(r, a0)) };
    let mut index: BTreeMap<StateKey, usize> = BTreeMap::new();
    let mut g = ExchangeGraph { mode, nodes: Vec::new(), edges: Vec::new(), frontier: Vec::new(), truncated: false };
    if max_nodes == 0 {
        g.truncated = true;
        return g;
    }
    index.insert(key_of(r, &root, mode), 0);
    g.nodes.push(root);
    let mut lo = 0;
    while lo < g.nodes.len() {
        let hi = g.nodes.len();
        let succ = expand(r, &g.nodes[lo..hi]);
        for (off, list) in succ.into_iter().enumerate() {
            let from = lo + off;
            for (x, st, k) in list {
                if let Some(&to) = index.get(&k) {
                    g.edges.push((from, to, x));
                } else if g.nodes.len() < max_nodes {
                    let to = g.nodes.len();
                    index.insert(k, to);
                    g.nodes.push(st);
                    g.edges.push((from, to, x));
                } else {
                    g.frontier.push((from, x));
                    g.truncated = true;
                }
            }
        }
        lo = hi;
    }
    g
}

/// Graphviz rendering; nodes in discovery order, edges in expansion order.
pub fn export_dot(g: &ExchangeGraph) -> String {
    let mut out = String::from("digraph eg {\n");
    for i in 0..g.nodes.len() {
        let _ = writeln!(out, "  n{i} [label=\"{i}\"];");
    }
    for &(a, b, x) in &g.edges {
        let name = &g.nodes[a].angulation.arcs[x].name;
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", escape(name));
    }
    if g.truncated {
        let _ = writeln!(out, "  // truncated: {} flips leave the node limit", g.frontier.len());
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    let mut o = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => o.push_str("\\\""),
            '\\' => o.push_str("\\\\"),
            '\n' => o.push_str("\\n"),
            c => o.push(c),
        }
    }
    o
}
