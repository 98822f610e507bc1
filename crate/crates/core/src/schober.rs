//! Ribbon graph combinatorics under the schober picture: exit paths,
//! spanning checks, graph collapse and semiorthogonal shape records.
//!
//! Categories are never built; stalks are opaque labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arc::{HalfEdge, SGraph};
use crate::surface::SurfaceSpec;

pub type HalfId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeRec {
    pub name: String,
    pub vertex: usize,
    pub twin: Option<HalfId>,
}

/// Half-edges are internal when paired, external otherwise. Rotation is
/// clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    pub vertices: Vec<String>,
    pub half_edges: Vec<HalfEdgeRec>,
    pub rotation: Vec<Vec<HalfId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    DuplicateName(String),
    UnknownHalfEdge(String),
    SelfTwin(String),
    AlreadyPaired(String),
    NotInduced(String),
    Disconnected,
    ShapeMismatch(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateName(s) => write!(f, "DuplicateName: {s}"),
            GraphError::UnknownHalfEdge(s) => write!(f, "UnknownHalfEdge: {s}"),
            GraphError::SelfTwin(s) => write!(f, "SelfTwin: {s}"),
            GraphError::AlreadyPaired(s) => write!(f, "AlreadyPaired: {s}"),
            GraphError::NotInduced(s) => write!(f, "NotInduced: {s}"),
            GraphError::Disconnected => write!(f, "Disconnected"),
            GraphError::ShapeMismatch(s) => write!(f, "ShapeMismatch: {s}"),
        }
    }
}

impl RibbonGraph {
    /// `vertices` lists each vertex with its half-edge names clockwise;
    /// `pairs` glues half-edges into internal edges.
    pub fn new(vertices: &[(&str, &[&str])], pairs: &[(&str, &str)]) -> Result<RibbonGraph, GraphError> {
        let mut g = RibbonGraph { vertices: Vec::new(), half_edges: Vec::new(), rotation: Vec::new() };
        let mut index: BTreeMap<String, HalfId> = BTreeMap::new();
        for (v, &(name, hs)) in vertices.iter().enumerate() {
            if g.vertices.iter().any(|x| x == name) {
                return Err(GraphError::DuplicateName(String::from(name)));
            }
            g.vertices.push(String::from(name));
            let mut rot = Vec::with_capacity(hs.len());
            for &h in hs {
                if index.insert(String::from(h), g.half_edges.len()).is_some() {
                    return Err(GraphError::DuplicateName(String::from(h)));
                }
                rot.push(g.half_edges.len());
                g.half_edges.push(HalfEdgeRec { name: String::from(h), vertex: v, twin: None });
            }
            g.rotation.push(rot);
        }
        for &(a, b) in pairs {
            let x = *index.get(a).ok_or_else(|| GraphError::UnknownHalfEdge(String::from(a)))?;
            let y = *index.get(b).ok_or_else(|| GraphError::UnknownHalfEdge(String::from(b)))?;
            if x == y {
                return Err(GraphError::SelfTwin(String::from(a)));
            }
            for (h, n) in [(x, a), (y, b)] {
                if g.half_edges[h].twin.is_some() {
                    return Err(GraphError::AlreadyPaired(String::from(n)));
                }
            }
            g.half_edges[x].twin = Some(y);
            g.half_edges[y].twin = Some(x);
        }
        Ok(g)
    }

    /// The dual S-graph as a ribbon graph; legs become external half-edges.
    pub fn from_sgraph(s: &SGraph) -> RibbonGraph {
        let mut g = RibbonGraph { vertices: s.vertices.clone(), half_edges: Vec::new(), rotation: Vec::new() };
        let mut ids: BTreeMap<HalfEdge, HalfId> = BTreeMap::new();
        for (v, rot) in s.rotation.iter().enumerate() {
            let mut r = Vec::with_capacity(rot.len());
            for &h in rot {
                let name = match h {
                    HalfEdge::End(e, i) => format!("{}.{i}", s.edges[e].name),
                    HalfEdge::Ext(k) => s.externals[k].clone(),
                };
                ids.insert(h, g.half_edges.len());
                r.push(g.half_edges.len());
                g.half_edges.push(HalfEdgeRec { name, vertex: v, twin: None });
            }
            g.rotation.push(r);
        }
        for e in 0..s.edges.len() {
            if let (Some(&a), Some(&b)) = (ids.get(&HalfEdge::End(e, 0)), ids.get(&HalfEdge::End(e, 1))) {
                g.half_edges[a].twin = Some(b);
                g.half_edges[b].twin = Some(a);
            }
        }
        g
    }

    pub fn half_edge(&self, name: &str) -> Option<HalfId> {
        self.half_edges.iter().position(|h| h.name == name)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn internal_edges(&self) -> Vec<(HalfId, HalfId)> {
        (0..self.half_edges.len())
            .filter_map(|h| self.half_edges[h].twin.filter(|&t| h < t).map(|t| (h, t)))
            .collect()
    }

    pub fn externals(&self) -> Vec<HalfId> {
        (0..self.half_edges.len()).filter(|&h| self.half_edges[h].twin.is_none()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.internal_edges().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let edges: Vec<HalfId> = self.internal_edges().into_iter().map(|e| e.0).collect();
        self.connected_within(&all, &edges)
    }

    fn connected_within(&self, vs: &[usize], edges: &[HalfId]) -> bool {
        let Some(&first) = vs.first() else { return false };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &h in edges {
                let t = self.half_edges[h].twin.expect("internal");
                let (a, b) = (self.half_edges[h].vertex, self.half_edges[t].vertex);
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        vs.iter().all(|v| seen.contains(v))
    }

    /// Half-edge following `h` clockwise at its vertex.
    pub fn next_cw(&self, h: HalfId) -> HalfId {
        let rot = &self.rotation[self.half_edges[h].vertex];
        let p = rot.iter().position(|&x| x == h).expect("half-edge at its vertex");
        rot[(p + 1) % rot.len()]
    }

    /// One vertex and `n` external half-edges.
    pub fn spider(n: usize) -> RibbonGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        RibbonGraph::new(&[("v", &refs)], &[]).expect("distinct names")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitObject {
    Vertex(usize),
    /// Internal edge by its smaller half-edge, or an external half-edge.
    Edge(HalfId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExitPathCategory {
    pub objects: Vec<ExitObject>,
    /// One generating morphism `vertex -> edge` per half-edge.
    pub morphisms: Vec<(ExitObject, ExitObject, HalfId)>,
}

pub fn exit_paths(g: &RibbonGraph) -> ExitPathCategory {
    let edge_of = |h: HalfId| ExitObject::Edge(g.half_edges[h].twin.map_or(h, |t| h.min(t)));
    let mut objects: Vec<ExitObject> = (0..g.vertices.len()).map(ExitObject::Vertex).collect();
    for h in 0..g.half_edges.len() {
        let e = edge_of(h);
        if !objects.contains(&e) {
            objects.push(e);
        }
    }
    let morphisms = (0..g.half_edges.len()).map(|h| (ExitObject::Vertex(g.half_edges[h].vertex), edge_of(h), h)).collect();
    ExitPathCategory { objects, morphisms }
}

/// Name of an exit object: the vertex name, the external half-edge name, or
/// both half-edge names of an internal edge joined by `=`.
pub fn object_name(g: &RibbonGraph, o: &ExitObject) -> String {
    match *o {
        ExitObject::Vertex(v) => g.vertices[v].clone(),
        ExitObject::Edge(h) => match g.half_edges[h].twin {
            Some(t) => format!("{}={}", g.half_edges[h].name, g.half_edges[t].name),
            None => g.half_edges[h].name.clone(),
        },
    }
}

/// Euler characteristic and connectivity test for `g` to be a deformation
/// retract of the surface.
pub fn is_spanning(g: &RibbonGraph, spec: &SurfaceSpec) -> bool {
    let chi = 2 - 2 * spec.genus as i64 - spec.boundaries.len() as i64;
    g.is_connected() && g.euler_characteristic() == chi
}

/// Vertices and internal edges (each by one half-edge) of a subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<HalfId>,
}

impl SubGraph {
    pub fn induced(g: &RibbonGraph, vertices: &[usize]) -> SubGraph {
        let edges = g
            .internal_edges()
            .into_iter()
            .filter(|&(a, b)| vertices.contains(&g.half_edges[a].vertex) && vertices.contains(&g.half_edges[b].vertex))
            .map(|e| e.0)
            .collect();
        SubGraph { vertices: vertices.to_vec(), edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseBookkeeping {
    pub sub: SubGraph,
    /// The new vertex in the collapsed graph.
    pub vbar: usize,
    /// `phi[i]`: half-edge of the original graph behind the `i`-th half-edge
    /// at the new vertex, clockwise.
    pub phi: Vec<HalfId>,
    /// Internal edges of the subgraph as twin pairs.
    pub psi: Vec<(HalfId, HalfId)>,
    pub arity: usize,
    /// Boundary cycles of the collapsed region carrying half-edges. More
    /// than one means the cyclic order at the new vertex concatenates them.
    pub boundary_cycles: usize,
}

fn check_sub(g: &RibbonGraph, sub: &SubGraph) -> Result<(BTreeSet<usize>, BTreeSet<HalfId>), GraphError> {
    let vs: BTreeSet<usize> = sub.vertices.iter().copied().collect();
    if vs.is_empty() || vs.iter().any(|&v| v >= g.vertices.len()) {
        return Err(GraphError::Disconnected);
    }
    let mut inside = BTreeSet::new();
    for &h in &sub.edges {
        let t = g
            .half_edges
            .get(h)
            .and_then(|r| r.twin)
            .ok_or_else(|| GraphError::UnknownHalfEdge(format!("#{h}")))?;
        if !vs.contains(&g.half_edges[h].vertex) || !vs.contains(&g.half_edges[t].vertex) {
            return Err(GraphError::NotInduced(format!("edge {} leaves the subgraph", g.half_edges[h].name)));
        }
        inside.insert(h);
        inside.insert(t);
    }
    for (a, b) in g.internal_edges() {
        if vs.contains(&g.half_edges[a].vertex) && vs.contains(&g.half_edges[b].vertex) && !inside.contains(&a) {
            return Err(GraphError::NotInduced(format!("edge {} is missing", g.half_edges[a].name)));
        }
    }
    let vlist: Vec<usize> = vs.iter().copied().collect();
    if !g.connected_within(&vlist, &sub.edges) {
        return Err(GraphError::Disconnected);
    }
    Ok((vs, inside))
}

/// Contracts a connected induced subgraph to one vertex. Half-edges at the
/// new vertex follow the boundary of the thickened subgraph and are named
/// `ē1, ē2, …` in that order.
pub fn collapse_graph(g: &RibbonGraph, sub: &SubGraph) -> Result<(RibbonGraph, CollapseBookkeeping), GraphError> {
    let (vs, inside) = check_sub(g, sub)?;
    // boundary traversal: from an outgoing half-edge, turn clockwise and
    // cross every subgraph edge met on the way
    let step = |h: HalfId| -> HalfId {
        let mut x = g.next_cw(h);
        while inside.contains(&x) {
            x = g.next_cw(g.half_edges[x].twin.expect("internal"));
        }
        x
    };
    let outer: Vec<HalfId> =
        vs.iter().flat_map(|&v| g.rotation[v].iter().copied()).filter(|h| !inside.contains(h)).collect();
    let mut done = BTreeSet::new();
    let mut cycles: Vec<Vec<HalfId>> = Vec::new();
    for &h0 in &outer {
        if done.contains(&h0) {
            continue;
        }
        let mut c = Vec::new();
        let mut h = h0;
        loop {
            done.insert(h);
            c.push(h);
            h = step(h);
            if h == h0 {
                break;
            }
        }
        let m = (0..c.len()).min_by_key(|&i| c[i]).expect("nonempty cycle");
        c.rotate_left(m);
        cycles.push(c);
    }
    // several cycles are concatenated by their smallest half-edge
    cycles.sort();
    let n_cycles = cycles.len();
    let phi: Vec<HalfId> = cycles.into_iter().flatten().collect();
    // rebuild: kept vertices in order, then the new one
    let kept: Vec<usize> = (0..g.vertices.len()).filter(|v| !vs.contains(v)).collect();
    let vbar = kept.len();
    let mut vmap = vec![vbar; g.vertices.len()];
    for (i, &v) in kept.iter().enumerate() {
        vmap[v] = i;
    }
    let mut out = RibbonGraph { vertices: Vec::new(), half_edges: Vec::new(), rotation: Vec::new() };
    out.vertices.extend(kept.iter().map(|&v| g.vertices[v].clone()));
    out.vertices.push(String::from("v̄"));
    let mut hmap: Vec<Option<HalfId>> = vec![None; g.half_edges.len()];
    for (h, r) in g.half_edges.iter().enumerate() {
        if inside.contains(&h) {
            continue;
        }
        hmap[h] = Some(out.half_edges.len());
        let name = match phi.iter().position(|&x| x == h) {
            Some(i) => format!("ē{}", i + 1),
            None => r.name.clone(),
        };
        out.half_edges.push(HalfEdgeRec { name, vertex: vmap[r.vertex], twin: None });
    }
    for (h, r) in g.half_edges.iter().enumerate() {
        if let (Some(a), Some(t)) = (hmap[h], r.twin) {
            out.half_edges[a].twin = hmap[t];
        }
    }
    for &v in &kept {
        out.rotation.push(g.rotation[v].iter().map(|&h| hmap[h].expect("kept")).collect());
    }
    out.rotation.push(phi.iter().map(|&h| hmap[h].expect("outer")).collect());
    let psi = sub.edges.iter().map(|&h| (h, g.half_edges[h].twin.expect("internal"))).collect();
    let arity = phi.len();
    Ok((out, CollapseBookkeeping { sub: sub.clone(), vbar, phi, psi, arity, boundary_cycles: n_cycles }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    Zero,
    Inclusion,
}

/// Three families of stalk labels over the exit objects of the collapsed
/// graph and the two inclusion rows between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodRecord {
    pub objects: Vec<String>,
    /// Rows `F0`, `G`, `F̄`.
    pub rows: [Vec<String>; 3],
    pub alpha2: Vec<Arrow>,
    pub alpha1: Vec<Arrow>,
}

pub const ZERO: &str = "0";

/// Builds the record from label tables keyed by [`object_name`]. `F0` may
/// omit external positions, which are zero.
pub fn sod_record(g: &RibbonGraph, tables: [&BTreeMap<String, String>; 3]) -> Result<SodRecord, GraphError> {
    let ex = exit_paths(g);
    let objects: Vec<String> = ex.objects.iter().map(|o| object_name(g, o)).collect();
    let external: Vec<bool> = ex
        .objects
        .iter()
        .map(|o| matches!(*o, ExitObject::Edge(h) if g.half_edges[h].twin.is_none()))
        .collect();
    let mut rows: [Vec<String>; 3] = Default::default();
    for (r, t) in tables.iter().enumerate() {
        for k in t.keys() {
            if !objects.contains(k) {
                return Err(GraphError::ShapeMismatch(format!("unknown object {k}")));
            }
        }
        for (i, o) in objects.iter().enumerate() {
            let l = match (t.get(o), r == 0 && external[i]) {
                (Some(l), true) if l != ZERO => {
                    return Err(GraphError::ShapeMismatch(format!("{o} must be zero in the first row")));
                }
                (None, true) => String::from(ZERO),
                (Some(l), _) => l.clone(),
                (None, false) => return Err(GraphError::ShapeMismatch(format!("no label for {o}"))),
            };
            rows[r].push(l);
        }
    }
    let arrows = |r: &[String]| r.iter().map(|l| if l == ZERO { Arrow::Zero } else { Arrow::Inclusion }).collect();
    let alpha2 = arrows(&rows[0]);
    let alpha1 = arrows(&rows[2]);
    Ok(SodRecord { objects, rows, alpha2, alpha1 })
}
