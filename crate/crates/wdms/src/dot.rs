//! Graphviz renderings. Exchange graphs use [`wdms_core::exchange::export_dot`].

use std::fmt::Write;

use wdms_core::arc::HalfEdge;
use wdms_core::schober::RibbonGraph;
use wdms_core::SGraph;

fn quote(s: &str) -> String {
    let mut o = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => o.push_str("\\\""),
            '\\' => o.push_str("\\\\"),
            c => o.push(c),
        }
    }
    o.push('"');
    o
}

/// Dual S-graph: one node per decoration, legs as point nodes, edge labels
/// carry nonzero shifts as `name[k]`.
pub fn sgraph_dot(s: &SGraph) -> String {
    let mut out = String::from("graph sgraph {\n");
    for (v, name) in s.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{v} [label={}];", quote(name));
    }
    for (k, name) in s.externals.iter().enumerate() {
        let _ = writeln!(out, "  x{k} [shape=point, xlabel={}];", quote(name));
    }
    for e in &s.edges {
        let label = match e.shift {
            0 => e.name.clone(),
            k => format!("{}[{k}]", e.name),
        };
        let _ = writeln!(out, "  v{} -- v{} [label={}];", e.ends[0], e.ends[1], quote(&label));
    }
    for (v, rot) in s.rotation.iter().enumerate() {
        for h in rot {
            if let HalfEdge::Ext(k) = h {
                let _ = writeln!(out, "  v{v} -- x{k};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Ribbon graph: internal edges labelled `a=b`, external half-edges as
/// point nodes.
pub fn ribbon_dot(g: &RibbonGraph) -> String {
    let mut out = String::from("graph ribbon {\n");
    for (v, name) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{v} [label={}];", quote(name));
    }
    for (a, b) in g.internal_edges() {
        let (ha, hb) = (&g.half_edges[a], &g.half_edges[b]);
        let _ = writeln!(out, "  v{} -- v{} [label={}];", ha.vertex, hb.vertex, quote(&format!("{}={}", ha.name, hb.name)));
    }
    for h in g.externals() {
        let he = &g.half_edges[h];
        let _ = writeln!(out, "  h{h} [shape=point, xlabel={}];", quote(&he.name));
        let _ = writeln!(out, "  v{} -- h{h};", he.vertex);
    }
    out.push_str("}\n");
    out
}
