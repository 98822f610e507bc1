//! Ribbon graph text format.
//!
//! ```text
//! vertex v: e1 e2 e3 e4
//! vertex w: f1 f2
//! edge e1 = f1
//! sub v
//! ```
//!
//! Half-edges are listed clockwise; unpaired ones are external.

use std::fmt::Write;

use wdms_core::schober::RibbonGraph;

use crate::format::{strip_comment, tokens, ParseError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDocument {
    pub vertices: Vec<(String, Vec<String>)>,
    pub edges: Vec<(String, String)>,
    pub sub: Vec<String>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let mut doc = GraphDocument::default();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokens(strip_comment(raw));
        let Some(&(col, head)) = toks.first() else { continue };
        match head {
            "vertex" => {
                let Some(&(c, name)) = toks.get(1) else {
                    return Err(err(ln, col, "expected `vertex <name>: <half-edge> ...`"));
                };
                let Some(name) = name.strip_suffix(':').filter(|n| !n.is_empty()) else {
                    return Err(err(ln, c, "vertex name must end with `:`"));
                };
                doc.vertices.push((name.to_string(), toks[2..].iter().map(|t| t.1.to_string()).collect()));
            }
            "edge" => {
                if toks.len() != 4 || toks[2].1 != "=" {
                    let c = toks.get(2).map_or(col, |t| t.0);
                    return Err(err(ln, c, "expected `edge <half-edge> = <half-edge>`"));
                }
                doc.edges.push((toks[1].1.to_string(), toks[3].1.to_string()));
            }
            "sub" => doc.sub.extend(toks[1..].iter().map(|t| t.1.to_string())),
            _ => return Err(err(ln, col, format!("unknown keyword `{head}`"))),
        }
    }
    Ok(doc)
}

impl GraphDocument {
    pub fn build(&self) -> Result<RibbonGraph, wdms_core::schober::GraphError> {
        let vs: Vec<(&str, Vec<&str>)> =
            self.vertices.iter().map(|(v, hs)| (v.as_str(), hs.iter().map(String::as_str).collect())).collect();
        let vs: Vec<(&str, &[&str])> = vs.iter().map(|(v, hs)| (*v, hs.as_slice())).collect();
        let es: Vec<(&str, &str)> = self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        RibbonGraph::new(&vs, &es)
    }

    /// Edges listed once, from the half-edge with the smaller index.
    pub fn from_graph(g: &RibbonGraph) -> GraphDocument {
        let name = |h: usize| g.half_edges[h].name.clone();
        GraphDocument {
            vertices: g.vertices.iter().zip(&g.rotation).map(|(v, r)| (v.clone(), r.iter().map(|&h| name(h)).collect())).collect(),
            edges: g.internal_edges().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
            sub: Vec::new(),
        }
    }
}

pub fn serialize_graph(doc: &GraphDocument) -> String {
    let mut s = String::new();
    for (v, hs) in &doc.vertices {
        let _ = write!(s, "vertex {v}:");
        for h in hs {
            let _ = write!(s, " {h}");
        }
        s.push('\n');
    }
    for (a, b) in &doc.edges {
        let _ = writeln!(s, "edge {a} = {b}");
    }
    if !doc.sub.is_empty() {
        let _ = writeln!(s, "sub {}", doc.sub.join(" "));
    }
    s
}
