//! The flip seen on the dual S-graph.

use alloc::vec;
use alloc::vec::Vec;

use crate::arc::{compare_ends, twist_end, ArcError, ClosedArcWord, EdgeId, HalfEdge, SEdge, SGraph, WordEnd};
use crate::flip::FlipCase;

/// Ends of edges other than `eta` sitting one clockwise step before a
/// half-edge of `eta`.
pub fn triggered_ends(s: &SGraph, eta: EdgeId) -> Vec<(EdgeId, WordEnd)> {
    let mut out = Vec::new();
    for i in [0u8, 1u8] {
        let v = s.edges[eta].ends[i as usize];
        let n = s.valency(v);
        let p = s.position(v, HalfEdge::End(eta, i)).expect("eta at vertex");
        if let HalfEdge::End(a, j) = s.rotation[v][(p + n - 1) % n] {
            if a != eta {
                let we = if j == 0 { WordEnd::Start } else { WordEnd::End };
                if !out.contains(&(a, we)) {
                    out.push((a, we));
                }
            }
        }
    }
    out
}

pub fn flip_case(s: &SGraph, eta: EdgeId) -> FlipCase {
    if s.edges[eta].ends.iter().any(|&v| s.valency(v) == 1) {
        FlipCase::Monogon
    } else {
        FlipCase::Usual
    }
}

/// Images of all edges under the S-graph flip at `eta`, as words over `s`.
pub fn sgraph_flip_words(s: &SGraph, eta: EdgeId, forward: bool) -> Result<Vec<ClosedArcWord>, ArcError> {
    if eta >= s.edges.len() {
        return Err(ArcError::UnknownEdge(alloc::format!("#{eta}")));
    }
    let case = flip_case(s, eta);
    let reps = if case == FlipCase::Monogon { 2 } else { 1 };
    let eta_w = s.edge_word(eta);
    let mut out: Vec<ClosedArcWord> = (0..s.edges.len()).map(|e| s.edge_word(e)).collect();
    let trig = if forward { triggered_ends(s, eta) } else { triggered_ends_backward(s, eta) };
    for (a, end) in trig {
        for _ in 0..reps {
            out[a] = twist_end(s, &eta_w, &out[a], end, forward)?;
        }
    }
    out[eta].grading += if forward { 1 } else { -1 };
    Ok(out)
}

/// Mirror trigger for the backward flip: one step clockwise after `eta`.
pub fn triggered_ends_backward(s: &SGraph, eta: EdgeId) -> Vec<(EdgeId, WordEnd)> {
    let mut out = Vec::new();
    for i in [0u8, 1u8] {
        let v = s.edges[eta].ends[i as usize];
        let n = s.valency(v);
        let p = s.position(v, HalfEdge::End(eta, i)).expect("eta at vertex");
        if let HalfEdge::End(a, j) = s.rotation[v][(p + 1) % n] {
            if a != eta {
                let we = if j == 0 { WordEnd::Start } else { WordEnd::End };
                if !out.contains(&(a, we)) {
                    out.push((a, we));
                }
            }
        }
    }
    out
}

/// Ribbon graph whose edges are the given words; rotation from the
/// angular order of word ends. Legs are not carried.
pub fn words_to_sgraph(s: &SGraph, words: &[ClosedArcWord]) -> SGraph {
    let edges = words
        .iter()
        .enumerate()
        .map(|(i, w)| SEdge { name: s.edges[i].name.clone(), ends: [w.start, w.end_vertex(s)], shift: w.grading })
        .collect();
    let mut rotation = vec![Vec::new(); s.vertices.len()];
    for (v, rot) in rotation.iter_mut().enumerate() {
        let mut ends: Vec<(usize, WordEnd)> = Vec::new();
        for (i, w) in words.iter().enumerate() {
            if w.start == v {
                ends.push((i, WordEnd::Start));
            }
            if w.end_vertex(s) == v {
                ends.push((i, WordEnd::End));
            }
        }
        ends.sort_by(|&(i, a), &(j, b)| compare_ends(s, (&words[i], a), (&words[j], b)));
        *rot = ends
            .into_iter()
            .map(|(i, e)| HalfEdge::End(i, if e == WordEnd::Start { 0 } else { 1 }))
            .collect();
    }
    SGraph { vertices: s.vertices.clone(), edges, externals: Vec::new(), rotation }
}

/// Forward S-graph flip at `eta`.
pub fn sgraph_flip(s: &SGraph, eta: EdgeId) -> Result<SGraph, ArcError> {
    Ok(words_to_sgraph(s, &sgraph_flip_words(s, eta, true)?))
}

fn strip_legs(s: &SGraph) -> Vec<Vec<HalfEdge>> {
    s.rotation
        .iter()
        .map(|r| r.iter().copied().filter(|h| matches!(h, HalfEdge::End(..))).collect())
        .collect()
}

fn cyclic_eq(a: &[HalfEdge], b: &[HalfEdge]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()]))
}

/// Equality of the internal ribbon structure and shifts, edges matched by
/// name and allowed to be reversed.
pub fn same_internal_structure(x: &SGraph, y: &SGraph) -> bool {
    if x.vertices != y.vertices || x.edges.len() != y.edges.len() {
        return false;
    }
    let mut map = Vec::with_capacity(x.edges.len());
    for e in &x.edges {
        let Some(j) = y.edges.iter().position(|f| f.name == e.name) else {
            return false;
        };
        if y.edges[j].shift != e.shift {
            return false;
        }
        map.push(j);
    }
    let loops: Vec<usize> = (0..x.edges.len()).filter(|&i| x.edges[i].ends[0] == x.edges[i].ends[1]).collect();
    let rx = strip_legs(x);
    let ry = strip_legs(y);
    for mask in 0u64..(1u64 << loops.len().min(16)) {
        let mut flip = vec![false; x.edges.len()];
        let mut ok = true;
        for (i, e) in x.edges.iter().enumerate() {
            let f = &y.edges[map[i]];
            if let Some(k) = loops.iter().position(|&l| l == i) {
                flip[i] = mask >> k & 1 == 1;
            } else if e.ends == f.ends {
                flip[i] = false;
            } else if e.ends == [f.ends[1], f.ends[0]] {
                flip[i] = true;
            } else {
                ok = false;
            }
        }
        if !ok {
            return false;
        }
        let translate = |h: HalfEdge| match h {
            HalfEdge::End(e, k) => HalfEdge::End(map[e], if flip[e] { 1 - k } else { k }),
            other => other,
        };
        if (0..rx.len()).all(|v| {
            let t: Vec<HalfEdge> = rx[v].iter().map(|&h| translate(h)).collect();
            cyclic_eq(&t, &ry[v])
        }) {
            return true;
        }
    }
    false
}
