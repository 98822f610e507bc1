//! Simple tilting of hearts, replayed on labels of graded dual arcs.
//!
//! No category is modelled. A heart is the dual S-graph of an angulation;
//! each edge is a simple carrying a display label and a grading. Tilting at
//! a simple follows the S-graph flip: the simple shifts, the simples
//! triggered by it are braid twisted, everything else is kept.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::arc::{dual_sgraph, ClosedArcWord, EdgeId, SGraph, WordEnd};
use crate::collapse::{Collapsed, CollapseContext};
use crate::duality::{flip_case, same_internal_structure, sgraph_flip_words, triggered_ends, triggered_ends_backward, words_to_sgraph};
use crate::flip::{flip, Direction, FlipCase};
use crate::lift::project;
use crate::surface::MixedAngulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simple {
    pub label: String,
    /// Shifts applied since the label was given.
    pub shift: i64,
    pub word: ClosedArcWord,
    /// Set by [`mark_support`]: the simple vanishes under the collapse.
    pub in_subsurface: Option<bool>,
}

impl Simple {
    pub fn display(&self) -> String {
        match self.shift {
            0 => self.label.clone(),
            k => format!("{}[{k}]", self.label),
        }
    }
}

/// Simples indexed like the arcs of the angulation.
#[derive(Clone, Debug)]
pub struct FormalHeart {
    pub angulation: MixedAngulation,
    pub graph: SGraph,
    pub simples: Vec<Simple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Kept,
    Shifted(i64),
    /// Braid twisted `power` times; the triangle lists labels in order.
    Twisted { power: usize, triangle: [String; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltStep {
    pub simple: EdgeId,
    pub direction: Direction,
    pub outcomes: Vec<Outcome>,
    /// Labels after the step.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeartError {
    UnknownSimple(String),
    IncompatibleContext(String),
}

impl fmt::Display for HeartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeartError::UnknownSimple(s) => write!(f, "UnknownSimple: {s}"),
            HeartError::IncompatibleContext(s) => write!(f, "IncompatibleContext: {s}"),
        }
    }
}

pub fn heart_of(a: &MixedAngulation) -> FormalHeart {
    let graph = dual_sgraph(a);
    let simples = (0..graph.edges.len())
        .map(|e| Simple { label: graph.edges[e].name.clone(), shift: 0, word: graph.edge_word(e), in_subsurface: None })
        .collect();
    FormalHeart { angulation: a.clone(), graph, simples }
}

impl FormalHeart {
    pub fn find(&self, name: &str) -> Result<EdgeId, HeartError> {
        self.graph.edge_id(name).ok_or_else(|| HeartError::UnknownSimple(String::from(name)))
    }

    /// Replaces display labels, in simple order.
    pub fn relabel(&mut self, labels: &[&str]) {
        for (s, l) in self.simples.iter_mut().zip(labels) {
            s.label = String::from(*l);
            s.shift = 0;
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.simples.iter().map(Simple::display).collect()
    }
}

/// Edges twisted by a tilt at `s`, each with its number of half twists:
/// one per triggered end, two in the monogon case.
pub fn twisted(g: &SGraph, s: EdgeId, dir: Direction) -> Vec<(EdgeId, usize)> {
    let reps = if flip_case(g, s) == FlipCase::Monogon { 2 } else { 1 };
    let ends: Vec<(EdgeId, WordEnd)> = match dir {
        Direction::Forward => triggered_ends(g, s),
        Direction::Backward => triggered_ends_backward(g, s),
    };
    let mut out: Vec<(EdgeId, usize)> = Vec::new();
    for (e, _) in ends {
        match out.iter_mut().find(|x| x.0 == e) {
            Some(x) => x.1 += reps,
            None => out.push((e, reps)),
        }
    }
    out
}

pub fn tilt(h: &FormalHeart, s: EdgeId, dir: Direction) -> Result<(FormalHeart, TiltStep), HeartError> {
    if s >= h.simples.len() {
        return Err(HeartError::UnknownSimple(format!("#{s}")));
    }
    let forward = dir == Direction::Forward;
    let words = sgraph_flip_words(&h.graph, s, forward).map_err(|e| HeartError::UnknownSimple(format!("{e}")))?;
    let angulation = flip(&h.angulation, s, dir).map_err(|e| HeartError::UnknownSimple(format!("{e}")))?.0;
    // the word graph has no legs, which the next trigger needs
    let graph = dual_sgraph(&angulation);
    debug_assert!(same_internal_structure(&words_to_sgraph(&h.graph, &words), &graph));
    let tw = twisted(&h.graph, s, dir);
    let sl = h.simples[s].display();
    let mut simples = h.simples.clone();
    let mut outcomes = Vec::with_capacity(simples.len());
    for (i, x) in simples.iter_mut().enumerate() {
        x.word = graph.edge_word(i);
        x.in_subsurface = None;
        if i == s {
            x.shift += dir.sign();
            outcomes.push(Outcome::Shifted(dir.sign()));
        } else if let Some(&(_, power)) = tw.iter().find(|t| t.0 == i) {
            let old = x.display();
            x.label = format!("{old}'");
            x.shift = 0;
            let triangle = if forward { [sl.clone(), x.label.clone(), old] } else { [old, x.label.clone(), sl.clone()] };
            outcomes.push(Outcome::Twisted { power, triangle });
        } else {
            outcomes.push(Outcome::Kept);
        }
    }
    let labels = simples.iter().map(Simple::display).collect();
    Ok((FormalHeart { angulation, graph, simples }, TiltStep { simple: s, direction: dir, outcomes, labels }))
}

pub fn run_tilt_script(h: &FormalHeart, script: &[(EdgeId, Direction)]) -> Result<(FormalHeart, Vec<TiltStep>), HeartError> {
    let mut cur = h.clone();
    let mut steps = Vec::with_capacity(script.len());
    for &(s, d) in script {
        let (next, step) = tilt(&cur, s, d)?;
        cur = next;
        steps.push(step);
    }
    Ok((cur, steps))
}

/// Vanishing of every simple under the collapse of `ctx`, taken along the
/// same decorations as the angulation of `h`.
pub fn mark_support(h: &FormalHeart, ctx: &CollapseContext) -> Result<(FormalHeart, CollapseContext), HeartError> {
    if h.angulation.spec != ctx.original.spec {
        return Err(HeartError::IncompatibleContext(String::from("different surface")));
    }
    let local = project(ctx, &h.angulation).map_err(|e| HeartError::IncompatibleContext(format!("{e}")))?;
    let dual = dual_sgraph(&h.angulation);
    let words: Vec<ClosedArcWord> = (0..dual.edges.len()).map(|e| dual.edge_word(e)).collect();
    let mut out = h.clone();
    for (s, r) in out.simples.iter_mut().zip(local.collapse_words(&words)) {
        let r = r.map_err(|e| HeartError::IncompatibleContext(format!("{e}")))?;
        s.in_subsurface = Some(r == Collapsed::Vanished);
    }
    Ok((out, local))
}

/// Drops the simples supported in the collapsed part and carries the others
/// to the collapsed surface.
pub fn quotient_heart(h: &FormalHeart, ctx: &CollapseContext) -> Result<FormalHeart, HeartError> {
    let (marked, local) = mark_support(h, ctx)?;
    let mut q = heart_of(&local.collapsed);
    let mut hit = alloc::vec![false; q.simples.len()];
    for (i, s) in marked.simples.iter().enumerate() {
        if s.in_subsurface == Some(true) {
            continue;
        }
        let j = local.arc_map[i].ok_or_else(|| HeartError::IncompatibleContext(format!("{} has no image", s.label)))?;
        if hit[j] || q.simples[j].word.grading != h.angulation.arcs[i].shift {
            return Err(HeartError::IncompatibleContext(format!("{} does not map to a simple", s.label)));
        }
        hit[j] = true;
        q.simples[j].label = s.label.clone();
        q.simples[j].shift = s.shift;
    }
    if hit.iter().any(|&b| !b) {
        return Err(HeartError::IncompatibleContext(String::from("collapsed simple without preimage")));
    }
    Ok(q)
}

/// Text table: one row per simple, one column per heart.
pub fn render_transcript(h: &FormalHeart, steps: &[TiltStep]) -> String {
    let n = h.simples.len();
    let mut cols: Vec<Vec<String>> = Vec::with_capacity(steps.len() + 1);
    let mut head = Vec::with_capacity(steps.len() + 1);
    head.push(String::from("initial"));
    cols.push(h.labels());
    let mut labels = h.labels();
    for st in steps {
        head.push(format!("via {}", labels[st.simple]));
        cols.push(
            st.outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| match o {
                    Outcome::Kept | Outcome::Shifted(_) => st.labels[i].clone(),
                    Outcome::Twisted { triangle: [a, b, c], .. } => format!("{a} -> {b} -> {c}"),
                })
                .collect(),
        );
        labels = st.labels.clone();
    }
    let width: Vec<usize> = (0..cols.len())
        .map(|c| cols[c].iter().chain(core::iter::once(&head[c])).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let row = |out: &mut String, cells: &mut dyn Iterator<Item = &String>| {
        for (c, s) in cells.enumerate() {
            let _ = write!(out, "| {s:<w$} ", w = width[c]);
        }
        out.push_str("|\n");
    };
    row(&mut out, &mut head.iter());
    for (c, w) in width.iter().enumerate() {
        let _ = write!(out, "|{}", "-".repeat(w + 2));
        if c + 1 == width.len() {
            out.push_str("|\n");
        }
    }
    for i in 0..n {
        row(&mut out, &mut cols.iter().map(|c| &c[i]));
    }
    out
}
