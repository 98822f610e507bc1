//! Forward and backward flips.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::{ArcId, MixedAngulation, Occ, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipCase {
    Usual,
    Monogon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }

    pub fn inverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipRecord {
    pub arc: ArcId,
    pub case: FlipCase,
    pub direction: Direction,
    /// Sides the endpoints of the arc slid along.
    pub moved: Vec<Side>,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipError {
    UnknownArc(ArcId),
}

impl fmt::Display for FlipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipError::UnknownArc(a) => write!(f, "UnknownArc: {a}"),
        }
    }
}

/// The disc cut off by a monogon arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogonDisc {
    /// Occurrence of the arc facing into the disc.
    pub inner: Occ,
    pub polygons: Vec<usize>,
}

/// Polygons reachable from `start` without crossing `cut`.
pub fn component_without(a: &MixedAngulation, cut: ArcId, start: usize) -> Vec<usize> {
    let occ = a.occurrences();
    let mut seen = vec![false; a.polygons.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(p) = stack.pop() {
        for s in &a.polygons[p].sides {
            if let Side::Arc(x, o) = *s {
                if x == cut {
                    continue;
                }
                let q = occ[x][o.other() as usize].0;
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    (0..a.polygons.len()).filter(|&p| seen[p]).collect()
}

/// Cuts along `arc` and returns the polygons of a disc whose whole boundary
/// is one copy of the arc, if there is one.
pub fn bounded_disc(a: &MixedAngulation, arc: ArcId) -> Option<MonogonDisc> {
    let occ = a.occurrences()[arc];
    for o in [Occ::First, Occ::Second] {
        let comp = component_without(a, arc, occ[o as usize].0);
        if comp.contains(&occ[o.other() as usize].0) {
            return None;
        }
        let mut sides = 0usize;
        let mut bseg = false;
        for &p in &comp {
            for s in &a.polygons[p].sides {
                match s {
                    Side::Bseg(..) => bseg = true,
                    Side::Arc(..) => sides += 1,
                }
            }
        }
        if bseg {
            continue;
        }
        // sides = 2 * interior arcs + 1
        let interior = (sides - 1) / 2;
        if comp.len() as i64 - interior as i64 == 1 {
            return Some(MonogonDisc { inner: o, polygons: comp });
        }
    }
    None
}

/// A monogon arc bounds a disc and no other arc cuts the angle inside it,
/// so the disc is a single weight -1 polygon.
pub fn monogon_disc(a: &MixedAngulation, arc: ArcId) -> Option<MonogonDisc> {
    bounded_disc(a, arc).filter(|d| d.polygons.len() == 1 && a.polygons[d.polygons[0]].sides.len() == 1)
}

pub fn is_monogon_arc(a: &MixedAngulation, arc: ArcId) -> Result<bool, FlipError> {
    if arc >= a.arcs.len() {
        return Err(FlipError::UnknownArc(arc));
    }
    Ok(monogon_disc(a, arc).is_some())
}

fn pos(a: &MixedAngulation, p: usize, s: Side) -> usize {
    a.polygons[p].sides.iter().position(|&x| x == s).expect("side present")
}

/// Moves each `(side, anchor, after)` so that it sits directly before
/// (`after == false`) or after the anchor, all removals happening first.
fn relocate(a: &mut MixedAngulation, moves: &[(usize, Side, usize, Side, bool)]) {
    for &(p, s, _, _, _) in moves {
        let i = pos(a, p, s);
        a.polygons[p].sides.remove(i);
    }
    for &(_, s, q, anchor, after) in moves {
        let j = pos(a, q, anchor);
        let at = if after { j + 1 } else { j };
        a.polygons[q].sides.insert(at, s);
    }
}

pub fn flip(a: &MixedAngulation, arc: ArcId, dir: Direction) -> Result<(MixedAngulation, FlipRecord), FlipError> {
    if arc >= a.arcs.len() {
        return Err(FlipError::UnknownArc(arc));
    }
    let occ = a.occurrences()[arc];
    let mut out = a.clone();
    let side_at = |p: usize, i: isize| {
        let n = a.polygons[p].sides.len() as isize;
        a.polygons[p].sides[(i.rem_euclid(n)) as usize]
    };
    let (case, moved) = if let Some(disc) = monogon_disc(a, arc) {
        let outer = disc.inner.other();
        let (p, i) = occ[outer as usize];
        let anchor = Side::Arc(arc, outer);
        let (s, after) = match dir {
            Direction::Forward => (side_at(p, i as isize + 1), false),
            Direction::Backward => (side_at(p, i as isize - 1), true),
        };
        relocate(&mut out, &[(p, s, p, anchor, after)]);
        (FlipCase::Monogon, vec![s])
    } else {
        let (p1, i1) = occ[0];
        let (p2, i2) = occ[1];
        let o1 = Side::Arc(arc, Occ::First);
        let o2 = Side::Arc(arc, Occ::Second);
        let (s1, s2, after) = match dir {
            Direction::Forward => (side_at(p1, i1 as isize + 1), side_at(p2, i2 as isize + 1), false),
            Direction::Backward => (side_at(p1, i1 as isize - 1), side_at(p2, i2 as isize - 1), true),
        };
        relocate(&mut out, &[(p1, s1, p2, o2, after), (p2, s2, p1, o1, after)]);
        (FlipCase::Usual, vec![s1, s2])
    };
    out.arcs[arc].shift += dir.sign();
    let rec = FlipRecord { arc, case, direction: dir, moved, shift: dir.sign() };
    Ok((out, rec))
}

pub fn forward_flip(a: &MixedAngulation, arc: ArcId) -> Result<(MixedAngulation, FlipRecord), FlipError> {
    flip(a, arc, Direction::Forward)
}

pub fn backward_flip(a: &MixedAngulation, arc: ArcId) -> Result<(MixedAngulation, FlipRecord), FlipError> {
    flip(a, arc, Direction::Backward)
}

/// Applies a sequence of flips.
pub fn apply_script(
    a: &MixedAngulation,
    script: &[(ArcId, Direction)],
) -> Result<MixedAngulation, FlipError> {
    let mut cur = a.clone();
    for &(arc, d) in script {
        cur = flip(&cur, arc, d)?.0;
    }
    Ok(cur)
}
