//! Isotopy classes of open arcs, tracked through flips.
//!
//! Arcs are recorded by their crossing sequence with a fixed reference
//! complex built from the initial angulation, with decorations forgotten.
//! In that surface every arc bounding a disc is a trivial loop, so those
//! arcs are dropped from the reference and the remaining polygons are still
//! discs. A word starts in a corner, crosses reference arcs and ends in a
//! corner; sliding an endpoint around its marked point and cancelling
//! back-and-forth crossings brings it to a normal form.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::flip::{bounded_disc, monogon_disc, Direction};
use crate::surface::{ArcId, Corner, MixedAngulation, Occ, Side};

/// A crossing: leave the current polygon through this occurrence.
pub type Token = (ArcId, Occ);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenWord {
    pub start: Corner,
    pub tokens: Vec<Token>,
    pub end: Corner,
}

impl OpenWord {
    pub fn reversed(&self) -> OpenWord {
        OpenWord {
            start: self.end,
            tokens: self.tokens.iter().rev().map(|&(x, o)| (x, o.other())).collect(),
            end: self.start,
        }
    }
}

/// The reference complex and its marked-point fans.
#[derive(Clone, Debug)]
pub struct Reference {
    pub polys: Vec<Vec<Side>>,
    occ: Vec<Option<[(usize, usize); 2]>>,
    /// Marked point and fan position of every corner.
    corner_at: Vec<Vec<(usize, usize)>>,
    pub fans: Vec<Vec<Corner>>,
    /// Marked point of each original arc's first endpoint, for dropped arcs.
    dropped_point: Vec<Option<usize>>,
    bseg_word: Vec<Vec<OpenWord>>,
}

impl Reference {
    pub fn new(a0: &MixedAngulation) -> Reference {
        let mut dropped = vec![false; a0.arcs.len()];
        let mut dead_poly = vec![false; a0.polygons.len()];
        for x in 0..a0.arcs.len() {
            if let Some(d) = bounded_disc(a0, x) {
                dropped[x] = true;
                for p in d.polygons {
                    dead_poly[p] = true;
                }
            }
        }
        let polys: Vec<Vec<Side>> = a0
            .polygons
            .iter()
            .enumerate()
            .map(|(p, poly)| {
                if dead_poly[p] {
                    Vec::new()
                } else {
                    poly.sides.iter().copied().filter(|s| !matches!(s, Side::Arc(x, _) if dropped[*x])).collect()
                }
            })
            .collect();
        let mut occ = vec![None; a0.arcs.len()];
        for (p, sides) in polys.iter().enumerate() {
            for (k, s) in sides.iter().enumerate() {
                if let Side::Arc(x, o) = *s {
                    let e = occ[x].get_or_insert([(0, 0); 2]);
                    e[o as usize] = (p, k);
                }
            }
        }
        let mut r = Reference {
            polys,
            occ,
            corner_at: Vec::new(),
            fans: Vec::new(),
            dropped_point: vec![None; a0.arcs.len()],
            bseg_word: Vec::new(),
        };
        r.corner_at = r.polys.iter().map(|s| vec![(usize::MAX, 0); s.len()]).collect();
        for (b, bd) in a0.spec.boundaries.iter().enumerate() {
            for k in 0..bd.marked {
                let v = r.fans.len();
                let mut cur = r.find(Side::Bseg(b, k)).expect("segment present");
                let mut fan = Vec::new();
                loop {
                    r.corner_at[cur.0][cur.1] = (v, fan.len());
                    fan.push(cur);
                    match r.ccw(cur) {
                        Some(c) => cur = c,
                        None => break,
                    }
                }
                r.fans.push(fan);
            }
        }
        let mp = a0.marked_points();
        for x in 0..a0.arcs.len() {
            if dropped[x] {
                r.dropped_point[x] = Some(a0.arc_endpoints(x, &mp).0);
            }
        }
        r.bseg_word = a0
            .spec
            .boundaries
            .iter()
            .enumerate()
            .map(|(b, bd)| {
                (0..bd.marked)
                    .map(|k| {
                        let (p, i) = r.find(Side::Bseg(b, k)).expect("segment present");
                        OpenWord { start: (p, i), tokens: Vec::new(), end: (p, (i + 1) % r.polys[p].len()) }
                    })
                    .collect()
            })
            .collect();
        r
    }

    fn find(&self, s: Side) -> Option<Corner> {
        for (p, sides) in self.polys.iter().enumerate() {
            if let Some(i) = sides.iter().position(|&x| x == s) {
                return Some((p, i));
            }
        }
        None
    }

    fn twin(&self, x: ArcId, o: Occ) -> (usize, usize) {
        self.occ[x].expect("kept arc")[o.other() as usize]
    }

    /// Crosses the side arriving at the corner.
    fn ccw(&self, c: Corner) -> Option<Corner> {
        let n = self.polys[c.0].len();
        match self.polys[c.0][(c.1 + n - 1) % n] {
            Side::Arc(x, o) => Some(self.twin(x, o)),
            Side::Bseg(..) => None,
        }
    }

    /// Crosses the side leaving the corner.
    fn cw(&self, c: Corner) -> Option<Corner> {
        match self.polys[c.0][c.1] {
            Side::Arc(x, o) => {
                let (q, j) = self.twin(x, o);
                Some((q, (j + 1) % self.polys[q].len()))
            }
            Side::Bseg(..) => None,
        }
    }

    pub fn point_of(&self, c: Corner) -> usize {
        self.corner_at[c.0][c.1].0
    }

    pub fn trivial(&self, v: usize) -> OpenWord {
        let c = self.fans[v][0];
        OpenWord { start: c, tokens: Vec::new(), end: c }
    }

    /// Words of the initial arcs, oriented along their first occurrence.
    pub fn initial_words(&self, a0: &MixedAngulation) -> Vec<OpenWord> {
        (0..a0.arcs.len())
            .map(|x| match self.occ[x] {
                Some(o) => {
                    let (p, i) = o[0];
                    let w = OpenWord { start: (p, i), tokens: Vec::new(), end: (p, (i + 1) % self.polys[p].len()) };
                    self.normalize(w)
                }
                None => self.trivial(self.dropped_point[x].expect("dropped arc")),
            })
            .collect()
    }

    pub fn bseg(&self, b: usize, k: u32) -> &OpenWord {
        &self.bseg_word[b][k as usize]
    }

    /// Crossings met while turning around a marked point from one corner of
    /// its fan to another.
    fn fan_tokens(&self, from: Corner, to: Corner) -> Vec<Token> {
        let (v, i) = self.corner_at[from.0][from.1];
        let (w, j) = self.corner_at[to.0][to.1];
        assert_eq!(v, w, "concatenation at different marked points");
        let fan = &self.fans[v];
        let mut out = Vec::new();
        if i < j {
            for c in &fan[i..j] {
                let n = self.polys[c.0].len();
                if let Side::Arc(x, o) = self.polys[c.0][(c.1 + n - 1) % n] {
                    out.push((x, o));
                }
            }
        } else {
            for c in fan[j + 1..=i].iter().rev() {
                if let Side::Arc(x, o) = self.polys[c.0][c.1] {
                    out.push((x, o));
                }
            }
        }
        out
    }

    pub fn concat(&self, a: &OpenWord, b: &OpenWord) -> OpenWord {
        let mut tokens = a.tokens.clone();
        tokens.extend(self.fan_tokens(a.end, b.start));
        tokens.extend(b.tokens.iter().copied());
        self.normalize(OpenWord { start: a.start, tokens, end: b.end })
    }

    fn free_reduce(tokens: &mut Vec<Token>) {
        let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
        for &t in tokens.iter() {
            if let Some(&(x, o)) = out.last() {
                if x == t.0 && o != t.1 {
                    out.pop();
                    continue;
                }
            }
            out.push(t);
        }
        *tokens = out;
    }

    fn slide_start(&self, w: &mut OpenWord) -> bool {
        let Some(&(x, o)) = w.tokens.first() else { return false };
        let (p, i) = w.start;
        let n = self.polys[p].len();
        let Some(k) = self.polys[p].iter().position(|&s| s == Side::Arc(x, o)) else {
            return false;
        };
        let next = if k == i {
            self.cw(w.start)
        } else if k == (i + n - 1) % n {
            self.ccw(w.start)
        } else {
            None
        };
        match next {
            Some(c) => {
                w.start = c;
                w.tokens.remove(0);
                true
            }
            None => false,
        }
    }

    pub fn normalize(&self, mut w: OpenWord) -> OpenWord {
        loop {
            Self::free_reduce(&mut w.tokens);
            let mut moved = self.slide_start(&mut w);
            let mut r = w.reversed();
            moved |= self.slide_start(&mut r);
            w = r.reversed();
            if !moved {
                break;
            }
        }
        if w.tokens.is_empty() {
            if w.start == w.end {
                return self.trivial(self.point_of(w.start));
            }
            return self.side_class(w);
        }
        w
    }

    /// An empty word joining two corners of one polygon runs parallel to a
    /// side when the corners are adjacent; pick the least representative
    /// among all polygons such a side borders.
    fn side_class(&self, w: OpenWord) -> OpenWord {
        let mut seen: BTreeSet<(Corner, Corner)> = BTreeSet::new();
        let mut stack = vec![(w.start, w.end)];
        while let Some((s, e)) = stack.pop() {
            if s.0 != e.0 || !seen.insert((s, e)) {
                continue;
            }
            let p = s.0;
            let n = self.polys[p].len();
            for (k, side) in self.polys[p].iter().enumerate() {
                let (a, b) = (k, (k + 1) % n);
                let forward = s.1 == a && e.1 == b;
                let backward = s.1 == b && e.1 == a;
                if !(forward || backward) {
                    continue;
                }
                if let Side::Arc(x, o) = *side {
                    let (q, j) = self.twin(x, o);
                    let m = self.polys[q].len();
                    // the twin runs the other way round
                    let (qs, qe) = ((q, (j + 1) % m), (q, j));
                    stack.push(if forward { (qs, qe) } else { (qe, qs) });
                }
            }
        }
        let (s, e) = seen.into_iter().next().unwrap_or((w.start, w.end));
        OpenWord { start: s, tokens: Vec::new(), end: e }
    }

    pub fn canonical(&self, w: &OpenWord) -> OpenWord {
        let a = self.normalize(w.clone());
        let b = self.normalize(w.reversed());
        if b < a {
            b
        } else {
            a
        }
    }
}

/// Tracked words of the current arcs, each oriented along its first
/// occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tracked {
    pub words: Vec<OpenWord>,
}

impl Tracked {
    pub fn initial(r: &Reference, a0: &MixedAngulation) -> Tracked {
        Tracked { words: r.initial_words(a0) }
    }

    fn side_word(&self, r: &Reference, s: Side) -> OpenWord {
        match s {
            Side::Arc(x, Occ::First) => self.words[x].clone(),
            Side::Arc(x, Occ::Second) => self.words[x].reversed(),
            Side::Bseg(b, k) => r.bseg(b, k).clone(),
        }
    }

    /// Words after flipping `arc` in the angulation `a` (taken before the
    /// flip).
    pub fn after_flip(&self, r: &Reference, a: &MixedAngulation, arc: ArcId, dir: Direction) -> Tracked {
        let occ = a.occurrences()[arc];
        let side = |p: usize, i: isize| {
            let n = a.polygons[p].sides.len() as isize;
            a.polygons[p].sides[i.rem_euclid(n) as usize]
        };
        let mut out = self.clone();
        if let Some(d) = monogon_disc(a, arc) {
            let o = d.inner.other();
            let (p, i) = occ[o as usize];
            let w_o = self.side_word(r, Side::Arc(arc, o));
            let new_o = match dir {
                Direction::Forward => {
                    let s = self.side_word(r, side(p, i as isize + 1));
                    r.concat(&r.concat(&s.reversed(), &w_o), &s)
                }
                Direction::Backward => {
                    let t = self.side_word(r, side(p, i as isize - 1));
                    r.concat(&r.concat(&t, &w_o), &t.reversed())
                }
            };
            out.words[arc] = if o == Occ::First { new_o } else { new_o.reversed() };
        } else {
            let (p1, i1) = occ[0];
            let (p2, i2) = occ[1];
            match dir {
                Direction::Forward => {
                    let s1 = self.side_word(r, side(p1, i1 as isize + 1));
                    let s2 = self.side_word(r, side(p2, i2 as isize + 1));
                    let o2 = self.side_word(r, Side::Arc(arc, Occ::Second));
                    let new_o2 = r.concat(&r.concat(&s1.reversed(), &o2), &s2);
                    out.words[arc] = new_o2.reversed();
                }
                Direction::Backward => {
                    let t1 = self.side_word(r, side(p1, i1 as isize - 1));
                    let t2 = self.side_word(r, side(p2, i2 as isize - 1));
                    let o1 = self.side_word(r, Side::Arc(arc, Occ::First));
                    out.words[arc] = r.concat(&r.concat(&t1, &o1), &t2.reversed());
                }
            }
        }
        out.words[arc] = r.normalize(out.words[arc].clone());
        out
    }

    /// Unordered set of arc classes.
    pub fn key(&self, r: &Reference) -> Vec<OpenWord> {
        let mut k: Vec<OpenWord> = self.words.iter().map(|w| r.canonical(w)).collect();
        k.sort();
        k
    }
}
