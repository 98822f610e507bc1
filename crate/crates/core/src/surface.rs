//! Surface signatures and the polygon complex.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub name: String,
    pub marked: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decoration {
    pub name: String,
    pub weight: i32,
}

/// Genus, boundary components and decorations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundaries: Vec<Boundary>,
    pub decorations: Vec<Decoration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecViolation {
    EmptyBoundary(String),
    NoDecorations,
    WeightBelowMinusOne(String),
    DuplicateName(String),
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecViolation::EmptyBoundary(b) => write!(f, "boundary {b} has no marked point"),
            SpecViolation::NoDecorations => write!(f, "decoration set is empty"),
            SpecViolation::WeightBelowMinusOne(d) => write!(f, "decoration {d} has weight below -1"),
            SpecViolation::DuplicateName(n) => write!(f, "name {n} declared twice"),
        }
    }
}

impl SurfaceSpec {
    pub fn marked_total(&self) -> u32 {
        self.boundaries.iter().map(|b| b.marked).sum()
    }

    pub fn weight_total(&self) -> i64 {
        self.decorations.iter().map(|d| d.weight as i64).sum()
    }

    pub fn decoration_index(&self, name: &str) -> Option<usize> {
        self.decorations.iter().position(|d| d.name == name)
    }

    pub fn boundary_index(&self, name: &str) -> Option<usize> {
        self.boundaries.iter().position(|b| b.name == name)
    }

    /// `Σw − (m + 2b) = 4g − 4`.
    pub fn satisfies_weight_formula(&self) -> bool {
        let lhs = self.weight_total() - (self.marked_total() as i64 + 2 * self.boundaries.len() as i64);
        lhs == 4 * self.genus as i64 - 4
    }
}

pub fn validate_spec(spec: &SurfaceSpec) -> Vec<SpecViolation> {
    let mut out = Vec::new();
    for b in &spec.boundaries {
        if b.marked == 0 {
            out.push(SpecViolation::EmptyBoundary(b.name.clone()));
        }
    }
    if spec.decorations.is_empty() {
        out.push(SpecViolation::NoDecorations);
    }
    for d in &spec.decorations {
        if d.weight < -1 {
            out.push(SpecViolation::WeightBelowMinusOne(d.name.clone()));
        }
    }
    let mut seen = BTreeMap::new();
    let names = spec
        .boundaries
        .iter()
        .map(|b| &b.name)
        .chain(spec.decorations.iter().map(|d| &d.name));
    for n in names {
        if seen.insert(n.clone(), ()).is_some() {
            out.push(SpecViolation::DuplicateName(n.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupError {
    UnsupportedOrder(i32),
    DegreeMismatch { sum: i64, expected: i64 },
}

impl fmt::Display for BlowupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupError::UnsupportedOrder(w) => write!(f, "unsupported singularity order {w}"),
            BlowupError::DegreeMismatch { sum, expected } => {
                write!(f, "orders sum to {sum}, expected {expected}")
            }
        }
    }
}

/// Orders `w >= -1` become decorations, orders `w <= -3` become boundaries
/// with `|w| - 2` marked points.
pub fn real_blowup_spec(genus: u32, orders: &[i32]) -> Result<SurfaceSpec, BlowupError> {
    if let Some(&w) = orders.iter().find(|&&w| w == -2) {
        return Err(BlowupError::UnsupportedOrder(w));
    }
    let sum: i64 = orders.iter().map(|&w| w as i64).sum();
    let expected = 4 * genus as i64 - 4;
    if sum != expected {
        return Err(BlowupError::DegreeMismatch { sum, expected });
    }
    let mut spec = SurfaceSpec { genus, boundaries: Vec::new(), decorations: Vec::new() };
    for &w in orders {
        if w >= -1 {
            let name = format!("z{}", spec.decorations.len());
            spec.decorations.push(Decoration { name, weight: w });
        } else {
            let name = format!("b{}", spec.boundaries.len());
            spec.boundaries.push(Boundary { name, marked: (-w - 2) as u32 });
        }
    }
    Ok(spec)
}

pub type ArcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Occ {
    First,
    Second,
}

impl Occ {
    pub fn other(self) -> Occ {
        match self {
            Occ::First => Occ::Second,
            Occ::Second => Occ::First,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Arc(ArcId, Occ),
    /// Boundary index and segment index; segment `k` runs from marked point
    /// `k` to `k + 1`.
    Bseg(usize, u32),
}

impl Side {
    pub fn arc(self) -> Option<ArcId> {
        match self {
            Side::Arc(a, _) => Some(a),
            Side::Bseg(..) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub name: String,
    pub shift: i64,
}

/// A polygon, its sides listed counterclockwise. Corner `k` is where side `k`
/// starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    pub dec: usize,
    pub sides: Vec<Side>,
}

/// Polygon `i` always carries decoration `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedAngulation {
    pub spec: SurfaceSpec,
    pub arcs: Vec<Arc>,
    pub polygons: Vec<Polygon>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideDesc {
    Arc(String),
    Bseg(String, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonDesc {
    pub dec: String,
    pub sides: Vec<SideDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    InvalidSpec(Vec<SpecViolation>),
    UnknownDecoration(String),
    UnknownBoundary(String),
    SegmentOutOfRange { boundary: String, k: u32 },
    DecorationWithoutPolygon(String),
    DecorationReused(String),
    DanglingArc { arc: String, count: usize },
    PolygonSizeMismatch { dec: String, sides: usize, expected: i64 },
    DuplicateBoundarySegment { boundary: String, k: u32 },
    MissingBoundarySegment { boundary: String, k: u32 },
    UnknownShift(String),
    GluingMismatch(String),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BuildError::*;
        match self {
            InvalidSpec(v) => {
                write!(f, "invalid surface spec:")?;
                for x in v {
                    write!(f, " {x};")?;
                }
                Ok(())
            }
            UnknownDecoration(d) => write!(f, "unknown decoration {d}"),
            UnknownBoundary(b) => write!(f, "unknown boundary {b}"),
            SegmentOutOfRange { boundary, k } => write!(f, "segment {boundary}.{k} out of range"),
            DecorationWithoutPolygon(d) => write!(f, "decoration {d} has no polygon"),
            DecorationReused(d) => write!(f, "decoration {d} carries two polygons"),
            DanglingArc { arc, count } => write!(f, "DanglingArc: {arc} occurs {count} times"),
            PolygonSizeMismatch { dec, sides, expected } => {
                write!(f, "PolygonSizeMismatch: {dec} has {sides} sides, expected {expected}")
            }
            DuplicateBoundarySegment { boundary, k } => {
                write!(f, "DuplicateBoundarySegment: {boundary}.{k}")
            }
            MissingBoundarySegment { boundary, k } => write!(f, "missing boundary segment {boundary}.{k}"),
            UnknownShift(a) => write!(f, "shift given for unknown arc {a}"),
            GluingMismatch(m) => write!(f, "GluingMismatch: {m}"),
        }
    }
}

/// Corner position: polygon and index of the side starting there.
pub type Corner = (usize, usize);

/// Marked points recovered from the corner gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoints {
    /// `point[p][k]` is the marked point at corner `k` of polygon `p`.
    pub point: Vec<Vec<usize>>,
    /// `(boundary, index)` of each marked point.
    pub label: Vec<(usize, u32)>,
    /// Corners at each marked point, counterclockwise, starting at the
    /// corner where the outgoing boundary segment leaves.
    pub fan: Vec<Vec<Corner>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl MixedAngulation {
    pub fn build(
        spec: SurfaceSpec,
        polygons: &[PolygonDesc],
        shifts: &[(String, i64)],
    ) -> Result<MixedAngulation, BuildError> {
        let v = validate_spec(&spec);
        if !v.is_empty() {
            return Err(BuildError::InvalidSpec(v));
        }
        let mut slots: Vec<Option<Polygon>> = vec![None; spec.decorations.len()];
        let mut arc_names: Vec<String> = Vec::new();
        let mut arc_count: Vec<usize> = Vec::new();
        for pd in polygons {
            let dec = spec
                .decoration_index(&pd.dec)
                .ok_or_else(|| BuildError::UnknownDecoration(pd.dec.clone()))?;
            if slots[dec].is_some() {
                return Err(BuildError::DecorationReused(pd.dec.clone()));
            }
            let mut sides = Vec::with_capacity(pd.sides.len());
            for s in &pd.sides {
                match s {
                    SideDesc::Arc(name) => {
                        let id = match arc_names.iter().position(|n| n == name) {
                            Some(i) => i,
                            None => {
                                arc_names.push(name.clone());
                                arc_count.push(0);
                                arc_names.len() - 1
                            }
                        };
                        arc_count[id] += 1;
                        let occ = if arc_count[id] == 1 { Occ::First } else { Occ::Second };
                        sides.push(Side::Arc(id, occ));
                    }
                    SideDesc::Bseg(b, k) => {
                        let bi = spec
                            .boundary_index(b)
                            .ok_or_else(|| BuildError::UnknownBoundary(b.clone()))?;
                        if *k >= spec.boundaries[bi].marked {
                            return Err(BuildError::SegmentOutOfRange { boundary: b.clone(), k: *k });
                        }
                        sides.push(Side::Bseg(bi, *k));
                    }
                }
            }
            slots[dec] = Some(Polygon { dec, sides });
        }
        for (i, n) in arc_names.iter().enumerate() {
            if arc_count[i] != 2 {
                return Err(BuildError::DanglingArc { arc: n.clone(), count: arc_count[i] });
            }
        }
        let mut polys = Vec::with_capacity(slots.len());
        for (i, s) in slots.into_iter().enumerate() {
            match s {
                Some(p) => polys.push(p),
                None => {
                    return Err(BuildError::DecorationWithoutPolygon(spec.decorations[i].name.clone()))
                }
            }
        }
        let mut arcs: Vec<Arc> = arc_names.into_iter().map(|name| Arc { name, shift: 0 }).collect();
        for (name, s) in shifts {
            let a = arcs
                .iter_mut()
                .find(|a| &a.name == name)
                .ok_or_else(|| BuildError::UnknownShift(name.clone()))?;
            a.shift = *s;
        }
        let a = MixedAngulation { spec, arcs, polygons: polys };
        a.check()?;
        Ok(a)
    }

    /// Re-runs every structural check.
    pub fn check(&self) -> Result<(), BuildError> {
        let spec = &self.spec;
        for p in &self.polygons {
            let expected = spec.decorations[p.dec].weight as i64 + 2;
            if p.sides.len() as i64 != expected {
                return Err(BuildError::PolygonSizeMismatch {
                    dec: spec.decorations[p.dec].name.clone(),
                    sides: p.sides.len(),
                    expected,
                });
            }
        }
        let mut seen_arc = vec![[0usize; 2]; self.arcs.len()];
        let mut seen_seg: Vec<Vec<bool>> =
            spec.boundaries.iter().map(|b| vec![false; b.marked as usize]).collect();
        for p in &self.polygons {
            for s in &p.sides {
                match *s {
                    Side::Arc(a, o) => {
                        if a >= self.arcs.len() {
                            return Err(BuildError::GluingMismatch(format!("arc id {a} out of range")));
                        }
                        seen_arc[a][o as usize] += 1;
                    }
                    Side::Bseg(b, k) => {
                        if b >= spec.boundaries.len() || k >= spec.boundaries[b].marked {
                            return Err(BuildError::GluingMismatch(format!("segment {b}.{k} out of range")));
                        }
                        if seen_seg[b][k as usize] {
                            return Err(BuildError::DuplicateBoundarySegment {
                                boundary: spec.boundaries[b].name.clone(),
                                k,
                            });
                        }
                        seen_seg[b][k as usize] = true;
                    }
                }
            }
        }
        for (a, c) in seen_arc.iter().enumerate() {
            if c[0] != 1 || c[1] != 1 {
                return Err(BuildError::DanglingArc {
                    arc: self.arcs[a].name.clone(),
                    count: c[0] + c[1],
                });
            }
        }
        for (b, segs) in seen_seg.iter().enumerate() {
            if let Some(k) = segs.iter().position(|x| !x) {
                return Err(BuildError::MissingBoundarySegment {
                    boundary: spec.boundaries[b].name.clone(),
                    k: k as u32,
                });
            }
        }
        let euler = self.polygons.len() as i64 - self.arcs.len() as i64;
        let expected = 2 - 2 * spec.genus as i64 - spec.boundaries.len() as i64;
        if euler != expected {
            return Err(BuildError::GluingMismatch(format!(
                "polygons minus arcs is {euler}, surface needs {expected}"
            )));
        }
        if !self.is_connected() {
            return Err(BuildError::GluingMismatch("complex is disconnected".to_string()));
        }
        self.derive_marked_points().map(|_| ())
    }

    fn is_connected(&self) -> bool {
        if self.polygons.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.polygons.len()).collect();
        let occ = self.occurrences();
        for o in &occ {
            let (a, b) = (find(&mut parent, o[0].0), find(&mut parent, o[1].0));
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..self.polygons.len()).all(|p| find(&mut parent, p) == r)
    }

    /// `(polygon, side index)` of the first and second occurrence of each arc.
    pub fn occurrences(&self) -> Vec<[(usize, usize); 2]> {
        let mut out = vec![[(usize::MAX, 0); 2]; self.arcs.len()];
        for (pi, p) in self.polygons.iter().enumerate() {
            for (k, s) in p.sides.iter().enumerate() {
                if let Side::Arc(a, o) = *s {
                    out[a][o as usize] = (pi, k);
                }
            }
        }
        out
    }

    pub fn locate(&self, a: ArcId, o: Occ) -> (usize, usize) {
        self.occurrences()[a][o as usize]
    }

    /// Position of boundary segment `(b, k)`.
    pub fn locate_bseg(&self, b: usize, k: u32) -> Option<(usize, usize)> {
        for (pi, p) in self.polygons.iter().enumerate() {
            if let Some(i) = p.sides.iter().position(|s| *s == Side::Bseg(b, k)) {
                return Some((pi, i));
            }
        }
        None
    }

    /// Corner reached by rotating clockwise about its marked point, i.e.
    /// crossing the side leaving the corner. `None` when that side lies on
    /// the boundary.
    pub fn cw_corner(&self, c: Corner) -> Option<Corner> {
        let (p, k) = c;
        match self.polygons[p].sides[k] {
            Side::Arc(a, o) => {
                let (q, j) = self.locate(a, o.other());
                let n = self.polygons[q].sides.len();
                Some((q, (j + 1) % n))
            }
            Side::Bseg(..) => None,
        }
    }

    /// Inverse of [`cw_corner`](Self::cw_corner): crosses the side arriving
    /// at the corner.
    pub fn ccw_corner(&self, c: Corner) -> Option<Corner> {
        let (p, k) = c;
        let n = self.polygons[p].sides.len();
        let before = (k + n - 1) % n;
        match self.polygons[p].sides[before] {
            Side::Arc(a, o) => Some(self.locate(a, o.other())),
            Side::Bseg(..) => None,
        }
    }

    pub fn derive_marked_points(&self) -> Result<MarkedPoints, BuildError> {
        let spec = &self.spec;
        let mut point: Vec<Vec<usize>> =
            self.polygons.iter().map(|p| vec![usize::MAX; p.sides.len()]).collect();
        let mut label = Vec::new();
        let mut fan = Vec::new();
        for (b, bd) in spec.boundaries.iter().enumerate() {
            for k in 0..bd.marked {
                let start = self
                    .locate_bseg(b, k)
                    .ok_or_else(|| BuildError::GluingMismatch(format!("segment {b}.{k} missing")))?;
                let id = label.len();
                let mut cur = start;
                let mut corners = Vec::new();
                loop {
                    if point[cur.0][cur.1] != usize::MAX {
                        return Err(BuildError::GluingMismatch(format!(
                            "marked point {}.{k} closes up into a loop",
                            bd.name
                        )));
                    }
                    point[cur.0][cur.1] = id;
                    corners.push(cur);
                    match self.ccw_corner(cur) {
                        Some(c) => cur = c,
                        None => break,
                    }
                }
                let (p, i) = cur;
                let n = self.polygons[p].sides.len();
                let prev_k = (k + bd.marked - 1) % bd.marked;
                if self.polygons[p].sides[(i + n - 1) % n] != Side::Bseg(b, prev_k) {
                    return Err(BuildError::GluingMismatch(format!(
                        "segment {}.{k} does not follow {}.{prev_k}",
                        bd.name, bd.name
                    )));
                }
                label.push((b, k));
                fan.push(corners);
            }
        }
        for (p, row) in point.iter().enumerate() {
            if let Some(k) = row.iter().position(|&x| x == usize::MAX) {
                return Err(BuildError::GluingMismatch(format!(
                    "corner {k} of polygon {} is an interior vertex",
                    spec.decorations[self.polygons[p].dec].name
                )));
            }
        }
        Ok(MarkedPoints { point, label, fan })
    }

    pub fn marked_points(&self) -> MarkedPoints {
        self.derive_marked_points().expect("validated angulation")
    }

    pub fn arc_id(&self, name: &str) -> Option<ArcId> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn dec_name(&self, d: usize) -> &str {
        &self.spec.decorations[d].name
    }

    /// Both endpoints of an arc: the marked points at the corners where its
    /// first occurrence starts and ends.
    pub fn arc_endpoints(&self, a: ArcId, mp: &MarkedPoints) -> (usize, usize) {
        let (p, k) = self.locate(a, Occ::First);
        let n = self.polygons[p].sides.len();
        (mp.point[p][k], mp.point[p][(k + 1) % n])
    }

    /// Euler characteristic `V - E + F` of the cell complex.
    pub fn euler_characteristic(&self) -> i64 {
        let m = self.spec.marked_total() as i64;
        m - (self.arcs.len() as i64 + m) + self.polygons.len() as i64
    }

    pub fn side_token(&self, s: Side) -> String {
        match s {
            Side::Arc(a, _) => format!("arc:{}", self.arcs[a].name),
            Side::Bseg(b, k) => format!("bseg:{}.{}", self.spec.boundaries[b].name, k),
        }
    }

    /// Polygons rotated to start at the least side token, occurrences
    /// renumbered in reading order. Two angulations with equal normal form
    /// are the same complex.
    pub fn normalized(&self) -> MixedAngulation {
        let mut out = self.clone();
        let mut counter = vec![0u8; self.arcs.len()];
        for p in &mut out.polygons {
            let toks: Vec<String> = p.sides.iter().map(|&s| self.side_token(s)).collect();
            let n = toks.len();
            let best = (0..n)
                .min_by(|&i, &j| {
                    let a = (0..n).map(|t| &toks[(i + t) % n]);
                    let b = (0..n).map(|t| &toks[(j + t) % n]);
                    a.cmp(b)
                })
                .unwrap_or(0);
            p.sides.rotate_left(best);
            for s in &mut p.sides {
                if let Side::Arc(a, o) = s {
                    *o = if counter[*a] == 0 { Occ::First } else { Occ::Second };
                    counter[*a] += 1;
                }
            }
        }
        out
    }

    pub fn weight_formula_check(&self) -> bool {
        self.spec.satisfies_weight_formula()
    }

    pub fn describe(&self) -> Vec<PolygonDesc> {
        self.polygons
            .iter()
            .map(|p| PolygonDesc {
                dec: self.spec.decorations[p.dec].name.clone(),
                sides: p
                    .sides
                    .iter()
                    .map(|&s| match s {
                        Side::Arc(a, _) => SideDesc::Arc(self.arcs[a].name.clone()),
                        Side::Bseg(b, k) => SideDesc::Bseg(self.spec.boundaries[b].name.clone(), k),
                    })
                    .collect(),
            })
            .collect()
    }
}

/// Free-function form of [`MixedAngulation::weight_formula_check`].
pub fn weight_formula_check(a: &MixedAngulation) -> bool {
    a.weight_formula_check()
}
