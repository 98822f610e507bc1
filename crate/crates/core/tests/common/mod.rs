#![allow(dead_code)]

use wdms_core::surface::{Boundary, Decoration, MixedAngulation, PolygonDesc, SideDesc, SurfaceSpec};

/// Tokens containing a dot are boundary segments `name.k`; the rest are arcs.
pub fn mk(genus: u32, bounds: &[(&str, u32)], polys: &[(&str, i32, &str)]) -> MixedAngulation {
    try_mk(genus, bounds, polys).unwrap()
}

pub fn try_mk(
    genus: u32,
    bounds: &[(&str, u32)],
    polys: &[(&str, i32, &str)],
) -> Result<MixedAngulation, wdms_core::surface::BuildError> {
    let spec = SurfaceSpec {
        genus,
        boundaries: bounds.iter().map(|&(n, m)| Boundary { name: n.into(), marked: m }).collect(),
        decorations: polys.iter().map(|&(n, w, _)| Decoration { name: n.into(), weight: w }).collect(),
    };
    let descs: Vec<PolygonDesc> = polys
        .iter()
        .map(|&(n, _, s)| PolygonDesc {
            dec: n.into(),
            sides: s
                .split_whitespace()
                .map(|t| match t.split_once('.') {
                    Some((b, k)) => SideDesc::Bseg(b.into(), k.parse().unwrap()),
                    None => SideDesc::Arc(t.into()),
                })
                .collect(),
        })
        .collect();
    MixedAngulation::build(spec, &descs, &[])
}

pub fn pentagon() -> MixedAngulation {
    mk(0, &[("b", 5)], &[("z1", 1, "b.0 b.1 a13"), ("z2", 1, "a13 b.2 a14"), ("z3", 1, "a14 b.3 b.4")])
}

pub fn monogon() -> MixedAngulation {
    mk(0, &[("b", 2)], &[("z0", -1, "g"), ("z1", 1, "g b.0 b.1")])
}

pub fn annulus() -> MixedAngulation {
    mk(0, &[("o", 2), ("i", 1)], &[("t1", 1, "o.0 x y"), ("t2", 1, "o.1 y z"), ("t3", 1, "i.0 x z")])
}


/// One-holed torus with a single marked point: one pentagon.
pub fn torus() -> MixedAngulation {
    mk(1, &[("b", 1)], &[("u", 3, "b.0 p q p q")])
}

/// Small deterministic generator, enough for test corpora.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn below(&mut self, n: usize) -> usize {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) % n as u64) as usize
    }
}

pub fn hexagon() -> MixedAngulation {
    mk(
        0,
        &[("b", 6)],
        &[("z1", 1, "b.0 b.1 d1"), ("z2", 1, "d1 b.2 d2"), ("z3", 1, "d2 b.3 d3"), ("z4", 1, "d3 b.4 b.5")],
    )
}

/// Octagon with an inner quadrilateral split by `d04`.
pub fn octagon() -> MixedAngulation {
    mk(
        0,
        &[("b", 8)],
        &[
            ("e0", 1, "b.0 b.1 q02"),
            ("e1", 1, "b.2 b.3 q24"),
            ("e2", 1, "b.4 b.5 q46"),
            ("e3", 1, "b.6 b.7 q60"),
            ("t1", 1, "q02 q24 d04"),
            ("t2", 1, "d04 q46 q60"),
        ],
    )
}

/// Square whose middle is a chain of `m + 1` bigons between `g` and `dl`.
pub fn bigon_chain(m: usize) -> MixedAngulation {
    let mut names = vec!["g".to_string()];
    names.extend((1..=m).map(|i| format!("h{i}")));
    names.push("dl".into());
    let mut polys: Vec<(String, i32, String)> = vec![("t1".into(), 1, "b.0 b.1 g".into())];
    for i in 0..=m {
        polys.push((format!("u{i}"), 0, format!("{} {}", names[i], names[i + 1])));
    }
    polys.push(("t2".into(), 1, "dl b.2 b.3".into()));
    let refs: Vec<(&str, i32, &str)> = polys.iter().map(|(a, w, s)| (a.as_str(), *w, s.as_str())).collect();
    mk(0, &[("b", 4)], &refs)
}

/// Annulus with one marked point on each boundary; `c` encloses the hole.
pub fn annulus_one() -> MixedAngulation {
    mk(0, &[("o", 1), ("i", 1)], &[("out", 0, "o.0 c"), ("in", 2, "c e i.0 e")])
}

/// Loop `gt` around a hole, joined to it by `g1` (and `g2` when `both`).
pub fn holed_loop(both: bool) -> MixedAngulation {
    if both {
        mk(0, &[("o", 2), ("i", 1)], &[("out", 1, "o.0 o.1 gt"), ("x", 1, "gt g1 g2"), ("y", 1, "g2 i.0 g1")])
    } else {
        mk(0, &[("o", 2), ("i", 1)], &[("out", 1, "o.0 o.1 gt"), ("s", 2, "gt g1 i.0 g1")])
    }
}

/// Loop `gt` around a handle cut by `r`, `k` with a monogon `o` inside.
pub fn handle_loop(inner: &str) -> MixedAngulation {
    mk(1, &[("b", 2)], &[("out", 1, "b.0 b.1 gt"), ("h", 4, inner), ("m", -1, "o")])
}

/// [`bigon_chain`] with an extra arc `x` next to `g`.
pub fn table_chain(m: usize) -> MixedAngulation {
    let mut names = vec!["g".to_string()];
    names.extend((1..=m).map(|i| format!("h{i}")));
    names.push("dl".into());
    let mut polys: Vec<(String, i32, String)> = vec![("t0".into(), 1, "b.0 b.1 x".into()), ("t1".into(), 1, "x b.2 g".into())];
    for i in 0..=m {
        polys.push((format!("u{i}"), 0, format!("{} {}", names[i], names[i + 1])));
    }
    polys.push(("t2".into(), 1, "dl b.3 b.4".into()));
    let refs: Vec<(&str, i32, &str)> = polys.iter().map(|(a, w, s)| (a.as_str(), *w, s.as_str())).collect();
    mk(0, &[("b", 5)], &refs)
}

/// [`holed_loop`] with an extra arc `x` right after `gt`.
pub fn table_loop(both: bool) -> MixedAngulation {
    let bounds = [("o", 3), ("i", 1)];
    if both {
        mk(0, &bounds, &[("out", 1, "gt x o.0"), ("w", 1, "x o.1 o.2"), ("p", 1, "gt g1 g2"), ("q", 1, "g2 i.0 g1")])
    } else {
        mk(0, &bounds, &[("out", 1, "gt x o.0"), ("w", 1, "x o.1 o.2"), ("s", 2, "gt g1 i.0 g1")])
    }
}
