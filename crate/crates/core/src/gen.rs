//! Random angulations for test corpora. Randomness comes from a caller
//! supplied `below(n)` source so the crate stays dependency free.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::flip::{flip, Direction};
use crate::surface::{Boundary, Decoration, MixedAngulation, PolygonDesc, SideDesc, SurfaceSpec};

/// Random dissection of a disc with `n` marked points into polygons, with
/// occasional bigons and monogons. At most `max_arcs` arcs.
pub fn random_disc(n: u32, max_arcs: usize, below: &mut dyn FnMut(usize) -> usize) -> MixedAngulation {
    assert!(n >= 1);
    let b = String::from("b");
    let mut regions: Vec<Vec<SideDesc>> =
        vec![(0..n).map(|k| SideDesc::Bseg(b.clone(), k)).collect()];
    let mut done: Vec<Vec<SideDesc>> = Vec::new();
    let mut arcs = 0usize;
    while let Some(mut r) = regions.pop() {
        let len = r.len();
        let roll = below(10);
        if arcs >= max_arcs || roll < 3 || (len == 2 && roll < 8) {
            done.push(r);
            continue;
        }
        if roll == 9 || len == 1 {
            let e = format!("e{arcs}");
            arcs += 1;
            let at = below(len + 1);
            r.insert(at, SideDesc::Arc(e.clone()));
            done.push(vec![SideDesc::Arc(e)]);
            regions.push(r);
            continue;
        }
        let i = below(len);
        let span = 1 + below(len - 1);
        r.rotate_left(i);
        let e = format!("e{arcs}");
        arcs += 1;
        let mut left: Vec<SideDesc> = r[..span].to_vec();
        let mut right: Vec<SideDesc> = r[span..].to_vec();
        if roll == 8 && arcs < max_arcs {
            let f = format!("e{arcs}");
            arcs += 1;
            left.push(SideDesc::Arc(e.clone()));
            right.push(SideDesc::Arc(f.clone()));
            done.push(vec![SideDesc::Arc(e), SideDesc::Arc(f)]);
        } else {
            left.push(SideDesc::Arc(e.clone()));
            right.push(SideDesc::Arc(e));
        }
        regions.push(left);
        regions.push(right);
    }
    let decorations: Vec<Decoration> = done
        .iter()
        .enumerate()
        .map(|(i, p)| Decoration { name: format!("z{i}"), weight: p.len() as i32 - 2 })
        .collect();
    let polys: Vec<PolygonDesc> = done
        .into_iter()
        .enumerate()
        .map(|(i, sides)| PolygonDesc { dec: format!("z{i}"), sides })
        .collect();
    let spec = SurfaceSpec { genus: 0, boundaries: vec![Boundary { name: b, marked: n }], decorations };
    MixedAngulation::build(spec, &polys, &[]).expect("generated dissection is valid")
}

/// `steps` random flips, each forward or backward.
pub fn random_walk(
    a: &MixedAngulation,
    steps: usize,
    below: &mut dyn FnMut(usize) -> usize,
) -> (MixedAngulation, Vec<(usize, Direction)>) {
    let mut cur = a.clone();
    let mut script = Vec::new();
    if cur.arcs.is_empty() {
        return (cur, script);
    }
    for _ in 0..steps {
        let arc = below(cur.arcs.len());
        let d = if below(2) == 0 { Direction::Forward } else { Direction::Backward };
        cur = flip(&cur, arc, d).expect("arc in range").0;
        script.push((arc, d));
    }
    (cur, script)
}
