mod common;

use std::collections::BTreeSet;

use common::*;
use wdms_core::flip::{backward_flip, forward_flip, is_monogon_arc, Direction, FlipCase};
use wdms_core::gen::{random_disc, random_walk};
use wdms_core::surface::{MixedAngulation, Side};

/// Diagonals of a disc angulation as unordered marked-point pairs.
fn diagonals(a: &MixedAngulation) -> BTreeSet<(usize, usize)> {
    let mp = a.marked_points();
    (0..a.arcs.len())
        .map(|x| {
            let (u, v) = a.arc_endpoints(x, &mp);
            (u.min(v), u.max(v))
        })
        .collect()
}

/// Flip in a triangulated convex n-gon by plain geometry.
fn oracle_flip(n: usize, t: &BTreeSet<(usize, usize)>, d: (usize, usize)) -> BTreeSet<(usize, usize)> {
    let edge = |u: usize, v: usize| {
        let (u, v) = (u.min(v), u.max(v));
        v - u == 1 || (u == 0 && v == n - 1) || t.contains(&(u, v))
    };
    let apex: Vec<usize> = (0..n).filter(|&k| k != d.0 && k != d.1 && edge(d.0, k) && edge(k, d.1)).collect();
    assert_eq!(apex.len(), 2);
    let mut out = t.clone();
    out.remove(&d);
    out.insert((apex[0], apex[1]));
    out
}

#[test]
fn pentagon_flips_match_geometry() {
    let a = pentagon();
    let t = diagonals(&a);
    for x in 0..a.arcs.len() {
        let mp = a.marked_points();
        let (u, v) = a.arc_endpoints(x, &mp);
        let want = oracle_flip(5, &t, (u.min(v), u.max(v)));
        let (f, rec) = forward_flip(&a, x).unwrap();
        let (b, _) = backward_flip(&a, x).unwrap();
        assert_eq!(rec.case, FlipCase::Usual);
        assert_eq!(diagonals(&f), want);
        assert_eq!(diagonals(&b), want);
        f.check().unwrap();
    }
}

#[test]
fn forward_flip_moves_endpoints_counterclockwise() {
    let a = pentagon();
    let a13 = a.arc_id("a13").unwrap();
    let (f, _) = forward_flip(&a, a13).unwrap();
    let mp = f.marked_points();
    let (u, v) = f.arc_endpoints(a13, &mp);
    // vertices 1..5 are marked points 0..4; 13 becomes 24
    assert_eq!((u.min(v), u.max(v)), (1, 3));
}

#[test]
fn monogon_arc_detection() {
    let m = monogon();
    assert!(is_monogon_arc(&m, 0).unwrap());
    let p = pentagon();
    assert!(!is_monogon_arc(&p, 0).unwrap());
    // loops around the inner boundary of the annulus are not monogons
    let an = annulus();
    for x in 0..an.arcs.len() {
        let (f, _) = forward_flip(&an, x).unwrap();
        for y in 0..f.arcs.len() {
            let mp = f.marked_points();
            let (u, v) = f.arc_endpoints(y, &mp);
            if u == v {
                assert!(!is_monogon_arc(&f, y).unwrap());
            }
        }
    }
}

#[test]
fn monogon_flip_moves_base_point() {
    let m = monogon();
    let mp = m.marked_points();
    assert_eq!(m.arc_endpoints(0, &mp), (0, 0));
    let (f, rec) = forward_flip(&m, 0).unwrap();
    assert_eq!(rec.case, FlipCase::Monogon);
    let mp = f.marked_points();
    assert_eq!(f.arc_endpoints(0, &mp), (1, 1));
    assert_eq!(f.polygons[0].sides, m.polygons[0].sides);
    let (b, _) = backward_flip(&m, 0).unwrap();
    let mp = b.marked_points();
    assert_eq!(b.arc_endpoints(0, &mp), (1, 1));
    assert_eq!(backward_flip(&f, 0).unwrap().0, m);
}

fn corpus() -> Vec<MixedAngulation> {
    let mut rng = Lcg(11);
    let mut out = vec![pentagon(), monogon(), annulus(), torus()];
    for i in 0..120 {
        let base = match i % 4 {
            0 => annulus(),
            1 => torus(),
            _ => random_disc(2 + (i % 7) as u32, 10, &mut |k| rng.below(k)),
        };
        out.push(random_walk(&base, 6, &mut |k| rng.below(k)).0);
    }
    out
}

#[test]
fn flips_are_inverse_and_valid() {
    for a in corpus() {
        for x in 0..a.arcs.len() {
            for d in [Direction::Forward, Direction::Backward] {
                let (f, rec) = wdms_core::flip::flip(&a, x, d).unwrap();
                f.check().unwrap();
                assert!(f.weight_formula_check());
                assert_eq!(f.arcs[x].shift, a.arcs[x].shift + d.sign());
                assert_eq!(rec.shift, d.sign());
                let (back, _) = wdms_core::flip::flip(&f, x, d.inverse()).unwrap();
                assert_eq!(back.normalized(), a.normalized());
            }
        }
    }
}

#[test]
fn flips_are_local() {
    for a in corpus() {
        let occ = a.occurrences();
        for x in 0..a.arcs.len() {
            let (f, _) = forward_flip(&a, x).unwrap();
            for p in 0..a.polygons.len() {
                if p != occ[x][0].0 && p != occ[x][1].0 {
                    assert_eq!(a.polygons[p], f.polygons[p]);
                }
            }
        }
    }
}

#[test]
fn self_adjacent_flip_is_order_independent() {
    // torus pentagon: both occurrences of p lie on the same polygon
    let t = torus();
    let (f, _) = forward_flip(&t, 0).unwrap();
    f.check().unwrap();
    let sides = &f.polygons[0].sides;
    assert!(sides.contains(&Side::Bseg(0, 0)));
}

#[test]
fn loop_around_a_nested_disc_flips_by_the_usual_rule() {
    // e0 encloses the bigon z0, which itself holds the monogon z1
    let a = mk(
        0,
        &[("b", 4)],
        &[("z0", 0, "e0 e2"), ("z1", -1, "e2"), ("z2", 3, "e0 e1 b.0 b.1 b.2"), ("z3", 0, "e1 b.3")],
    );
    let e0 = a.arc_id("e0").unwrap();
    assert!(wdms_core::flip::bounded_disc(&a, e0).is_some());
    assert!(!is_monogon_arc(&a, e0).unwrap());
    let (f, rec) = forward_flip(&a, e0).unwrap();
    assert_eq!(rec.case, FlipCase::Usual);
    assert_eq!(backward_flip(&f, e0).unwrap().0.normalized(), a.normalized());
}
