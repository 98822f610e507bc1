mod common;

use common::*;
use wdms_core::arc::{dual_sgraph, smooth, ClosedArcWord, HalfEdge, SGraph, WordEnd};
use wdms_core::collapse::{collapse, select_by_name, select_subsurface, Collapsed, SelectionError};
use wdms_core::gen::{random_disc, random_walk};
use wdms_core::surface::MixedAngulation;

fn names(a: &MixedAngulation) -> Vec<(String, i32)> {
    let mut v: Vec<_> = a.spec.decorations.iter().map(|d| (d.name.clone(), d.weight)).collect();
    v.sort();
    v
}

#[test]
fn annulus_interior_collapses_to_a_simple_pole() {
    let a = annulus_one();
    let sel = select_by_name(&a, &["in"]).unwrap();
    assert_eq!(sel.components.len(), 1);
    assert_eq!(sel.cycles.len(), 1);
    assert_eq!(sel.enclosed, vec![1]);
    assert_eq!(sel.components[0].genus, 0);
    let ctx = collapse(&a, &sel).unwrap();
    let b = &ctx.collapsed;
    assert_eq!(b.spec.boundaries.len(), 1);
    assert_eq!(b.spec.marked_total(), 1);
    assert_eq!(b.spec.weight_total(), -1);
    assert_eq!(names(b), vec![("c0".into(), -1), ("out".into(), 0)]);
    assert!(b.weight_formula_check());
}

#[test]
fn selection_errors() {
    let p = pentagon();
    assert_eq!(select_by_name(&p, &["z2"]).unwrap_err(), SelectionError::DanglingBoundary("b".into()));
    assert_eq!(
        select_by_name(&p, &["z1", "z2", "z3"]).unwrap_err(),
        SelectionError::EmptySelection { complement: true }
    );
    assert_eq!(select_subsurface(&p, &[]).unwrap_err(), SelectionError::EmptySelection { complement: false });
    assert!(matches!(select_by_name(&p, &["nope"]), Err(SelectionError::UnknownDecoration(_))));
}

#[test]
fn monogon_selection_keeps_weight_minus_one() {
    let a = monogon();
    let ctx = collapse(&a, &select_by_name(&a, &["z0"]).unwrap()).unwrap();
    assert_eq!(names(&ctx.collapsed), vec![("c0".into(), -1), ("z1".into(), 1)]);
}

#[test]
fn octagon_quad() {
    let a = octagon();
    let ctx = collapse(&a, &select_by_name(&a, &["t1", "t2"]).unwrap()).unwrap();
    assert_eq!(ctx.collapsed.polygons.len(), 5);
    assert_eq!(ctx.collapsed.spec.decoration_index("c0").map(|d| ctx.collapsed.spec.decorations[d].weight), Some(2));
    assert_eq!(ctx.arc_map[a.arc_id("d04").unwrap()], None);
    assert_eq!(ctx.selection.components[0].marked, 4);
}

#[test]
fn collapse_conserves_the_weight_formula() {
    let mut rng = Lcg(99);
    let mut collapsed = 0;
    for i in 0..400 {
        let a0 = if i % 4 == 0 { handle_loop("gt r k r k o") } else { random_disc(4 + (i % 6) as u32, 10, &mut |k| rng.below(k)) };
        let a = random_walk(&a0, 6, &mut |k| rng.below(k)).0;
        let n = a.spec.decorations.len();
        let decs: Vec<usize> = (0..n).filter(|_| rng.below(3) == 0).collect();
        let Ok(sel) = select_subsurface(&a, &decs) else { continue };
        let ctx = collapse(&a, &sel).unwrap();
        assert!(ctx.collapsed.weight_formula_check());
        for (j, cyc) in sel.cycles.iter().enumerate() {
            assert_eq!(ctx.collapsed.spec.decorations[ctx.cycle_dec[j]].weight, cyc.len() as i32 - 2);
        }
        ctx.collapsed.check().unwrap();
        collapsed += 1;
    }
    assert!(collapsed > 40, "{collapsed}");
}

fn word_names(s: &SGraph, w: &ClosedArcWord) -> (String, Vec<(String, bool)>, Vec<i64>) {
    (
        s.vertices[w.start].clone(),
        w.path.iter().map(|&(e, f)| (s.edges[e].name.clone(), f)).collect(),
        w.turns.clone(),
    )
}

#[test]
fn collapse_arc_identity_outside_and_vanishing_inside() {
    let a = octagon();
    let ctx = collapse(&a, &select_by_name(&a, &["t1", "t2"]).unwrap()).unwrap();
    let s = dual_sgraph(&a);
    let t = dual_sgraph(&ctx.collapsed);
    let d = s.edge_word(s.edge_id("d04").unwrap());
    assert_eq!(ctx.collapse_arc(&d).unwrap(), Collapsed::Vanished);
    for name in ["q02", "q24", "q46", "q60"] {
        let w = s.edge_word(s.edge_id(name).unwrap());
        let Collapsed::Word(img) = ctx.collapse_arc(&w).unwrap() else { panic!() };
        let direct = t.edge_word(t.edge_id(name).unwrap());
        assert_eq!(img.canonical(&t).path.len(), 1);
        assert_eq!(word_names(&t, &img.canonical(&t)).1, word_names(&t, &direct.canonical(&t)).1);
    }
}

fn corpus(i: usize, rng: &mut Lcg) -> MixedAngulation {
    match i % 6 {
        0 => octagon(),
        1 => handle_loop("gt r k r k o"),
        2 => holed_loop(true),
        3 => annulus_one(),
        _ => random_disc(5 + (i % 5) as u32, 12, &mut |k| rng.below(k)),
    }
}

/// Random reduced word: a walk with random signed turns, windings included.
pub fn random_word(s: &SGraph, len: usize, rng: &mut Lcg) -> Option<ClosedArcWord> {
    let edges: Vec<usize> = (0..s.edges.len()).collect();
    if edges.is_empty() {
        return None;
    }
    let e0 = edges[rng.below(edges.len())];
    let fwd = rng.below(2) == 0;
    let mut w = ClosedArcWord { start: s.edges[e0].ends[if fwd { 0 } else { 1 }], path: vec![(e0, fwd)], turns: vec![], grading: rng.below(5) as i64 - 2 };
    for _ in 1..len {
        let &(e, f) = w.path.last().unwrap();
        let v = s.edges[e].ends[if f { 1 } else { 0 }];
        let n = s.valency(v) as i64;
        let here = HalfEdge::End(e, if f { 1 } else { 0 });
        let p = s.position(v, here).unwrap() as i64;
        let mut tries = 0;
        loop {
            tries += 1;
            if tries > 20 {
                return Some(w);
            }
            let t = rng.below((4 * n + 1) as usize) as i64 - 2 * n;
            if t == 0 {
                continue;
            }
            match s.rotation[v][(p + t).rem_euclid(n) as usize] {
                HalfEdge::End(e2, end) => {
                    w.path.push((e2, end == 0));
                    w.turns.push(t);
                    break;
                }
                HalfEdge::Ext(_) => continue,
            }
        }
    }
    Some(w)
}

#[test]
fn collapse_commutes_with_reversal() {
    let mut rng = Lcg(5);
    let mut checked = 0;
    for i in 0..600 {
        let a0 = corpus(i, &mut rng);
        let a = random_walk(&a0, 4, &mut |k| rng.below(k)).0;
        let decs: Vec<usize> = (0..a.spec.decorations.len()).filter(|_| rng.below(2) == 0).collect();
        let Ok(sel) = select_subsurface(&a, &decs) else { continue };
        let ctx = collapse(&a, &sel).unwrap();
        let s = dual_sgraph(&a);
        let t = dual_sgraph(&ctx.collapsed);
        for _ in 0..10 {
            let Some(mut w) = random_word(&s, 1 + rng.below(6), &mut rng) else { continue };
            w.reduce();
            if w.is_empty() {
                continue;
            }
            let x = ctx.collapse_arc(&w);
            let y = ctx.collapse_arc(&w.reversed(&s));
            match (x, y) {
                (Ok(Collapsed::Word(x)), Ok(Collapsed::Word(y))) => {
                    let xr = x.reversed(&t);
                    assert_eq!((xr.start, &xr.path, &xr.turns), (y.start, &y.path, &y.turns));
                    checked += 1;
                }
                (Ok(Collapsed::Vanished), Ok(Collapsed::Vanished)) => {}
                (Err(x), Err(y)) if x == y => {}
                (x, y) => panic!("{x:?} vs {y:?}"),
            }
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn smoothing_with_an_interior_arc_does_not_change_the_image() {
    // Pairs differing by a smoothing with an arc dual to an interior edge.
    let mut rng = Lcg(17);
    let mut pairs = 0;
    for i in 0..2000 {
        let a0 = corpus(i, &mut rng);
        let a = random_walk(&a0, 3, &mut |k| rng.below(k)).0;
        let decs: Vec<usize> = (0..a.spec.decorations.len()).filter(|_| rng.below(2) == 0).collect();
        let Ok(sel) = select_subsurface(&a, &decs) else { continue };
        if sel.interior.is_empty() {
            continue;
        }
        let ctx = collapse(&a, &sel).unwrap();
        let s = dual_sgraph(&a);
        for _ in 0..10 {
            let Some(mut alpha) = random_word(&s, 1 + rng.below(5), &mut rng) else { continue };
            alpha.reduce();
            if alpha.is_empty() || alpha.path.iter().all(|&(e, _)| sel.is_interior(e)) {
                continue;
            }
            let z = alpha.vertex(&s, WordEnd::End);
            let Some(&eta_e) = sel.interior.iter().find(|&&e| s.edges[e].ends.contains(&z)) else { continue };
            let mut eta = s.edge_word(eta_e);
            if eta.start != z {
                eta = eta.reversed(&s);
            }
            let Ok(beta) = smooth(&s, &alpha, &eta, z) else { continue };
            // words crossing a handle or hole of the selection have no image
            let (Ok(x), Ok(y)) = (ctx.collapse_arc(&alpha), ctx.collapse_arc(&beta)) else { continue };
            assert_eq!(x, y, "{} / {}", alpha.render(&s), beta.render(&s));
            pairs += 1;
        }
    }
    assert!(pairs >= 20, "{pairs}");
}
