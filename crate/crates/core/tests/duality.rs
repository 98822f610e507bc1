mod common;

use common::*;
use wdms_core::arc::{dual_sgraph, SGraph};
use wdms_core::duality::{same_internal_structure, sgraph_flip, sgraph_flip_words, words_to_sgraph};
use wdms_core::flip::{backward_flip, forward_flip};
use wdms_core::gen::{random_disc, random_walk};
use wdms_core::surface::MixedAngulation;

fn corpus() -> Vec<MixedAngulation> {
    let mut rng = Lcg(5);
    let mut out = vec![pentagon(), monogon(), annulus(), torus()];
    for i in 0..100 {
        let base = match i % 4 {
            0 => annulus(),
            1 => torus(),
            _ => random_disc(2 + (i % 6) as u32, 9, &mut |k| rng.below(k)),
        };
        out.push(random_walk(&base, 1 + i % 10, &mut |k| rng.below(k)).0);
    }
    out
}

fn show(s: &SGraph) -> String {
    format!("{:?} {:?}", s.edges, s.rotation)
}

#[test]
fn forward_flip_commutes_with_duality() {
    let mut bad = 0;
    for (n, a) in corpus().iter().enumerate() {
        let s = dual_sgraph(a);
        for x in 0..a.arcs.len() {
            let (f, _) = forward_flip(a, x).unwrap();
            let want = dual_sgraph(&f);
            let got = sgraph_flip(&s, x).unwrap();
            if !same_internal_structure(&got, &want) {
                bad += 1;
                if bad < 4 {
                    eprintln!("case {n} arc {x}\n got {}\nwant {}\n src {}", show(&got), show(&want), show(&s));
                }
            }
        }
    }
    assert_eq!(bad, 0);
}

#[test]
fn backward_flip_commutes_with_duality() {
    let mut bad = 0;
    for a in corpus() {
        let s = dual_sgraph(&a);
        for x in 0..a.arcs.len() {
            let (f, _) = backward_flip(&a, x).unwrap();
            let want = dual_sgraph(&f);
            let got = words_to_sgraph(&s, &sgraph_flip_words(&s, x, false).unwrap());
            if !same_internal_structure(&got, &want) {
                bad += 1;
            }
        }
    }
    assert_eq!(bad, 0);
}

#[test]
fn oracle_is_not_vacuous() {
    // without the twists the comparison must fail somewhere
    let mut differs = 0;
    for a in corpus() {
        let s = dual_sgraph(&a);
        for x in 0..a.arcs.len() {
            let (f, _) = forward_flip(&a, x).unwrap();
            let mut lazy = s.clone();
            lazy.edges[x].shift += 1;
            if !same_internal_structure(&lazy, &dual_sgraph(&f)) {
                differs += 1;
            }
        }
    }
    assert!(differs > 50, "{differs}");
}

#[test]
fn pentagon_flip_twists_the_neighbour() {
    let a = pentagon();
    let s = dual_sgraph(&a);
    let a13 = a.arc_id("a13").unwrap();
    let a14 = a.arc_id("a14").unwrap();
    let w = sgraph_flip_words(&s, a14, true).unwrap();
    assert_eq!(w[a13].len(), 2);
    assert_eq!(w[a14].grading, 1);
    let w = sgraph_flip_words(&s, a13, true).unwrap();
    assert_eq!(w[a14].len(), 1);
}

#[test]
fn monogon_dual_flip_only_shifts() {
    let m = monogon();
    let s = dual_sgraph(&m);
    let f = sgraph_flip(&s, 0).unwrap();
    assert_eq!(f.edges[0].shift, 1);
    assert_eq!(f.edges[0].ends, s.edges[0].ends);
    // the dual vertex of the weight -1 decoration is a leaf
    assert_eq!(s.valency(0), 1);
}

#[test]
fn double_flip_and_back_restores_gradings() {
    for a in corpus().into_iter().take(30) {
        let s = dual_sgraph(&a);
        for x in 0..a.arcs.len() {
            let (f1, _) = forward_flip(&a, x).unwrap();
            let (f2, _) = forward_flip(&f1, x).unwrap();
            let (b1, _) = backward_flip(&f2, x).unwrap();
            let (b2, _) = backward_flip(&b1, x).unwrap();
            assert!(same_internal_structure(&s, &dual_sgraph(&b2)));
            assert_eq!(dual_sgraph(&b2).edges[x].shift, s.edges[x].shift);
        }
    }
}

#[test]
fn monogon_trigger_uses_the_squared_twist() {
    use wdms_core::arc::braid_twist;
    use wdms_core::duality::triggered_ends;
    use wdms_core::flip::FlipCase;
    let mut seen = 0;
    for a in corpus() {
        let s = dual_sgraph(&a);
        for x in 0..a.arcs.len() {
            if wdms_core::duality::flip_case(&s, x) != FlipCase::Monogon {
                continue;
            }
            let eta = s.edge_word(x);
            let words = sgraph_flip_words(&s, x, true).unwrap();
            for (y, _) in triggered_ends(&s, x) {
                let b2 = braid_twist(&s, &eta, &s.edge_word(y), 2).unwrap();
                assert_eq!(b2.canonical(&s).path, words[y].canonical(&s).path);
                assert_eq!(b2.canonical(&s).turns, words[y].canonical(&s).turns);
                seen += 1;
            }
        }
    }
    assert!(seen > 5, "{seen}");
}
