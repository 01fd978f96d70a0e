use alloc::vec::Vec;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::words::step;
use super::*;
use crate::permcore::{named, Perm};

fn random_element(d: usize, k: usize, rng: &mut StdRng) -> BallAut {
    let gens = full_aut_generators(d, k).unwrap();
    let mut a = BallAut::identity(d, k).unwrap();
    for _ in 0..40 {
        a = a.compose(&gens[rng.gen_range(0..gens.len())]);
    }
    a
}

/// Composition of two word maps, looked up pair by pair.
fn compose_word_maps(a: &BallAut, b: &BallAut) -> Vec<(VertexWord, VertexWord)> {
    let am = a.word_map();
    b.word_map()
        .into_iter()
        .map(|(x, y)| {
            let z = am.iter().find(|(s, _)| *s == y).unwrap().1.clone();
            (x, z)
        })
        .collect()
}

#[test]
fn full_aut_orders() {
    assert_eq!(full_aut(3, 1).unwrap().order(), 6);
    assert_eq!(full_aut(3, 2).unwrap().order(), 48);
    assert_eq!(full_aut(3, 3).unwrap().order(), 3072);
    assert_eq!(full_aut_order(3, 3), Some(3072));
    assert_eq!(full_aut(4, 2).unwrap().order() as u128, full_aut_order(4, 2).unwrap());
    assert!(check_shape(2, 3).is_err());
}

#[test]
fn recursive_product_matches_word_maps() {
    let mut rng = StdRng::seed_from_u64(7);
    for (d, k) in [(3, 2), (3, 3), (4, 2), (3, 4)] {
        for _ in 0..25 {
            let a = random_element(d, k, &mut rng);
            let b = random_element(d, k, &mut rng);
            let ab = a.multiply(&b).unwrap();
            assert_eq!(ab, a.compose(&b));
            assert_eq!(ab.word_map(), compose_word_maps(&a, &b));
            assert_eq!(a.multiply(&BallAut::identity(d, k).unwrap()).unwrap(), a);
            let inv = ab.inverse();
            assert!(ab.multiply(&inv).unwrap().is_identity());
            assert_eq!(inv, b.inverse().multiply(&a.inverse()).unwrap());
        }
    }
}

#[test]
fn shape_mismatch() {
    let a = BallAut::identity(3, 2).unwrap();
    let b = BallAut::identity(3, 3).unwrap();
    assert!(matches!(a.multiply(&b), Err(crate::Error::Dimension(_))));
}

#[test]
fn constant_lifts_multiply_diagonally() {
    let s3 = named::symmetric(3);
    for a in s3.elements() {
        for b in s3.elements() {
            let ga = BallAut::constant(a, 2).unwrap();
            let gb = BallAut::constant(b, 2).unwrap();
            let (r, c) = ga.split();
            assert_eq!(r.level1(), *a);
            assert!(c.iter().all(|x| x.level1() == *a));
            assert_eq!(ga.multiply(&gb).unwrap(), BallAut::constant(&a.compose(b), 2).unwrap());
        }
    }
    let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
    let g = BallAut::from_local(&t).unwrap();
    assert_eq!(g.inverse(), g);
}

#[test]
fn split_assemble_round_trip() {
    let mut rng = StdRng::seed_from_u64(11);
    for (d, k) in [(3, 2), (3, 3), (4, 3)] {
        for _ in 0..10 {
            let a = random_element(d, k, &mut rng);
            let (r, c) = a.split();
            assert_eq!(BallAut::assemble(&r, &c).unwrap(), a);
            for (w, x) in c.iter().enumerate() {
                assert_eq!(x.level1().apply(w), r.level1().apply(w));
            }
        }
    }
}

#[test]
fn assemble_rejects_inconsistent_data() {
    let id = Perm::identity(3);
    let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
    let root = BallAut::from_local(&id).unwrap();
    let bad = alloc::vec![BallAut::from_local(&t).unwrap(), root.clone(), root.clone()];
    assert!(matches!(BallAut::assemble(&root, &bad), Err(crate::Error::Inconsistent(_))));
    // Children that agree at level 1 but not on the overlap with the root.
    let r2 = BallAut::identity(3, 2).unwrap();
    let twist = BallAut::constant(&Perm::from_cycles(3, &[&[1, 2]]).unwrap(), 2).unwrap();
    let kids = alloc::vec![twist, r2.clone(), r2.clone()];
    assert!(BallAut::assemble(&r2, &kids).is_err());
}

#[test]
fn project_is_a_homomorphism() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let a = random_element(3, 3, &mut rng);
        let b = random_element(3, 3, &mut rng);
        for m in 1..=3 {
            assert_eq!(a.compose(&b).project(m).unwrap(), a.project(m).unwrap().compose(&b.project(m).unwrap()));
        }
        assert_eq!(a.project(3).unwrap(), a);
        assert!(a.project(0).is_err() && a.project(4).is_err());
    }
}

#[test]
fn local_action_of_constant_lift() {
    let a = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let g = BallAut::constant(&a, 3).unwrap();
    for len in 0..=2 {
        for v in VertexWord::sphere(3, len) {
            assert_eq!(g.local_action(&v, 1).unwrap().level1(), a);
        }
    }
    assert!(g.local_action(&VertexWord::parse(3, "01").unwrap(), 2).is_err());
}

#[test]
fn local_actions_are_compatible() {
    let mut rng = StdRng::seed_from_u64(5);
    for (d, k) in [(3, 3), (3, 4), (4, 3)] {
        let a = random_element(d, k, &mut rng);
        assert_eq!(a.local_action(&VertexWord::center(), k - 1).unwrap(), a.project(k - 1).unwrap());
        for w in 0..d {
            let v = VertexWord::new(d, &[w]).unwrap();
            assert_eq!(a.local_action(&v, k - 1).unwrap(), a.pr(w).unwrap());
        }
        for len in 0..k - 1 {
            for v in VertexWord::sphere(d, len) {
                for m in 1..k - len {
                    let big = a.local_action(&v, m + 1).unwrap();
                    for w in 0..d {
                        let mut u = v.bytes().to_vec();
                        step(&mut u, w as u8);
                        if u.len() + m > k {
                            continue;
                        }
                        let lhs = a.local_action(&VertexWord::from_bytes(u), m).unwrap();
                        assert_eq!(lhs, big.pr(w).unwrap().project(m).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn prefixes_are_preserved() {
    let mut rng = StdRng::seed_from_u64(9);
    let a = random_element(3, 3, &mut rng);
    for (x, y) in a.word_map() {
        for j in 0..=3 {
            let p = VertexWord::new(3, &x.letters()[..j]).unwrap();
            assert_eq!(a.apply_word(&p).unwrap().letters(), y.letters()[..j]);
        }
    }
    let swap = Perm::from_images(&[1, 0, 2, 3, 4, 5]).unwrap();
    assert!(BallAut::from_leaf_perm(3, 2, swap).is_ok());
    let bad = Perm::from_images(&[2, 1, 0, 3, 4, 5]).unwrap();
    assert!(BallAut::from_leaf_perm(3, 2, bad).is_err());
}

#[test]
fn word_map_round_trip() {
    let mut rng = StdRng::seed_from_u64(1);
    let a = random_element(4, 3, &mut rng);
    assert_eq!(BallAut::from_word_map(4, 3, &a.word_map()).unwrap(), a);
}

#[test]
fn sphere_actions() {
    let gamma = BallGroup::generate(3, 2, &named::symmetric(3).elements().iter().map(|a| BallAut::constant(a, 2).unwrap()).collect::<Vec<_>>()).unwrap();
    assert_eq!(gamma.order(), 6);
    assert!(sphere_action(&gamma).is_transitive());
    let triv = BallGroup::trivial(3, 2).unwrap();
    assert_eq!(sphere_action(&triv).orbits().len(), 6);
    assert_eq!(gamma.project(1).unwrap().order(), 6);
    assert_eq!(gamma.level1(), named::symmetric(3));
}
