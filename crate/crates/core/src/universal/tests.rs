use alloc::vec::Vec;
use core::ops::ControlFlow;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::partial::ball_words;
use super::*;
use crate::ball::{full_aut, BallAut, BallGroup, VertexWord};
use crate::compat::check_d;
use crate::constructions::{delta, gamma, phi, pi, AbelianHom, Transversal};
use crate::permcore::{named, PermGroup};

fn local(f: &PermGroup) -> BallGroup {
    BallGroup::from_local(f).unwrap()
}

fn pi_s3() -> BallGroup {
    let s3 = named::symmetric(3);
    pi(&s3, &AbelianHom::sign(&s3), &[1], 2).unwrap()
}

/// Independent oracle: elements of `Aut(B_{d,n})` all of whose `k`-local
/// actions at depth at most `n-k` lie in `F`.
fn count_by_filter(f: &BallGroup, n: usize) -> usize {
    let (d, k) = (f.degree(), f.radius());
    let vertices: Vec<VertexWord> = (0..=n - k).flat_map(|j| VertexWord::sphere(d, j)).collect();
    full_aut(d, n)
        .unwrap()
        .elements()
        .filter(|a| vertices.iter().all(|v| f.contains(&a.local_action(v, k).unwrap())))
        .count()
}

fn groups() -> Vec<BallGroup> {
    let s3 = named::symmetric(3);
    alloc::vec![
        local(&s3),
        local(&named::alternating(3)),
        local(&PermGroup::trivial(3)),
        gamma(&s3).unwrap(),
        delta(&s3, None, Transversal::LexLeast).unwrap(),
        phi(&s3).unwrap(),
        pi_s3(),
    ]
}

#[test]
fn unique_extensions_for_gamma() {
    let g = gamma(&named::symmetric(3)).unwrap();
    for seed in g.elements() {
        for n in 2..=5 {
            let ext = extend_to_ball(&g, &seed, n, Chooser::Exhaustive, 10).unwrap();
            assert_eq!(ext.len(), 1);
            assert_eq!(ext[0], BallAut::constant(seed.project(1).unwrap().leaf_perm(), n).unwrap());
        }
    }
}

#[test]
fn extensions_of_the_identity_in_phi() {
    let f = phi(&named::symmetric(3)).unwrap();
    let id = BallAut::identity(3, 2).unwrap();
    let ext = extend_to_ball(&f, &id, 3, Chooser::Exhaustive, 1000).unwrap();
    assert_eq!(ext.len(), 64);
    let mut sorted = ext.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 64);
    for g in &ext {
        assert_eq!(g.project(2).unwrap(), id);
        assert!(PartialAut::from_ball_aut(g).is_consistent_with(&f));
    }
    assert!(matches!(extend_to_ball(&f, &id, 3, Chooser::Exhaustive, 10), Err(crate::Error::Capacity { .. })));
}

#[test]
fn trivial_group_has_one_extension() {
    let f = local(&PermGroup::trivial(3));
    let id = BallAut::identity(3, 1).unwrap();
    let ext = extend_to_ball(&f, &id, 5, Chooser::Exhaustive, 10).unwrap();
    assert_eq!(ext, [BallAut::identity(3, 5).unwrap()]);
}

#[test]
fn extension_guards() {
    let s3 = named::symmetric(3);
    let g = gamma(&s3).unwrap();
    let outside = BallAut::identity(3, 1).unwrap();
    assert!(extend_to_ball(&g, &outside, 3, Chooser::Deterministic, 1).is_err());
    let id = BallAut::identity(3, 2).unwrap();
    assert!(extend_to_ball(&g, &id, 1, Chooser::Deterministic, 1).is_err());
    let swap = BallAut::from_word_map(
        3,
        2,
        &VertexWord::sphere(3, 2)
            .into_iter()
            .map(|w| {
                let s = alloc::format!("{w}");
                let img = match s.as_str() {
                    "01" => VertexWord::parse(3, "02").unwrap(),
                    "02" => VertexWord::parse(3, "01").unwrap(),
                    _ => w.clone(),
                };
                (w, img)
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let not_c = BallGroup::generate(3, 2, &[swap.clone()]).unwrap();
    assert!(matches!(extend_to_ball(&not_c, &swap, 3, Chooser::Deterministic, 1), Err(crate::Error::Precondition(_))));
    assert!(matches!(count_restrictions(&not_c, 3, true), Err(crate::Error::Precondition(_))));
    assert!(is_discrete_universal(&not_c).unwrap());
}

#[test]
fn restriction_counts() {
    let s3 = named::symmetric(3);
    let g = gamma(&s3).unwrap();
    for n in 2..=6 {
        assert_eq!(count_restrictions(&g, n, true).unwrap().value(), Some(6));
    }
    let p = phi(&s3).unwrap();
    assert_eq!(count_restrictions(&p, 3, true).unwrap().value(), Some(3072));
    assert_eq!(count_restrictions(&local(&PermGroup::trivial(3)), 5, true).unwrap().value(), Some(1));
    assert!(matches!(count_restrictions(&g, 3, false), Err(crate::Error::Unsupported(_))));
    let big = count_restrictions(&p, 12, true).unwrap();
    assert_eq!(big.value(), None);
    assert_eq!(big.factors(), [(2, 1 + 3 * 2047), (3, 1)]);
    assert_eq!(alloc::format!("{big}"), alloc::format!("2^{} · 3", 1 + 3 * 2047));
}

#[test]
fn counts_agree_with_the_filter_oracle() {
    for f in groups() {
        for n in f.radius()..=3 {
            let formula = count_restrictions(&f, n, true).unwrap().value().unwrap();
            assert_eq!(formula as usize, count_by_filter(&f, n), "order {} n {n}", f.order());
            assert_eq!(count_restrictions_exhaustive(&f, n, 1 << 20).unwrap(), formula);
        }
    }
}

#[test]
fn exhaustive_counts_at_radius_four() {
    let f = pi_s3();
    let z = crate::compat::find_involutive_cocycles(&f).unwrap().remove(0);
    let mut all = groups();
    all.push(crate::constructions::phi_power(&named::alternating(3), 3).unwrap());
    all.push(crate::constructions::gamma_k(&f, &z).unwrap());
    let mut tested = 0;
    for f in &all {
        let formula = count_restrictions(f, 4, true).unwrap().value().unwrap();
        if formula > 1 << 20 {
            continue;
        }
        assert_eq!(count_restrictions_exhaustive(f, 4, 1 << 20).unwrap(), formula);
        tested += 1;
    }
    assert!(tested >= 6);
}

#[test]
fn random_extensions_are_consistent() {
    let mut rng = StdRng::seed_from_u64(7);
    for f in groups() {
        for _ in 0..5 {
            let seed = f.element(rng.gen_range(0..f.order()));
            let g = extend_with(&f, &seed, 4, |c| rng.gen_range(0..c)).unwrap();
            assert_eq!(g.project(f.radius()).unwrap(), seed);
            let p = PartialAut::from_ball_aut(&g);
            assert!(p.is_consistent_with(&f));
            assert_eq!(p.radius(), Some(4));
            assert_eq!(p.to_ball_aut(4).unwrap(), g);
        }
    }
}

#[test]
fn streaming_stops_on_break() {
    let f = phi(&named::symmetric(3)).unwrap();
    let mut seen = 0;
    for_each_extension(&f, &BallAut::identity(3, 2).unwrap(), 4, |_| {
        seen += 1;
        if seen == 5 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap();
    assert_eq!(seen, 5);
}

#[test]
fn label_respecting_maps() {
    let inv = PartialAut::label_respecting(3, 4, &[1]).unwrap();
    assert_eq!(inv.apply(&[]), Some(alloc::vec![1]));
    assert_eq!(inv.apply(&[1]), Some(alloc::vec![]));
    let id = BallAut::identity(3, 2).unwrap();
    for v in ball_words(3, 2) {
        let v: Vec<usize> = v.iter().map(|&x| x as usize).collect();
        assert_eq!(inv.local_action(&v, 2), Some(id.clone()));
    }
    let back = inv.compose(&inv);
    assert_eq!(back.restrict(3), PartialAut::from_ball_aut(&BallAut::identity(3, 3).unwrap()));
    let t = PartialAut::label_respecting(3, 4, &[0, 1]).unwrap();
    assert_eq!(t.apply(&[0]), Some(alloc::vec![0, 1, 0]));
    assert!(PartialAut::label_respecting(3, 2, &[0, 0]).is_err());
    let f = gamma(&named::symmetric(3)).unwrap();
    assert!(t.is_consistent_with(&f));
}

#[test]
fn cocycle_identity_on_random_composites() {
    let mut rng = StdRng::seed_from_u64(11);
    let fs = groups();
    let mut checked = 0;
    for round in 0..1000 {
        let f = &fs[round % fs.len()];
        let n = 4;
        let k = 1 + round % 2;
        let pick = |rng: &mut StdRng| -> PartialAut {
            let seed = f.element(rng.gen_range(0..f.order()));
            let g = PartialAut::from_ball_aut(&extend_with(f, &seed, n, |c| rng.gen_range(0..c)).unwrap());
            if rng.gen_bool(0.5) {
                let target: Vec<usize> = match rng.gen_range(0..3) {
                    0 => alloc::vec![rng.gen_range(0..3)],
                    1 => alloc::vec![0, 1],
                    _ => alloc::vec![],
                };
                PartialAut::label_respecting(3, n, &target).unwrap().compose(&g)
            } else {
                g
            }
        };
        let g = pick(&mut rng);
        let h = pick(&mut rng);
        let gh = g.compose(&h);
        for v in ball_words(3, n - k) {
            let v: Vec<usize> = v.iter().map(|&x| x as usize).collect();
            let Some(hv) = h.apply(&v) else { continue };
            let (Some(a), Some(b), Some(c)) = (gh.local_action(&v, k), g.local_action(&hv, k), h.local_action(&v, k)) else {
                continue;
            };
            assert_eq!(a, b.compose(&c));
            checked += 1;
        }
    }
    assert!(checked >= 1000);
}

#[test]
fn discreteness() {
    let s3 = named::symmetric(3);
    assert!(is_discrete_universal(&gamma(&s3).unwrap()).unwrap());
    assert!(!is_discrete_universal(&phi(&s3).unwrap()).unwrap());
    assert!(!is_discrete_universal(&pi_s3()).unwrap());
    for f in groups() {
        let discrete = is_discrete_universal(&f).unwrap();
        assert_eq!(discrete, check_d(&f).holds);
        let counts: Vec<u64> = (f.radius()..f.radius() + 4).map(|n| count_restrictions(&f, n, true).unwrap().value().unwrap()).collect();
        assert_eq!(discrete, counts.windows(2).all(|w| w[0] == w[1]), "order {}", f.order());
    }
}

#[test]
fn local_actions_of_the_closure() {
    let s3 = named::symmetric(3);
    let l = local(&s3);
    assert_eq!(pk_local_action(&l, 2).unwrap(), phi(&s3).unwrap());
    assert_eq!(pk_local_action(&l, 1).unwrap(), l);
    let g = gamma(&s3).unwrap();
    assert_eq!(pk_local_action(&g, 2).unwrap(), g);
    assert_eq!(pk_local_action(&g, 1).unwrap(), l);
    let g3 = pk_local_action(&g, 3).unwrap();
    assert_eq!(g3.order(), 6);
    assert_eq!(g3, crate::constructions::gamma_power(&s3, 3).unwrap());
    for f in groups() {
        let direct = pk_local_action(&f, 3).unwrap();
        let stepped = pk_local_action(&pk_local_action(&f, 2).unwrap(), 3).unwrap();
        assert_eq!(direct, stepped);
        assert_eq!(direct.order() as u64, count_restrictions(&f, 3, true).unwrap().value().unwrap());
    }
}
