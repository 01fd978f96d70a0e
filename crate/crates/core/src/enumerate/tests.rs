use alloc::string::String;
use alloc::vec::Vec;

use super::*;
use crate::ball::full_aut;
use crate::compat::{check_c_elements, CompatIndex};
use crate::constructions::{gamma_k, phi, pi, sigma, AbelianHom};
use crate::constructions::parse_perm;
use crate::permcore::{named, IndexGroup, PermGroup};

fn descriptions(rows: &[CensusRow]) -> Vec<String> {
    rows.iter().map(|r| r.description.clone()).collect()
}

/// Independent oracle: closes every pair of elements of `Aut(B_{3,2})` to a
/// subgroup, then closes pairs with a third element, and keeps the (C)-groups
/// with transitive projection. Every subgroup of an order-48 group needs at
/// most three generators here since it is a subgroup of `S_2 ≀ S_3`.
fn oracle_c_orders() -> Vec<usize> {
    let amb = full_aut(3, 2).unwrap();
    let els: Vec<BallAut> = amb.elements().collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut groups: Vec<BallGroup> = Vec::new();
    let mut add = |g: BallGroup, groups: &mut Vec<BallGroup>| {
        let key: Vec<usize> = g.elements().map(|x| amb.index_of(&x).unwrap()).collect();
        if found.insert(key) {
            groups.push(g);
        }
    };
    for a in &els {
        for b in &els {
            add(BallGroup::generate(3, 2, &[a.clone(), b.clone()]).unwrap(), &mut groups);
        }
    }
    let pairs = groups.clone();
    for g in &pairs {
        for c in &els {
            let mut gens = g.generators();
            gens.push(c.clone());
            add(BallGroup::generate(3, 2, &gens).unwrap(), &mut groups);
        }
    }
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut orders = Vec::new();
    for g in groups {
        if !g.level1().is_transitive() || !check_c(&g).holds {
            continue;
        }
        if classes.insert(conjugacy_key(&amb, &g)) {
            orders.push(g.order());
        }
    }
    orders.sort_unstable();
    orders
}

#[test]
fn degree_three_radius_two_census() {
    let rows = census_c_classes(3, 2).unwrap();
    assert_eq!(rows.iter().map(|r| r.order).collect::<Vec<_>>(), [3, 6, 12, 24, 24, 48]);
    assert_eq!(rows.iter().map(|r| r.has_d).collect::<Vec<_>>(), [true, true, true, false, false, false]);
    assert_eq!(rows.iter().map(|r| r.has_icc).collect::<Vec<_>>(), [true, true, true, false, true, false]);
    assert_eq!(
        descriptions(&rows),
        ["Φ(A3)", "Γ(S3)", "Δ(S3)", "Π(S3,sgn,{0,1})", "Π(S3,sgn,{1})", "Φ(S3)"]
    );
    assert_eq!(rows.iter().map(|r| r.projection.as_str()).collect::<Vec<_>>(), ["A3", "S3", "S3", "S3", "S3", "S3"]);
    for r in &rows {
        assert!(r.has_c && r.k == 2);
        assert!(!r.has_d || r.has_icc);
    }
    assert_eq!(oracle_c_orders(), [3, 6, 12, 24, 24, 48]);
}

#[test]
fn small_censuses_and_guards() {
    let rows = census_c_classes(3, 1).unwrap();
    assert_eq!(descriptions(&rows), ["A3", "S3"]);
    let rows = census_c_classes(4, 1).unwrap();
    assert_eq!(rows.iter().map(|r| r.order).collect::<Vec<_>>(), [4, 4, 8, 12, 24]);
    assert!(matches!(census_c_classes(3, 3), Err(Error::Capacity { .. })));
    assert!(census_c_classes(1, 2).is_err());
}

#[test]
fn cd_lifts_over_the_radius_two_census() {
    let base = census_c_classes(3, 2).unwrap();
    let report = census_cd_lifts(&base, true).unwrap();
    assert!(report.warnings.is_empty(), "{:?}", report.warnings);
    let fresh: Vec<&CensusRow> = report.rows.iter().filter(|r| !r.gamma_image).collect();
    assert_eq!(fresh.iter().map(|r| r.order).collect::<Vec<_>>(), [24, 48]);
    assert_eq!(
        fresh.iter().map(|r| r.description.as_str()).collect::<Vec<_>>(),
        ["Γ_2(Π(S3,sgn,{1}))", "Σ_2(Π(S3,sgn,{1}),K_2)"]
    );
    let flagged: Vec<&CensusRow> = report.rows.iter().filter(|r| r.gamma_image).collect();
    assert_eq!(flagged.iter().map(|r| r.order).collect::<Vec<_>>(), [3, 6, 12]);
    for r in &report.rows {
        assert_eq!(r.k, 3);
        assert!(r.has_c && r.has_d && r.has_icc);
        assert!(check_c(&r.group).holds && check_d(&r.group).holds);
        let base_row = base.iter().find(|b| b.description == r.projection).unwrap();
        assert_eq!(r.group.project(2).unwrap(), base_row.group);
    }
}

#[test]
fn cd_lifts_over_single_rows() {
    let base = census_c_classes(3, 2).unwrap();
    let g = base.iter().find(|r| r.description == "Γ(S3)").unwrap().clone();
    let report = census_cd_lifts(&[g], true).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].order, 6);
    assert!(report.rows[0].gamma_image);
    assert_eq!(report.rows[0].description, "Γ_2(Γ(S3))");
    let empty = census_cd_lifts(&[], true).unwrap();
    assert!(empty.rows.is_empty() && empty.warnings.is_empty());
    let partial = census_cd_lifts(&[], false).unwrap();
    assert_eq!(partial.warnings.len(), 1);
    // Rows without a cocycle contribute nothing.
    let no_icc: Vec<CensusRow> = base.iter().filter(|r| !r.has_icc).cloned().collect();
    assert!(census_cd_lifts(&no_icc, true).unwrap().rows.is_empty());
}

#[test]
fn rows_match_their_constructions() {
    let s3 = named::symmetric(3);
    let base = census_c_classes(3, 2).unwrap();
    let pi1 = pi(&s3, &AbelianHom::sign(&s3), &[1], 2).unwrap();
    let amb3 = full_aut(3, 3).unwrap();
    let report = census_cd_lifts(&base, true).unwrap();
    let z = find_involutive_cocycles_with_limit(&pi1, 1).unwrap().remove(0);
    let g2 = gamma_k(&pi1, &z).unwrap();
    let s2 = sigma(&pi1, &z, &[crate::constructions::diagonal_swap(3).unwrap()]).unwrap();
    for (name, g) in [("Γ_2(Π(S3,sgn,{1}))", g2), ("Σ_2(Π(S3,sgn,{1}),K_2)", s2)] {
        let row = report.rows.iter().find(|r| r.description == name).unwrap();
        assert_eq!(conjugacy_key(&amb3, &row.group), conjugacy_key(&amb3, &g));
    }
    let amb2 = full_aut(3, 2).unwrap();
    assert_eq!(conjugacy_key(&amb2, &base[5].group), conjugacy_key(&amb2, &phi(&s3).unwrap()));
}

#[test]
fn s3_table_is_stable() {
    let a = s3_table().unwrap();
    let b = s3_table().unwrap();
    assert_eq!(a.len(), 8);
    let text = format_table(&a);
    assert_eq!(text, format_table(&b));
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with("Description of F"));
    let first = &a[0];
    assert_eq!((first.description.as_str(), first.order, first.has_c, first.has_d), ("Φ(A3)", 3, true, true));
    let last = &a[7];
    assert_eq!((last.description.as_str(), last.order, last.has_c, last.has_d), ("Σ_2(Π(S3,sgn,{1}),K_2)", 48, true, true));
    assert_eq!(last.projection, "Π(S3,sgn,{1})");
}

#[test]
fn regular_groups_have_one_c_class() {
    let c4 = named::cyclic(4);
    let v4 = PermGroup::closure(4, &[parse_perm(4, "(0 1)(2 3)").unwrap(), parse_perm(4, "(0 2)(1 3)").unwrap()]).unwrap();
    for f in [named::alternating(3), c4, v4] {
        let classes = c_classes_over(&f).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0], gamma(&f).unwrap());
    }
    assert!(c_classes_over(&named::symmetric(3)).unwrap().len() > 1);
}

#[test]
fn kernel_projections_are_normal_in_stabilizers() {
    for r in census_c_classes(3, 2).unwrap() {
        assert!(kernel_projections_normal(&r.group).unwrap(), "{}", r.description);
    }
    for f in [named::symmetric(4), named::alternating(4), named::dihedral(4)] {
        assert!(kernel_projections_normal(&phi(&f).unwrap()).unwrap());
        assert!(kernel_projections_normal(&gamma(&f).unwrap()).unwrap());
    }
    assert!(kernel_projections_normal(&BallGroup::from_local(&named::symmetric(3)).unwrap()).is_err());
}

#[test]
fn sphere_transitivity_without_d() {
    let rows = census_c_classes(3, 2).unwrap();
    let mut probed = 0;
    for r in &rows {
        match sphere_transitivity_probe(&r.group).unwrap() {
            Some(t) => {
                assert!(t, "{}", r.description);
                probed += 1;
            }
            None => assert!(r.has_d),
        }
    }
    assert_eq!(probed, 3);
    assert_eq!(sphere_transitivity_probe(&phi(&named::symmetric(4)).unwrap()).unwrap(), Some(true));
}

#[test]
fn containment_and_generator_checks_on_census_groups() {
    let base = census_c_classes(3, 2).unwrap();
    let lifts = census_cd_lifts(&base, true).unwrap();
    for r in base.iter().chain(&lifts.rows) {
        let f = &r.group;
        assert_eq!(check_c(f).holds, check_c_elements(f).holds);
        let idx = CompatIndex::new(f);
        let t = f.table().unwrap();
        for a in 0..f.order() {
            for b in 0..f.order() {
                let ab = t.mul(a, b);
                for w in 0..f.degree() {
                    let bw = idx.act(b, w);
                    for &x in idx.compat(a, bw) {
                        for &y in idx.compat(b, w) {
                            assert!(idx.is_compatible(ab, w, t.mul(x as usize, y as usize)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn local_names() {
    assert_eq!(local_name(&named::symmetric(3)), "S3");
    assert_eq!(local_name(&named::alternating(3)), "A3");
    assert_eq!(local_name(&named::alternating(4)), "A4");
    assert_eq!(local_name(&named::cyclic(4)), "C4");
    assert_eq!(local_name(&named::dihedral(4)), "D4");
    assert_eq!(local_name(&named::dihedral(5)), "D5");
    assert_eq!(local_name(&PermGroup::trivial(3)), "1_3");
}

