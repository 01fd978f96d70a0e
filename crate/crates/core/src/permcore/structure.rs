//! Normal structure: socle, radicals, subnormality and conjugacy classes of
//! subgroups.

use alloc::vec::Vec;

use super::group::PermGroup;
use super::lattice::{self, Subgroup, Subset};
use super::table::{GroupTable, IndexGroup};
use crate::{Error, Result};

const SUBGROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct StructureReport {
    /// Normal subgroups ordered by order, then by element list.
    pub normal_subgroups: Vec<PermGroup>,
    pub minimal_normal_subgroups: Vec<PermGroup>,
    pub socle: PermGroup,
    /// Largest solvable normal subgroup.
    pub solvable_radical: PermGroup,
    /// Largest nilpotent normal subgroup (Fitting subgroup).
    pub nilpotent_radical: PermGroup,
    pub point_stabilizers: Vec<PermGroup>,
    /// Whether some minimal normal subgroup is abelian.
    pub socle_has_abelian_factor: bool,
}

pub fn structure_subgroups(g: &PermGroup) -> Result<StructureReport> {
    let t = g.table()?;
    let normals = lattice::normal_subgroups(&t, SUBGROUP_CAP)?;
    let minimal: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| n.order() > 1 && !normals.iter().any(|m| m.order() > 1 && m.order() < n.order() && m.set.is_subset(&n.set)))
        .collect();
    let mut socle = lattice::trivial(&t);
    for m in &minimal {
        socle = lattice::join(&t, &socle, m);
    }
    let largest = |pred: &dyn Fn(&Subgroup) -> bool| -> Subgroup {
        normals.iter().filter(|n| pred(n)).max_by_key(|n| n.order()).cloned().unwrap_or_else(|| lattice::trivial(&t))
    };
    let solvable = largest(&|n| lattice::is_solvable(&t, n));
    let nilpotent = largest(&|n| lattice::is_nilpotent(&t, n));
    let to_group = |s: &Subgroup| g.subgroup_from_indices(&s.elements());
    Ok(StructureReport {
        normal_subgroups: normals.iter().map(to_group).collect(),
        minimal_normal_subgroups: minimal.iter().map(|m| to_group(m)).collect(),
        socle: to_group(&socle),
        solvable_radical: to_group(&solvable),
        nilpotent_radical: to_group(&nilpotent),
        point_stabilizers: (0..g.degree()).map(|x| g.stabilizer(x)).collect(),
        socle_has_abelian_factor: minimal.iter().any(|m| lattice::is_abelian(&t, m)),
    })
}

fn as_index_subgroup(g: &PermGroup, t: &GroupTable, h: &PermGroup) -> Result<Subgroup> {
    let mut idx = Vec::with_capacity(h.order());
    for e in h.elements() {
        idx.push(g.index_of(e).ok_or_else(|| Error::NotSubgroup("not contained in the ambient group".into()))?);
    }
    lattice::as_subgroup(t, &Subset::from_indices(t.order(), idx))
}

/// Depth of a subnormal series from `h` up to `g`, or `None` if `h` is not
/// subnormal in `g`.
pub fn subnormal_depth(g: &PermGroup, h: &PermGroup) -> Result<Option<usize>> {
    let t = g.table()?;
    let hs = as_index_subgroup(g, &t, h)?;
    Ok(lattice::subnormal_depth(&t, &hs, &lattice::whole(&t)))
}

pub fn is_normal_subgroup(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("not contained in the ambient group".into()));
    }
    Ok(g.generators_or_elements().iter().all(|c| h.is_normalized_by(c)))
}

/// All subgroups, as index subgroups of the table of `g`.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let t = g.table()?;
    Ok(lattice::all_subgroups(&t, SUBGROUP_CAP)?.iter().map(|s| g.subgroup_from_indices(&s.elements())).collect())
}

/// All subnormal subgroups of `g`.
pub fn subnormal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let t = g.table()?;
    let w = lattice::whole(&t);
    Ok(lattice::all_subgroups(&t, SUBGROUP_CAP)?
        .iter()
        .filter(|s| lattice::subnormal_depth(&t, s, &w).is_some())
        .map(|s| g.subgroup_from_indices(&s.elements()))
        .collect())
}

/// One representative per conjugacy class of subgroups satisfying `keep`.
/// The representative is the conjugate with least sorted element list.
pub fn subgroups_up_to_conjugacy(g: &PermGroup, keep: impl Fn(&PermGroup) -> bool) -> Result<Vec<PermGroup>> {
    let t = g.table()?;
    let subs = lattice::all_subgroups(&t, SUBGROUP_CAP)?;
    let all: Vec<usize> = (0..t.order()).collect();
    let reps = lattice::conjugacy_class_reps(&t, &all, &subs);
    Ok(reps.iter().map(|s| g.subgroup_from_indices(&s.elements())).filter(|h| keep(h)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::named;
    use crate::permcore::Perm;

    #[test]
    fn radicals() {
        let a5 = structure_subgroups(&named::alternating(5)).unwrap();
        assert!(a5.solvable_radical.is_trivial());
        assert!(a5.nilpotent_radical.is_trivial());
        assert_eq!(a5.socle.order(), 60);
        assert!(!a5.socle_has_abelian_factor);
        let s3 = structure_subgroups(&named::symmetric(3)).unwrap();
        assert_eq!(s3.nilpotent_radical, named::alternating(3));
        let c4 = structure_subgroups(&named::cyclic(4)).unwrap();
        assert_eq!(c4.socle.order(), 2);
        assert!(c4.socle_has_abelian_factor);
        assert!(!c4.solvable_radical.is_trivial());
        let s4 = structure_subgroups(&named::symmetric(4)).unwrap();
        assert_eq!(s4.nilpotent_radical.order(), 4);
        assert_eq!(s4.solvable_radical.order(), 24);
    }

    #[test]
    fn conjugacy_classes() {
        let s3 = named::symmetric(3);
        let tr = subgroups_up_to_conjugacy(&s3, PermGroup::is_transitive).unwrap();
        assert_eq!(tr.iter().map(PermGroup::order).collect::<Vec<_>>(), [3, 6]);
        assert_eq!(subgroups_up_to_conjugacy(&named::cyclic(4), |_| true).unwrap().len(), 3);
    }

    #[test]
    fn subnormality_requires_containment() {
        let s3 = named::symmetric(3);
        let outside = PermGroup::closure(3, &[Perm::from_images(&[1, 0, 2]).unwrap()]).unwrap();
        let s4 = named::symmetric(4);
        assert_eq!(subnormal_depth(&s3, &outside).unwrap(), None);
        let h = PermGroup::closure(4, &[Perm::from_cycles(4, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(subnormal_depth(&s3, &h).is_err());
        assert!(subnormal_depth(&s4, &h).unwrap().is_none());
    }
}
