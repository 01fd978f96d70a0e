use alloc::vec::Vec;

use super::aut::{check_shape, BallAut};
use super::words::{sphere_size, word_at, word_index};
use crate::permcore::group::DEFAULT_CAP;
use crate::permcore::{GroupTable, Perm, PermGroup};
use crate::{Error, Result};

/// A subgroup of `Aut(B_{d,k})`, held as a permutation group on the leaves.
///
/// Element indices follow the lexicographic order of leaf image tables.
#[derive(Clone, PartialEq, Eq)]
pub struct BallGroup {
    d: usize,
    k: usize,
    leaves: PermGroup,
}

impl BallGroup {
    pub fn trivial(d: usize, k: usize) -> Result<Self> {
        check_shape(d, k)?;
        Ok(BallGroup { d, k, leaves: PermGroup::trivial(sphere_size(d, k)) })
    }

    pub fn generate(d: usize, k: usize, gens: &[BallAut]) -> Result<Self> {
        Self::generate_with_cap(d, k, gens, DEFAULT_CAP)
    }

    pub fn generate_with_cap(d: usize, k: usize, gens: &[BallAut], cap: usize) -> Result<Self> {
        check_shape(d, k)?;
        let mut perms = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != d || g.radius() != k {
                return Err(Error::Dimension(alloc::format!("generator on B_({},{}) in a group on B_({d},{k})", g.degree(), g.radius())));
            }
            perms.push(g.leaf_perm().clone());
        }
        Ok(BallGroup { d, k, leaves: PermGroup::closure_with_cap(sphere_size(d, k), &perms, cap)? })
    }

    /// Builds a group from a complete element list, checking closure.
    pub fn from_elements(d: usize, k: usize, elements: Vec<BallAut>) -> Result<Self> {
        check_shape(d, k)?;
        let mut perms = Vec::with_capacity(elements.len());
        for g in elements {
            if g.degree() != d || g.radius() != k {
                return Err(Error::Dimension("element of a different ball".into()));
            }
            perms.push(g.into_leaf_perm());
        }
        Ok(BallGroup { d, k, leaves: PermGroup::from_elements(sphere_size(d, k), perms)? })
    }

    /// Wraps a permutation group on the leaves after checking its generators.
    pub fn from_leaf_group(d: usize, k: usize, leaves: PermGroup) -> Result<Self> {
        check_shape(d, k)?;
        if leaves.degree() != sphere_size(d, k) {
            return Err(Error::Dimension("leaf group of wrong degree".into()));
        }
        for g in leaves.generators_or_elements() {
            BallAut::from_leaf_perm(d, k, g.clone())?;
        }
        Ok(BallGroup { d, k, leaves })
    }

    /// `F ≤ Sym(Ω)` viewed as a subgroup of `Aut(B_{d,1})`.
    pub fn from_local(f: &PermGroup) -> Result<Self> {
        check_shape(f.degree(), 1)?;
        Ok(BallGroup { d: f.degree(), k: 1, leaves: f.clone() })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn radius(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.leaves.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.leaves.is_trivial()
    }

    pub fn leaf_group(&self) -> &PermGroup {
        &self.leaves
    }

    pub fn element(&self, i: usize) -> BallAut {
        BallAut::from_leaf_perm_unchecked(self.d, self.k, self.leaves.element(i).clone())
    }

    pub fn elements(&self) -> impl Iterator<Item = BallAut> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn generators(&self) -> Vec<BallAut> {
        self.leaves
            .generators_or_elements()
            .iter()
            .map(|p| BallAut::from_leaf_perm_unchecked(self.d, self.k, p.clone()))
            .collect()
    }

    pub fn index_of(&self, a: &BallAut) -> Option<usize> {
        if a.degree() != self.d || a.radius() != self.k {
            return None;
        }
        self.leaves.index_of(a.leaf_perm())
    }

    pub fn contains(&self, a: &BallAut) -> bool {
        self.index_of(a).is_some()
    }

    pub fn identity_index(&self) -> usize {
        self.leaves.identity_index()
    }

    pub fn is_subgroup_of(&self, other: &BallGroup) -> bool {
        self.d == other.d && self.k == other.k && self.leaves.is_subgroup_of(&other.leaves)
    }

    pub fn table(&self) -> Result<GroupTable> {
        self.leaves.table()
    }

    /// Subgroup on the given element indices (assumed closed).
    pub(crate) fn subgroup_from_indices(&self, idx: &[usize]) -> BallGroup {
        BallGroup { d: self.d, k: self.k, leaves: self.leaves.subgroup_from_indices(idx) }
    }

    pub fn subgroup(&self, gens: &[BallAut]) -> Result<BallGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::Membership("generator not in group".into()));
            }
        }
        BallGroup::generate(self.d, self.k, gens)
    }

    pub fn conjugate_by(&self, g: &BallAut) -> BallGroup {
        BallGroup { d: self.d, k: self.k, leaves: self.leaves.conjugate_by(g.leaf_perm()) }
    }

    /// `π_m F`.
    pub fn project(&self, m: usize) -> Result<BallGroup> {
        if m == 0 || m > self.k {
            return Err(Error::RadiusOutOfRange { radius: m, max: self.k });
        }
        if m == self.k {
            return Ok(self.clone());
        }
        let gens = self.generators().iter().map(|g| g.project(m)).collect::<Result<Vec<_>>>()?;
        BallGroup::generate(self.d, m, &gens)
    }

    /// `πF ≤ Sym(Ω)`.
    pub fn level1(&self) -> PermGroup {
        let gens: Vec<Perm> = self.generators().iter().map(BallAut::level1).collect();
        PermGroup::closure(self.d, &gens).expect("subgroup of Sym(d)")
    }

    /// Kernel of `π_m` restricted to this group.
    pub fn kernel_of_projection(&self, m: usize) -> Result<BallGroup> {
        if m == 0 || m > self.k {
            return Err(Error::RadiusOutOfRange { radius: m, max: self.k });
        }
        let idx: Vec<usize> =
            (0..self.order()).filter(|&i| self.element(i).project(m).map(|p| p.is_identity()).unwrap_or(false)).collect();
        Ok(self.subgroup_from_indices(&idx))
    }
}

impl core::fmt::Debug for BallGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BallGroup(d={}, k={}, order {})", self.d, self.k, self.order())
    }
}

/// The action of `F` on the sphere `S(b,k)`, i.e. on words of length `k`.
pub fn sphere_action(f: &BallGroup) -> PermGroup {
    f.leaf_group().clone()
}

/// Applies a letter permutation to every position from `from` on, for the
/// words extending `prefix`.
fn subtree_relabel(d: usize, k: usize, prefix: &[u8], t: &Perm) -> BallAut {
    let n = sphere_size(d, k);
    let j = prefix.len();
    let images: Vec<usize> = (0..n)
        .map(|i| {
            let mut w = word_at(d, k, i);
            if w[..j] == *prefix {
                for x in w[j..].iter_mut() {
                    *x = t.apply(*x as usize) as u8;
                }
            }
            word_index(d, &w)
        })
        .collect();
    BallAut::from_leaf_perm_unchecked(d, k, Perm::from_images(&images).expect("relabelling"))
}

/// Generators of `Aut(B_{d,k})`: letter permutations at the center and
/// transpositions of child subtrees at every inner vertex.
pub fn full_aut_generators(d: usize, k: usize) -> Result<Vec<BallAut>> {
    check_shape(d, k)?;
    let mut gens = Vec::new();
    let cycle: Vec<usize> = (0..d).map(|x| (x + 1) % d).collect();
    let mut swap: Vec<usize> = (0..d).collect();
    swap.swap(0, 1);
    for t in [cycle, swap] {
        gens.push(subtree_relabel(d, k, &[], &Perm::from_images(&t)?));
    }
    for j in 1..k {
        for i in 0..sphere_size(d, j) {
            let v = word_at(d, j, i);
            let last = *v.last().expect("nonempty") as usize;
            let allowed: Vec<usize> = (0..d).filter(|&x| x != last).collect();
            for pair in allowed.windows(2) {
                let t = Perm::from_cycles(d, &[&[pair[0], pair[1]]])?;
                gens.push(subtree_relabel(d, k, &v, &t));
            }
        }
    }
    Ok(gens)
}

/// `Aut(B_{d,k})`, enumerated in full.
pub fn full_aut(d: usize, k: usize) -> Result<BallGroup> {
    BallGroup::generate(d, k, &full_aut_generators(d, k)?)
}

/// `|Aut(B_{d,k})| = d! · ((d-1)!)^{#inner vertices other than the center}`.
pub fn full_aut_order(d: usize, k: usize) -> Option<u128> {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let inner: usize = (1..k).map(|j| sphere_size(d, j)).sum();
    fact(d).checked_mul(fact(d - 1).checked_pow(inner as u32)?)
}
