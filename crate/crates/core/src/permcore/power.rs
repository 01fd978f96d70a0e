//! Subgroups of direct products `∏_ω H_ω` invariant under a group acting on
//! the coordinates.

use alloc::vec::Vec;

use super::group::PermGroup;
use super::lattice;
use super::perm::Perm;
use super::table::{GroupTable, IndexGroup};
use crate::{Error, Result};

pub const PRODUCT_CAP: usize = 1 << 20;

/// How `a ∈ F` acts on a tuple `(x_ω)_ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerAction {
    /// `(x_{a⁻¹ω})_ω`.
    Permute,
    /// `(a x_{a⁻¹ω} a⁻¹)_ω`; factors must be permutation groups of the
    /// same degree as `F`, permuted by conjugation.
    PermuteAndConjugate,
}

/// Direct product of permutation groups, indexed in mixed radix with
/// coordinate 0 most significant.
pub struct ProductGroup {
    factors: Vec<PermGroup>,
    tables: Vec<GroupTable>,
    order: usize,
}

impl ProductGroup {
    pub fn new(factors: Vec<PermGroup>, cap: usize) -> Result<Self> {
        let mut order: usize = 1;
        for f in &factors {
            order = order.checked_mul(f.order()).filter(|&o| o <= cap).ok_or(Error::Capacity { cap })?;
        }
        let tables = factors.iter().map(PermGroup::table).collect::<Result<Vec<_>>>()?;
        Ok(ProductGroup { factors, tables, order })
    }

    pub fn factors(&self) -> &[PermGroup] {
        &self.factors
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % f.order();
            x /= f.order();
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.factors).fold(0, |acc, (&c, f)| acc * f.order() + c)
    }

    pub fn tuple(&self, x: usize) -> Vec<Perm> {
        self.decode(x).iter().zip(&self.factors).map(|(&c, f)| f.element(c).clone()).collect()
    }

    pub fn index_of_tuple(&self, t: &[Perm]) -> Option<usize> {
        if t.len() != self.factors.len() {
            return None;
        }
        let coords: Option<Vec<usize>> = t.iter().zip(&self.factors).map(|(p, f)| f.index_of(p)).collect();
        coords.map(|c| self.encode(&c))
    }

    fn zip_map(&self, a: usize, b: usize, op: impl Fn(&GroupTable, usize, usize) -> usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let out: Vec<usize> = (0..ca.len()).map(|i| op(&self.tables[i], ca[i], cb[i])).collect();
        self.encode(&out)
    }
}

impl IndexGroup for ProductGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.zip_map(a, b, |t, x, y| t.mul(x, y))
    }
    fn inv(&self, a: usize) -> usize {
        self.zip_map(a, a, |t, x, _| t.inv(x))
    }
}

/// A subgroup of a direct product, listed as sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSubgroup {
    pub elements: Vec<Vec<Perm>>,
}

impl ProductSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Index permutation of the product induced by `a`.
fn action_table(p: &ProductGroup, a: &Perm, action: PowerAction) -> Result<Vec<usize>> {
    let n = p.factors.len();
    let ai = a.inverse();
    let mut out = Vec::with_capacity(p.order);
    for x in 0..p.order {
        let t = p.tuple(x);
        let img: Vec<Perm> = (0..n)
            .map(|w| {
                let src = &t[ai.apply(w)];
                match action {
                    PowerAction::Permute => src.clone(),
                    PowerAction::PermuteAndConjugate => a.compose(src).compose(&ai),
                }
            })
            .collect();
        out.push(p.index_of_tuple(&img).ok_or_else(|| {
            Error::Precondition("coordinate action does not preserve the product".into())
        })?);
    }
    Ok(out)
}

/// All subgroups of `∏_ω factors[ω]` invariant under `f` acting on the
/// coordinates as described by `action`.
pub fn invariant_subgroups_of_product(
    f: &PermGroup,
    factors: Vec<PermGroup>,
    action: PowerAction,
    cap: usize,
) -> Result<Vec<ProductSubgroup>> {
    if f.degree() != factors.len() {
        return Err(Error::DegreeMismatch { expected: factors.len(), found: f.degree() });
    }
    if action == PowerAction::PermuteAndConjugate && factors.iter().any(|h| h.degree() != f.degree()) {
        return Err(Error::Precondition("conjugation needs factors of the same degree as the acting group".into()));
    }
    let p = ProductGroup::new(factors, cap)?;
    let autos = f.generators_or_elements().iter().map(|a| action_table(&p, a, action)).collect::<Result<Vec<_>>>()?;
    let subs = lattice::invariant_subgroups(&p, &autos, cap)?;
    Ok(subs
        .iter()
        .map(|s| {
            let mut elements: Vec<Vec<Perm>> = s.set.iter().map(|x| p.tuple(x)).collect();
            elements.sort();
            ProductSubgroup { elements }
        })
        .collect())
}

/// All subgroups of `H^count` invariant under `f` acting on the coordinates.
pub fn invariant_subgroups_of_power(
    f: &PermGroup,
    h: &PermGroup,
    count: usize,
    action: PowerAction,
) -> Result<Vec<ProductSubgroup>> {
    if f.degree() != count {
        return Err(Error::DegreeMismatch { expected: count, found: f.degree() });
    }
    invariant_subgroups_of_product(f, alloc::vec![h.clone(); count], action, PRODUCT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::named;

    #[test]
    fn dihedral_invariant_subspaces() {
        let c2 = named::cyclic(2);
        for p in [3, 5] {
            let subs = invariant_subgroups_of_power(&named::dihedral(p), &c2, p, PowerAction::Permute).unwrap();
            assert_eq!(subs.len(), 4, "p = {p}");
        }
    }

    #[test]
    fn trivial_action_gives_all_subgroups() {
        let subs = invariant_subgroups_of_power(&PermGroup::trivial(2), &named::cyclic(2), 2, PowerAction::Permute).unwrap();
        assert_eq!(subs.len(), 5);
    }

    #[test]
    fn conjugating_action_on_stabilizers() {
        let s3 = named::symmetric(3);
        let stabs: Vec<PermGroup> = (0..3).map(|w| s3.stabilizer(w)).collect();
        let subs = invariant_subgroups_of_product(&s3, stabs, PowerAction::PermuteAndConjugate, PRODUCT_CAP).unwrap();
        assert_eq!(subs.iter().map(ProductSubgroup::order).collect::<Vec<_>>(), [1, 2, 4, 8]);
    }

    #[test]
    fn mismatched_degree_is_rejected() {
        assert!(invariant_subgroups_of_power(&named::dihedral(3), &named::cyclic(2), 4, PowerAction::Permute).is_err());
    }
}
