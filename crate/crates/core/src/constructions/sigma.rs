//! Constructions driven by an involutive compatibility cocycle: `Γ_k(F)`
//! and `Σ_k(F, K)`.

use alloc::vec::Vec;

use hashbrown::HashSet;

use super::lift::{generate_expected, CONSTRUCTION_CAP};
use super::local::gamma;
use super::phi::require_cocycle;
use crate::ball::{sphere_size, word_at, word_index, BallAut, BallGroup};
use crate::compat::{Cocycle, CompatIndex};
use crate::permcore::{IndexGroup, Perm};
use crate::{Error, Result};

/// `γ_z(α) = (α, (z(α, ω))_ω)` for every generator of `F`.
fn gamma_k_generators(f: &BallGroup, z: &Cocycle) -> Result<Vec<BallAut>> {
    f.generators()
        .iter()
        .map(|g| {
            let i = f.index_of(g).expect("generator");
            let children: Vec<BallAut> = (0..f.degree()).map(|w| f.element(z.value(i, w))).collect();
            BallAut::assemble(g, &children)
        })
        .collect()
}

/// `γ_z(α)` for a single element.
pub fn gamma_k_element(f: &BallGroup, z: &Cocycle, a: &BallAut) -> Result<BallAut> {
    let i = f.index_of(a).ok_or_else(|| Error::Membership("element not in F".into()))?;
    let children: Vec<BallAut> = (0..f.degree()).map(|w| f.element(z.value(i, w))).collect();
    BallAut::assemble(a, &children)
}

/// `Γ_k(F) = {(α, (z(α, ω))_ω) | α ∈ F}`.
pub fn gamma_k(f: &BallGroup, z: &Cocycle) -> Result<BallGroup> {
    require_cocycle(f, z, &CompatIndex::new(f))?;
    generate_expected(f.degree(), f.radius() + 1, &gamma_k_generators(f, z)?, f.order() as u128)
}

/// `Γ(F)` for radius-1 input without a cocycle, `Γ_k(F)` otherwise.
pub fn build_gamma(f: &BallGroup, z: Option<&Cocycle>) -> Result<BallGroup> {
    match z {
        Some(z) => gamma_k(f, z),
        None if f.radius() == 1 => gamma(f.leaf_group()),
        None => Err(Error::Precondition("Γ_k needs an involutive compatibility cocycle for radius at least 2".into())),
    }
}

/// `Σ_k(F, K) = ⟨Γ_k(F), K⟩ = {(α, (z(α, ω) α_ω)_ω) | α ∈ F, (α_ω)_ω ∈ K}`.
///
/// `kernel` generates `K ≤ Φ_k(F) ∩ ker π_k`. The two admissibility
/// conditions are checked and the failing one is named in the error.
pub fn sigma(f: &BallGroup, z: &Cocycle, kernel: &[BallAut]) -> Result<BallGroup> {
    let idx = CompatIndex::new(f);
    require_cocycle(f, z, &idx)?;
    let (d, k) = (f.degree(), f.radius());
    let kg = BallGroup::generate_with_cap(d, k + 1, kernel, CONSTRUCTION_CAP)?;
    let mut children_of: Vec<Vec<usize>> = Vec::with_capacity(kg.order());
    for x in kg.elements() {
        let (root, children) = x.split();
        if !root.is_identity() {
            return Err(Error::Precondition("K must lie in the kernel of the projection".into()));
        }
        let mut ids = Vec::with_capacity(d);
        for (w, c) in children.iter().enumerate() {
            match f.index_of(c) {
                Some(ci) if idx.is_compatible(f.identity_index(), w, ci) => ids.push(ci),
                _ => return Err(Error::Precondition("K must lie in Φ_k(F)".into())),
            }
        }
        children_of.push(ids);
    }
    let gk = gamma_k_generators(f, z)?;
    for g in &gk {
        let gi = g.inverse();
        for x in kg.generators() {
            if !kg.contains(&g.compose(&x).compose(&gi)) {
                return Err(Error::Precondition("Γ_k(F) does not normalize K".into()));
            }
        }
    }
    let t = f.table()?;
    for w in 0..d {
        let available: HashSet<usize> = children_of.iter().map(|c| c[w]).collect();
        for c in &children_of {
            let need = t.inv(z.value(c[w], w));
            if !available.contains(&need) {
                return Err(Error::Precondition(alloc::format!(
                    "no element of K has pr_{w} equal to z(pr_{w} κ, {w})⁻¹ for some κ ∈ K"
                )));
            }
        }
    }
    let mut gens = gk;
    gens.extend(kg.generators());
    generate_expected(d, k + 1, &gens, (f.order() as u128) * (kg.order() as u128))
}

/// The element of `Aut(B_{3,k})` that fixes `B_{3,k-1}` and swaps the two
/// children of every vertex at distance `k-1`. It generates the diagonal
/// subgroup of `ker π_{k-1} ≅ (ℤ/2)^{3·2^{k-2}}`.
pub fn diagonal_swap(k: usize) -> Result<BallAut> {
    if k < 2 {
        return Err(Error::RadiusOutOfRange { radius: k, max: usize::MAX });
    }
    let images: Vec<usize> = (0..sphere_size(3, k))
        .map(|i| {
            let mut w = word_at(3, k, i);
            let (p, c) = (w[k - 2], w[k - 1]);
            w[k - 1] = 3 - p - c;
            word_index(3, &w)
        })
        .collect();
    BallAut::from_leaf_perm(3, k, Perm::from_images(&images)?)
}
