use super::lift::{lift, BlockRule};
use super::local::phi_normal;
use crate::ball::BallGroup;
use crate::compat::{check_c, Cocycle, CompatIndex};
use crate::permcore::{PartitionOfPoints, PermGroup};
use crate::{Error, Result};

/// Which `Φ` to build one level up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiVariant {
    /// `Φ_k(F)`: independent compatible choices in every direction.
    Full,
    /// `Φ(F, N)` for `N ⊴ F_{ω_0}`; radius-1 input only.
    Normal(PermGroup),
    /// `Φ_k(F, 𝒫)`: choices constant on the blocks of `𝒫`.
    Partition(PartitionOfPoints),
}

fn require_c(f: &BallGroup) -> Result<()> {
    if let Some((g, w)) = check_c(f).witness {
        return Err(Error::Precondition(alloc::format!("condition (C) fails at element {g}, direction {w}")));
    }
    Ok(())
}

/// `Φ_k(F) = {(α, (α_ω)_ω) | α ∈ F, α_ω ∈ C_F(α, ω)}`.
pub fn phi_k(f: &BallGroup) -> Result<BallGroup> {
    require_c(f)?;
    lift(f, &BlockRule::singletons(f.degree()))
}

/// `Φ(F) ≤ Aut(B_{d,2})`.
pub fn phi(f: &PermGroup) -> Result<BallGroup> {
    phi_k(&BallGroup::from_local(f)?)
}

/// `Φ^k(F) = Φ_{k-1} ∘ ⋯ ∘ Φ_1(F) ≤ Aut(B_{d,k})`.
pub fn phi_power(f: &PermGroup, k: usize) -> Result<BallGroup> {
    if k == 0 {
        return Err(Error::RadiusOutOfRange { radius: 0, max: usize::MAX });
    }
    let mut g = BallGroup::from_local(f)?;
    for _ in 1..k {
        g = phi_k(&g)?;
    }
    Ok(g)
}

/// `Φ_k(F, 𝒫)`; needs `πF` to preserve `𝒫` and `C_F(α, Ω_i) ≠ ∅`.
pub fn phi_partition(f: &BallGroup, p: &PartitionOfPoints) -> Result<BallGroup> {
    if p.degree() != f.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: p.degree() });
    }
    let rule = BlockRule { blocks: p.blocks().to_vec(), pinned: alloc::vec![false; p.blocks().len()] };
    lift(f, &rule)
}

/// `Φ` of the given variant, one level above `f`.
pub fn build_phi(f: &BallGroup, variant: &PhiVariant) -> Result<BallGroup> {
    match variant {
        PhiVariant::Full => phi_k(f),
        PhiVariant::Normal(n) => {
            if f.radius() != 1 {
                return Err(Error::Unsupported("Φ(F, N) is defined for radius 1".into()));
            }
            phi_normal(f.leaf_group(), n)
        }
        PhiVariant::Partition(p) => phi_partition(f, p),
    }
}

/// Checks `z` exhaustively, reporting the failing axiom.
pub(crate) fn require_cocycle(f: &BallGroup, z: &Cocycle, idx: &CompatIndex) -> Result<()> {
    if z.degree() != f.degree() || z.order() != f.order() {
        return Err(Error::Precondition("cocycle does not belong to this group".into()));
    }
    let t = f.table()?;
    z.verify(&t, idx)
        .map_err(|v| Error::Precondition(alloc::format!("not an involutive compatibility cocycle: {v:?}")))
}

/// Convenience for tests and callers: `Φ` over a radius-1 group.
pub fn phi_of_local(f: &PermGroup, variant: &PhiVariant) -> Result<BallGroup> {
    build_phi(&BallGroup::from_local(f)?, variant)
}
