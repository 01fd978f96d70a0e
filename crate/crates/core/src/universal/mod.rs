//! Finite truncations of `U_k(F)`: restrictions of its elements to balls of
//! `T_d`, their counts, discreteness, and the local actions of `U_k(F)` at
//! larger radii.

mod extend;
mod partial;

#[cfg(test)]
mod tests;

pub use extend::{
    count_restrictions, count_restrictions_exhaustive, extend_to_ball, extend_with, for_each_extension, Chooser, RestrictionCount,
};
pub use partial::PartialAut;

use crate::ball::BallGroup;
use crate::compat::{c_core, check_c, check_d};
use crate::constructions::phi_k;
use crate::{Error, Result};

/// Whether `U_k(F)` is discrete: `C(F)` satisfies (D).
pub fn is_discrete_universal(f: &BallGroup) -> Result<bool> {
    Ok(check_d(&c_core(f)?).holds)
}

/// The `m`-local action of `U_k(F)`: `π_m F` for `m ≤ k`, and
/// `Φ_{m-1} ∘ ⋯ ∘ Φ_k(F)` above.
pub fn pk_local_action(f: &BallGroup, m: usize) -> Result<BallGroup> {
    if let Some((g, w)) = check_c(f).witness {
        return Err(Error::Precondition(alloc::format!("condition (C) fails at element {g}, direction {w}")));
    }
    if m <= f.radius() {
        return f.project(m);
    }
    let mut g = f.clone();
    while g.radius() < m {
        g = phi_k(&g)?;
    }
    Ok(g)
}
