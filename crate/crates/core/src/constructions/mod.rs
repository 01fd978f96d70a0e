//! Local-action constructions: `Γ`, `Δ`, `Φ` and its variants, `Π`, `Σ`,
//! the towers `F^{(k)}` and the wreath construction `W(F, P)`.

mod lift;
mod local;
mod phi;
mod pi;
mod sigma;
mod spec;
mod tower;
mod wreath;


pub use lift::CONSTRUCTION_CAP;
pub use local::{assemble_local, delta, gamma, gamma_element, gamma_power, phi_normal, split_extension, transversal, Transversal};
pub use phi::{build_phi, phi, phi_k, phi_of_local, phi_partition, phi_power, PhiVariant};
pub use pi::{pi, AbelianHom};
pub use sigma::{build_gamma, diagonal_swap, gamma_k, gamma_k_element, sigma};
pub use spec::{parse_group, parse_perm, ConstructionOutput, ConstructionSpec};
pub use tower::{
    build_tower, check_tower_hypotheses, check_tower_level, commutes_with_all, plus_part, plus_subgroup, tower_step_generators,
    TowerKind,
};
pub use wreath::wreath_local;
