//! Finite permutation groups, their classification predicates and subgroup
//! lattices.

pub mod action;
pub mod group;
pub mod lattice;
pub mod named;
pub mod perm;
pub mod power;
pub mod structure;
pub mod table;

pub use action::{classify_action, ActionReport, PartitionOfPoints};
pub use group::{PermGroup, DEFAULT_CAP};
pub use perm::Perm;
pub use power::{invariant_subgroups_of_power, invariant_subgroups_of_product, PowerAction, ProductSubgroup};
pub use structure::{structure_subgroups, subgroups_up_to_conjugacy, StructureReport};
pub use table::{GroupTable, IndexGroup};
