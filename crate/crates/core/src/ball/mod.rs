//! The labelled ball `B_{d,k}` and its automorphisms.

mod aut;
mod group;
mod words;

pub use aut::{check_shape, BallAut, LEAF_CAP};
pub use group::{full_aut, full_aut_generators, full_aut_order, sphere_action, BallGroup};
pub use words::{sphere_size, VertexWord};

pub(crate) use words::{path_labels, step, word_at, word_index};

#[cfg(test)]
mod tests;
