//! Finite machinery for universal groups acting on regular trees.
//!
//! The crate is `no_std` and only needs `alloc`. It covers permutation
//! groups and their subgroup lattices, automorphisms of labelled balls
//! `B_{d,k}`, the compatibility condition (C) and discreteness condition (D),
//! the standard local-action constructions, finite truncations of `U_k(F)`
//! and the conjugacy-class census for degree 3.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ball;
pub mod compat;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod permcore;
pub mod universal;

pub use error::{Error, Result};
pub use permcore::{Perm, PermGroup};
pub use ball::{BallAut, BallGroup};
