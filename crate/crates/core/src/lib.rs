//! Exact computation of mixed volumes, mixed codegrees and mixed degrees of
//! families of lattice polytopes.

// Polytopes cache derived geometry; ordering and hashing use only vertices.
#![allow(clippy::mutable_key_type)]

pub mod classify;
pub mod ehrhart;
pub mod error;
pub mod lattice;
pub mod minkowski;
pub mod mixed;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
pub use malachite::{Integer, Rational};
