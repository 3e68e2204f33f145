//! Exact-arithmetic algebra of polyhedral cones and their indicator
//! functions.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed over
//! the rationals; there is no floating point anywhere.
#![no_std]

extern crate alloc;

mod bitset;
mod error;

pub mod arrangement;
pub mod cone;
pub mod gamma;
pub mod indicator;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod verify;

pub use bitset::BitSet;
pub use cone::{Cone, Face, FaceId, FaceLattice, Halfspace};
pub use error::{Error, Result};
pub use indicator::{AffineCondition, ConicSum, FormalSum, GeneralizedPolyhedron, Relation};
pub use linalg::{QMatrix, QVector};
pub use rational::Rational;
