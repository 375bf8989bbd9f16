//! Heisenberg subFinsler geometry, word metrics on `H₃(ℤ)`, `ℤ × H₃(ℤ)` and
//! `ℤ³`, and numerical checks of their asymptotic cones.

pub mod asymptotics;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod lattice;

pub use error::{Error, Result};
pub use geometry::*;
pub use lattice::*;
pub use asymptotics::*;
pub use extremal::*;
