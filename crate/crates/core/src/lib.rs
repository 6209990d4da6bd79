//! Exact p-adic machinery for computing the homotopy of THH of K/p over
//! p-complete K-theory: truncated K-theory of CP^∞, Adams operations and
//! summand projectors, Rezk's logarithm and its inverse, and the torsion of
//! the cokernel of `u - 1`.

#![allow(clippy::needless_range_loop)]

pub mod adams;
mod arith;
pub mod error;
pub mod expr;
pub mod padic;
pub mod rezk;
pub mod series;
pub mod snf;
pub mod thh;
pub mod verify;

pub use adams::{KClass, SphereUnit};
pub use error::{Error, Result};
pub use padic::PadicInt;
pub use rezk::UnitSeries;
pub use series::TruncatedSeries;
pub use thh::{ExtensionSpec, Factor, ThhReport};
