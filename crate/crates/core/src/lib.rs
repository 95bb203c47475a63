//! Exact computation with Eulerian-type polynomials.
//!
//! Polynomials have arbitrary-precision rational coefficients. Real-rootedness
//! and interlacing are certified with Sturm sequences, so every verdict is exact.

pub mod check;
pub mod error;
pub mod perm;
pub mod poly;
pub mod roots;
pub mod sampling;
mod serde_util;
pub mod simplicial;
pub mod structure;
pub mod transforms;
pub mod verify;
mod zpoly;

pub use error::{Error, Result};
pub use poly::{Poly, Rational};
