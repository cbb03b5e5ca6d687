//! Computational toolkit for the harmonic locus of monodromy-free
//! Schrödinger operators `-D^2 + u(z)` with `u(z) = z^2 - 2 D^2 log W_λ(z)`.
//!
//! Everything is indexed by integer partitions:
//!
//! - [`partitions`]: Young diagram combinatorics (contents, hooks, Frobenius coordinates).
//! - [`exact_poly`]: exact rational polynomials, Hermite Wronskians, Schur specializations.
//! - [`locus`]: roots of `W_λ`, locus conditions, equilibrium refinement, the potential.
//! - [`moser`]: Moser and Hessian matrices at an equilibrium and their spectra.
//! - [`wilson`]: exact fixed-point data `(X, Z, v, w, M)` of the Calogero–Moser space.
//! - [`characters`]: Laurent-polynomial characters of the torus action.
//! - [`cli`]: run records, the verification harness and figure output used by `hlocus`.

pub mod characters;
pub mod cli;
mod error;
pub mod exact_poly;
pub mod linalg;
pub mod locus;
pub mod moser;
pub mod partitions;
pub mod wilson;

pub use error::{Error, Result};
pub use exact_poly::ExactPoly;
pub use locus::NumericsConfig;
pub use partitions::Partition;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
