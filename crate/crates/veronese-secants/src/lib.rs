//! Exact-arithmetic computations with secant ideals of Veronese re-embeddings.
//!
//! The crate has five layers:
//!
//! - [`linalg`]: sparse exact rational matrices, RREF, kernels, subspaces.
//! - [`veronese`]: the combinatorial category of bidegrees `(d, m)` whose
//!   morphisms carry slot injections and monomial multipliers, together with
//!   its word encoding, Higman order, divisibility, and symmetric-group
//!   action.
//! - [`algebra`]: concrete graded algebras generated in degree one
//!   (polynomial rings, affine semigroup rings, monomial quotients), their
//!   symmetric powers, comultiplication, and the action of basic morphisms
//!   on tensor and symmetric powers.
//! - [`secant`]: recursive secant ideals as exact kernels, quotient rings,
//!   catalecticant minors, and membership tests.
//! - [`koszul`]: graded Betti numbers via Koszul homology, degree-bound
//!   scans across re-embedding degrees, and consistency checks.
//!
//! The [`cli`] module backs the `veronese-secants` binary; the `examples/`
//! directory shows each capability as a small runnable program.

pub mod algebra;
pub mod cli;
pub mod koszul;
pub mod linalg;
pub mod secant;
pub mod veronese;

pub use linalg::{Matrix, Rational, Subspace};
