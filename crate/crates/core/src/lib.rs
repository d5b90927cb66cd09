//! Exact cohomology and formal deformation theory of finite-dimensional
//! Courant pairs: an associative algebra A, a left Leibniz algebra L and an
//! anchor `μ: L -> Der(A)` that is a homomorphism of Leibniz algebras.
//!
//! All arithmetic is over the rationals and exact.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod commands;
pub mod deformation;
pub mod error;
pub mod format;
pub mod linalg;

pub use error::{Error, Result};
