//! Certified approximate Jordan normal forms of exact integer and rational
//! matrices, and spectral factorizations `P(x) = Q*(x) Q(x)` of monic
//! positive-semidefinite Hermitian matrix polynomials.
//!
//! Everything on the correctness path is exact: big-integer, Gaussian-rational
//! and dyadic arithmetic. Approximate outputs are Gaussian dyadics whose error
//! budgets are set from the input bit lengths and checked by exact residuals.

pub mod certify;
pub mod cli;
pub mod config;
pub mod error;
pub mod frobenius;
pub mod instances;
pub mod io;
pub mod jnf;
pub mod linalg;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod selftest;
pub mod specfact;

pub use error::{Error, Result};
