//! Exact arithmetic for Seidel matrices of tournaments.
//!
//! A tournament on `n` players is encoded by its Seidel matrix: the
//! skew-symmetric `n x n` matrix with `+1` in position `(i, j)` when `i`
//! beats `j` and `-1` when `j` beats `i`. This crate computes determinants,
//! Pfaffians and characteristic polynomials of these matrices exactly,
//! enumerates the achievable determinant values for small orders, builds
//! explicit matrices with prescribed determinants or spectra, and evaluates
//! the closed-form statistics and bounds that govern them.
//!
//! Module map:
//!
//! * [`matrix`] — Seidel matrices, tournaments, graph-restricted Seidel
//!   matrices, switching and arc reversal.
//! * [`linalg`] — exact determinant, Pfaffian, inverse, characteristic
//!   polynomial, Schur complement and low-rank determinant updates.
//! * [`constructions`] — explicit matrices with re-verifiable certificates.
//! * [`search`] — exhaustive enumeration over switching classes, hill
//!   climbing, membership certificates, gap analysis, sampling.
//! * [`analysis`] — moments, matching counts, bound families and spectral
//!   checks.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod matrix;
pub mod record;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntPolynomial, PerfectMatching, RationalMatrix};
pub use matrix::{Graph, GraphSeidel, SeidelMatrix, Tournament};
pub use record::MatrixRecord;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
