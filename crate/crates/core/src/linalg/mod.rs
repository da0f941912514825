//! Exact integer and rational linear algebra.
//!
//! Determinants use Bareiss elimination, Pfaffians a fraction-free skew
//! elimination, characteristic polynomials Berkowitz's recurrence. Each
//! runs first in a fixed-width integer type and falls back to arbitrary
//! precision on overflow.

mod charpoly;
mod det;
pub(crate) mod exact;
mod int_matrix;
mod pfaffian;
mod poly;
mod rational;

pub use charpoly::{char_poly, char_poly_i64};
pub use det::{det, det_i64};
pub use int_matrix::IntMatrix;
pub use pfaffian::{perfect_matchings, pfaffian, pfaffian_bruteforce, pfaffian_i64, PerfectMatching};
pub(crate) use pfaffian::pfaffian_ff;
pub use poly::IntPolynomial;
pub use rational::{inverse, schur_det, smw_det_update, RationalMatrix};
