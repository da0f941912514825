//! Reference data shipped with the crate: achievable `sqrt(det)` values up to
//! order 12, characteristic polynomials up to order 6, coefficient tables for
//! orders 7 and 8, and the second-moment table.
//!
//! The same JSON files are accepted by the CLI's `--expect` flag.

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::IntPolynomial;

pub const FIG2_JSON: &str = include_str!("../../../fixtures/fig2.json");
pub const FIG4_JSON: &str = include_str!("../../../fixtures/fig4.json");
pub const FIG5_JSON: &str = include_str!("../../../fixtures/fig5.json");
pub const FIG6_JSON: &str = include_str!("../../../fixtures/fig6.json");
pub const MOMENTS_JSON: &str = include_str!("../../../fixtures/moments.json");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Fixture {
    SqrtDets { rows: Vec<SqrtDetRow> },
    Charpolys { rows: Vec<CharpolyRow> },
    CharpolyCoefficients(CoefficientTable),
    Moments { rows: Vec<MomentFixtureRow> },
}

/// Odd values listed as inclusive runs `[lo, hi]` stepping by 2. Odd orders
/// carry the single run `[0, 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqrtDetRow {
    pub n: usize,
    pub runs: Vec<(u64, u64)>,
}

impl SqrtDetRow {
    pub fn values(&self) -> Vec<u64> {
        self.runs
            .iter()
            .flat_map(|&(lo, hi)| (lo..=hi).step_by(2))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharpolyRow {
    pub n: usize,
    pub polys: Vec<IntPolynomial>,
}

/// Selected coefficients (by degree) of every characteristic polynomial of
/// one order.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientTable {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub values: Vec<Vec<i64>>,
}

impl CoefficientTable {
    /// Projects polynomials onto this table's degrees, sorted.
    pub fn project(&self, polys: &[IntPolynomial]) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = polys
            .iter()
            .map(|p| self.degrees.iter().map(|&d| p.coeff(d)).collect())
            .collect();
        out.sort();
        out
    }

    pub fn sorted_values(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentFixtureRow {
    pub n: usize,
    #[serde(with = "crate::record::bigint_json")]
    pub y: BigInt,
    #[serde(with = "crate::record::bigint_json")]
    pub z: BigInt,
}

impl Fixture {
    pub fn parse(json: &str) -> Result<Fixture> {
        serde_json::from_str(json).map_err(|e| Error::BadFixture(e.to_string()))
    }
}

fn parse_builtin(json: &str) -> Fixture {
    Fixture::parse(json).expect("bundled fixture parses")
}

/// Rows of achievable `sqrt(det)` values, orders 1 to 12.
pub fn sqrt_det_rows() -> Vec<SqrtDetRow> {
    match parse_builtin(FIG2_JSON) {
        Fixture::SqrtDets { rows } => rows,
        _ => unreachable!("fig2 fixture kind"),
    }
}

pub fn sqrt_dets(n: usize) -> Option<Vec<u64>> {
    sqrt_det_rows().into_iter().find(|r| r.n == n).map(|r| r.values())
}

/// Characteristic polynomials for orders 1 to 6.
pub fn charpolys(n: usize) -> Option<Vec<IntPolynomial>> {
    match parse_builtin(FIG4_JSON) {
        Fixture::Charpolys { rows } => rows.into_iter().find(|r| r.n == n).map(|r| r.polys),
        _ => unreachable!("fig4 fixture kind"),
    }
}

fn coefficient_table(json: &str) -> CoefficientTable {
    match parse_builtin(json) {
        Fixture::CharpolyCoefficients(t) => t,
        _ => unreachable!("coefficient fixture kind"),
    }
}

/// `(x^3, x^1)` coefficient pairs at order 7.
pub fn order7_coefficients() -> CoefficientTable {
    coefficient_table(FIG5_JSON)
}

/// `(x^4, x^2, x^0)` coefficient triples at order 8.
pub fn order8_coefficients() -> CoefficientTable {
    coefficient_table(FIG6_JSON)
}

pub fn moment_rows() -> Vec<MomentFixtureRow> {
    match parse_builtin(MOMENTS_JSON) {
        Fixture::Moments { rows } => rows,
        _ => unreachable!("moments fixture kind"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        assert_eq!(sqrt_dets(1), Some(vec![0]));
        assert_eq!(sqrt_dets(4), Some(vec![1, 3]));
        assert_eq!(sqrt_dets(6), Some(vec![1, 3, 5, 7, 9]));
        let d8 = sqrt_dets(8).unwrap();
        assert_eq!(d8.len(), 14 + 3 + 1);
        assert_eq!(*d8.last().unwrap(), 49);
        let d12 = sqrt_dets(12).unwrap();
        assert_eq!(&d12[d12.len() - 2..], &[1089, 1331]);
        assert!(sqrt_dets(14).is_none());
        assert_eq!(charpolys(6).unwrap().len(), 6);
        assert_eq!(order7_coefficients().values.len(), 11);
        let t8 = order8_coefficients();
        assert_eq!(t8.values.len(), 50);
        assert_eq!(t8.values[0], vec![70, 28, 1]);
        assert_eq!(moment_rows().len(), 7);
    }

    #[test]
    fn parse_errors() {
        assert!(Fixture::parse("{\"kind\":\"nope\"}").is_err());
        assert!(Fixture::parse("[]").is_err());
    }
}
