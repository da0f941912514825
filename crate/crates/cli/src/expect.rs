//! `--expect`: compare an enumeration report with a reference fixture.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use seidel_core::fixtures::Fixture;
use seidel_core::search::SearchReport;
use seidel_core::BigRational;

use crate::Failure;

pub fn check(path: &Path, report: &SearchReport) -> Result<(), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let fixture = Fixture::parse(&text)?;
    let n = report.n;
    let no_row = || Failure::Usage(format!("{} has no entry for n = {n}", path.display()));
    match fixture {
        Fixture::SqrtDets { rows } => {
            let want = rows.iter().find(|r| r.n == n).ok_or_else(no_row)?.values();
            if report.charpolys.is_some() {
                return Err(Failure::Usage("sqrt_dets fixture needs --dets".into()));
            }
            if want != report.sqrt_dets {
                return Err(Failure::Mismatch(format!(
                    "n = {n}: expected {want:?}, got {:?}",
                    report.sqrt_dets
                )));
            }
        }
        Fixture::Charpolys { rows } => {
            let want: BTreeSet<_> = rows
                .into_iter()
                .find(|r| r.n == n)
                .ok_or_else(no_row)?
                .polys
                .into_iter()
                .collect();
            let got: BTreeSet<_> = charpolys(report)?.into_iter().collect();
            if want != got {
                return Err(Failure::Mismatch(format!(
                    "n = {n}: expected {} polynomials, got {} (sets differ)",
                    want.len(),
                    got.len()
                )));
            }
        }
        Fixture::CharpolyCoefficients(table) => {
            if table.n != n {
                return Err(no_row());
            }
            let got = table.project(&charpolys(report)?);
            let want = table.sorted_values();
            if got != want {
                return Err(Failure::Mismatch(format!(
                    "n = {n}: coefficient table has {} rows, enumeration gives {}",
                    want.len(),
                    got.len()
                )));
            }
        }
        Fixture::Moments { rows } => {
            let row = rows.iter().find(|r| r.n == n).ok_or_else(no_row)?;
            let m = report
                .moments
                .as_ref()
                .ok_or_else(|| Failure::Usage("moments fixture needs --dets".into()))?;
            if m.mean_det_sq != BigRational::from_integer(row.z.clone()) {
                return Err(Failure::Mismatch(format!(
                    "n = {n}: E[det^2] expected {}, got {}",
                    row.z, m.mean_det_sq
                )));
            }
        }
    }
    Ok(())
}

fn charpolys(report: &SearchReport) -> Result<Vec<seidel_core::IntPolynomial>, Failure> {
    report
        .charpolys
        .as_ref()
        .map(|v| v.iter().map(|e| e.poly.clone()).collect())
        .ok_or_else(|| Failure::Usage("polynomial fixture needs --charpolys".into()))
}
