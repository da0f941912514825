//! Named invariant suites, each recomputing one identity many times.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{expected_det, interlace_check, jacobi_factor_check, moment_table};
use crate::constructions::{border_all_ones, join, quadratic_residue, reversal_det};
use crate::error::{Error, Result};
use crate::matrix::SeidelMatrix;
use crate::search::{exact_moments, representatives};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PfaffianSquare,
    JoinMult,
    ReversalFormula,
    Jacobi,
    Interlace,
    Moments,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::PfaffianSquare,
        Suite::JoinMult,
        Suite::ReversalFormula,
        Suite::Jacobi,
        Suite::Interlace,
        Suite::Moments,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PfaffianSquare => "pfaffian-square",
            Suite::JoinMult => "join-mult",
            Suite::ReversalFormula => "reversal-formula",
            Suite::Jacobi => "jacobi",
            Suite::Interlace => "interlace",
            Suite::Moments => "moments",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    /// Restricts the suite to one order where that makes sense.
    pub n: Option<usize>,
    pub trials: u64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n: None,
            trials: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    /// First few failure descriptions.
    pub failures: Vec<String>,
    pub failed: u64,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn bits(s: &SeidelMatrix) -> String {
    crate::record::MatrixRecord::from(s).to_json_line()
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::PfaffianSquare => pfaffian_square(&mut r, opts, &mut rng)?,
        Suite::JoinMult => join_mult(&mut r, opts, &mut rng),
        Suite::ReversalFormula => reversal_formula(&mut r, opts, &mut rng)?,
        Suite::Jacobi => jacobi(&mut r, opts, &mut rng)?,
        Suite::Interlace => interlace(&mut r, opts, &mut rng)?,
        Suite::Moments => moments(&mut r, opts)?,
    }
    Ok(r)
}

fn even_order(opts: &SuiteOptions, default: &[usize]) -> Result<Vec<usize>> {
    match opts.n {
        Some(n) if n % 2 == 1 => Err(Error::OddOrder(n)),
        Some(n) => Ok(vec![n]),
        None => Ok(default.to_vec()),
    }
}

/// `Pf^2 = det` and agreement with the matching sum: exhaustive over
/// representatives up to order 6, random above.
fn pfaffian_square(r: &mut SuiteReport, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    for n in even_order(opts, &[2, 4, 6, 8, 10])? {
        let mut one = |s: &SeidelMatrix| -> Result<()> {
            let pf = s.pfaffian()?;
            r.check(&pf * &pf == s.determinant(), || format!("Pf^2 != det for {}", bits(s)));
            if n <= 12 {
                r.check(pf == s.pfaffian_bruteforce()?, || {
                    format!("elimination and matching sum differ for {}", bits(s))
                });
            }
            Ok(())
        };
        if n <= 6 {
            for s in representatives(n) {
                one(&s)?;
            }
        } else {
            for _ in 0..opts.trials {
                one(&SeidelMatrix::random(n, rng))?;
            }
        }
    }
    Ok(())
}

/// `det(S1 -> S2) = det S1 det S2` when an order is even.
fn join_mult(r: &mut SuiteReport, opts: &SuiteOptions, rng: &mut ChaCha8Rng) {
    let mut one = |a: &SeidelMatrix, b: &SeidelMatrix| {
        let ok = join(a, b).determinant() == a.determinant() * b.determinant();
        r.check(ok, || format!("join of {} and {}", bits(a), bits(b)));
    };
    for (p, q) in [(2, 2), (2, 4), (4, 4)] {
        for a in representatives(p) {
            for b in representatives(q) {
                one(&a, &b);
            }
        }
    }
    for (p, q) in [(4, 6), (6, 6), (3, 4), (5, 2)] {
        for _ in 0..opts.trials {
            one(&SeidelMatrix::random(p, rng), &SeidelMatrix::random(q, rng));
        }
    }
}

/// Predicted determinant after an arc reversal against direct elimination.
fn reversal_formula(r: &mut SuiteReport, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    let orders = even_order(opts, &[4, 6, 8])?;
    for t in 0..opts.trials {
        let n = orders[t as usize % orders.len()];
        if n < 2 {
            continue;
        }
        let s = SeidelMatrix::random(n, rng);
        let i = rng.random_range(0..n);
        let j = (i + 1 + rng.random_range(0..n - 1)) % n;
        let rev = reversal_det(&s, i, j)?;
        r.check(rev.det == rev.matrix.determinant(), || {
            format!("arc ({}, {}) of {}", i + 1, j + 1, bits(&s))
        });
        let e = rev.inverse_entry.clone();
        let factor = BigRational::from_integer(BigInt::from(1)) + e * BigInt::from(2);
        let predicted = BigRational::from_integer(s.determinant()) * &factor * &factor;
        r.check(predicted.to_integer() == rev.det, || "inverse-entry factor".into());
    }
    Ok(())
}

fn conference_matrices(opts: &SuiteOptions) -> Result<Vec<SeidelMatrix>> {
    let orders = even_order(opts, &[4, 8, 12])?;
    orders
        .into_iter()
        .map(|n| Ok(border_all_ones(&quadratic_residue(n as u64 - 1)?)))
        .collect()
}

/// Jacobi factorization on all subsets of size at most 2 and on random
/// larger subsets.
fn jacobi(r: &mut SuiteReport, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    let mats = conference_matrices(opts)?;
    for s in &mats {
        let n = s.order();
        for i in 0..n {
            r.check(jacobi_factor_check(s, &[i])?, || format!("order {n}, {{{}}}", i + 1));
            for j in i + 1..n {
                r.check(jacobi_factor_check(s, &[i, j])?, || {
                    format!("order {n}, {{{}, {}}}", i + 1, j + 1)
                });
            }
        }
    }
    let large: Vec<&SeidelMatrix> = mats.iter().filter(|s| s.order() > 4).collect();
    if large.is_empty() {
        return Ok(());
    }
    for t in 0..opts.trials {
        let s = large[t as usize % large.len()];
        let n = s.order();
        let k = rng.random_range(3..n);
        let mut subset = sample(rng, n, k).into_vec();
        subset.sort_unstable();
        r.check(jacobi_factor_check(s, &subset)?, || format!("order {n}, subset {subset:?}"));
    }
    Ok(())
}

/// Cauchy interlacing on random matrices and random subsets.
fn interlace(r: &mut SuiteReport, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..opts.trials {
        let n = opts.n.unwrap_or_else(|| rng.random_range(2..=8));
        let s = SeidelMatrix::random(n, rng);
        let k = rng.random_range(1..=n);
        let mut subset = sample(rng, n, k).into_vec();
        subset.sort_unstable();
        r.check(interlace_check(&s, &subset)?, || format!("{} on {subset:?}", bits(&s)));
    }
    Ok(())
}

/// Exact enumeration moments against `(n-1)!!` and the recurrence.
fn moments(r: &mut SuiteReport, opts: &SuiteOptions) -> Result<()> {
    let orders = even_order(opts, &[2, 4, 6, 8])?;
    let table = moment_table(orders.iter().copied().max().unwrap_or(2));
    for n in orders {
        let m = exact_moments(n)?;
        let mean = BigRational::from_integer(expected_det(n)?);
        r.check(m.mean_det == mean, || format!("E[det] at n = {n} is {}", m.mean_det));
        let z = BigRational::from_integer(table.row(n).expect("row exists").z.clone());
        r.check(m.mean_det_sq == z, || format!("E[det^2] at n = {n} is {}", m.mean_det_sq));
    }
    Ok(())
}
