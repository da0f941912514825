//! Enumeration, local search and sampling over Seidel matrices.
//!
//! Determinant and characteristic polynomial are invariant under switching,
//! and every switching class has exactly `2^(n-1)` members, so the
//! exhaustive searches visit one representative per class: the matrices
//! whose first row is all `+1`. The remaining `(n-1)(n-2)/2` entries are the
//! free bits; free bit `b` is the `b`-th pair `(i, j)`, `1 <= i < j`
//! (0-based), in row-major order.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    self, join, quadratic_residue, transitive, border_all_ones, Claim, ConstructionCertificate,
    ConstructionKind, Params,
};
use crate::error::{Error, Result};
use crate::linalg::pfaffian_ff;
use crate::linalg::{char_poly_i64, pfaffian_i64, IntPolynomial};
use crate::matrix::{pair_count, SeidelMatrix};
use crate::record::MatrixRecord;

/// Largest order searched exhaustively.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;

/// The space is split into `2^SHARD_BITS` shards over the highest free bits,
/// independently of the worker count.
const SHARD_BITS: usize = 6;

/// Number of independent sampling streams.
pub const SAMPLE_SHARDS: u64 = 64;

pub const DEFAULT_CLIMB_BUDGET: u64 = 20_000;
pub const DEFAULT_MEMBERSHIP_BUDGET: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    Exhaustive,
    CertificatesOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumeration,
    Construction,
    Join,
    Walk,
    HillClimb,
    /// Ingested reference data without a matrix.
    Reference,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Enumeration => "enumeration",
            Provenance::Construction => "construction",
            Provenance::Join => "join",
            Provenance::Walk => "walk",
            Provenance::HillClimb => "hill-climb",
            Provenance::Reference => "reference",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetEntry {
    pub provenance: Provenance,
    pub certificate: Option<SeidelMatrix>,
}

/// Values of `sqrt(det S)` known at one order, each with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSet {
    n: usize,
    coverage: Coverage,
    entries: BTreeMap<u64, DetEntry>,
}

impl DetSet {
    pub fn new(n: usize, coverage: Coverage) -> Self {
        DetSet {
            n,
            coverage,
            entries: BTreeMap::new(),
        }
    }

    /// Reference set without certificates.
    pub fn from_reference(n: usize, values: &[u64]) -> Result<Self> {
        let mut d = DetSet::new(n, Coverage::CertificatesOnly);
        for &v in values {
            d.insert(v, Provenance::Reference, None)?;
        }
        Ok(d)
    }

    /// Adds a value; an existing entry with a certificate is kept.
    pub fn insert(
        &mut self,
        value: u64,
        provenance: Provenance,
        certificate: Option<SeidelMatrix>,
    ) -> Result<()> {
        let valid = if self.n % 2 == 1 { value == 0 } else { value % 2 == 1 };
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "{value} cannot be sqrt(det) at order {}",
                self.n
            )));
        }
        if let Some(c) = &certificate {
            if c.order() != self.n {
                return Err(Error::Dimension(format!(
                    "certificate has order {}, set has order {}",
                    c.order(),
                    self.n
                )));
            }
        }
        match self.entries.get(&value) {
            Some(e) if e.certificate.is_some() || certificate.is_none() => {}
            _ => {
                self.entries.insert(value, DetEntry { provenance, certificate });
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coverage(&self) -> Coverage {
        self.coverage
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn entries(&self) -> &BTreeMap<u64, DetEntry> {
        &self.entries
    }

    pub fn contains(&self, v: u64) -> bool {
        self.entries.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Recomputes `sqrt(det)` of every certificate.
    pub fn verify_certificates(&self) -> bool {
        self.entries.iter().all(|(&v, e)| match &e.certificate {
            Some(s) => s.determinant() == BigInt::from(v) * v,
            None => true,
        })
    }
}

/// Maximal runs `[lo, hi]` of odd integers missing from `d` strictly between
/// its minimum and maximum.
pub fn gap_report(d: &DetSet) -> Vec<(u64, u64)> {
    gaps_of(&d.values())
}

fn gaps_of(sorted: &[u64]) -> Vec<(u64, u64)> {
    sorted
        .windows(2)
        .filter(|w| w[1] > w[0] + 2 && w[0] % 2 == 1)
        .map(|w| (w[0] + 2, w[1] - 2))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMoments {
    #[serde(with = "rational_string")]
    pub mean_det: BigRational,
    #[serde(with = "rational_string")]
    pub mean_det_sq: BigRational,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyEntry {
    pub poly: IntPolynomial,
    pub certificate: MatrixRecord,
}

/// Outcome of an enumeration or search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub coverage: Coverage,
    pub sqrt_dets: Vec<u64>,
    pub gaps: Vec<(u64, u64)>,
    pub min: Option<u64>,
    pub max: Option<u64>,
    pub certificates: BTreeMap<u64, MatrixRecord>,
    pub provenance: BTreeMap<u64, Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpolys: Option<Vec<CharPolyEntry>>,
    /// Switching representatives visited.
    pub representatives: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<ExactMoments>,
    /// Representatives that are skew-conference matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew_conference: Option<u64>,
    /// Non-skew-conference representatives above
    /// `(n-1)^((n-2)/2) sqrt((n-1)^2 - 4)`; always zero if the bound holds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_violations: Option<u64>,
    /// Characteristic polynomials breaking the coefficient pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_violations: Option<u64>,
    pub seed: Option<u64>,
    pub duration_ms: Option<u64>,
}

impl SearchReport {
    pub fn from_det_set(d: &DetSet, representatives: u64) -> Self {
        let sqrt_dets = d.values();
        SearchReport {
            n: d.order(),
            coverage: d.coverage(),
            gaps: gaps_of(&sqrt_dets),
            min: d.min(),
            max: d.max(),
            certificates: d
                .entries()
                .iter()
                .filter_map(|(&v, e)| e.certificate.as_ref().map(|c| (v, MatrixRecord::from(c))))
                .collect(),
            provenance: d.entries().iter().map(|(&v, e)| (v, e.provenance)).collect(),
            sqrt_dets,
            charpolys: None,
            representatives,
            moments: None,
            skew_conference: None,
            bound_violations: None,
            pattern_violations: None,
            seed: None,
            duration_ms: None,
        }
    }

    /// `value,provenance,bits` lines; for characteristic polynomial reports,
    /// `poly,bits`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(polys) = &self.charpolys {
            out.push_str("poly,bits\n");
            for e in polys {
                out.push_str(&format!("\"{}\",{}\n", e.poly, e.certificate.bits));
            }
            return out;
        }
        out.push_str("value,provenance,bits\n");
        for v in &self.sqrt_dets {
            let prov = self.provenance.get(v).map_or("", |p| p.as_str());
            let bits = self.certificates.get(v).map_or("", |r| r.bits.as_str());
            out.push_str(&format!("{v},{prov},{bits}\n"));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "n = {}  coverage = {}  representatives = {}\n",
            self.n,
            match self.coverage {
                Coverage::Exhaustive => "exhaustive",
                Coverage::CertificatesOnly => "certificates-only",
            },
            self.representatives
        );
        if let Some(polys) = &self.charpolys {
            out.push_str(&format!("{} characteristic polynomials\n", polys.len()));
            for e in polys {
                out.push_str(&format!("  {}\n", e.poly));
            }
            return out;
        }
        out.push_str(&format!("sqrt(det): {}\n", compress_runs(&self.sqrt_dets)));
        if !self.gaps.is_empty() {
            let gaps: Vec<String> = self
                .gaps
                .iter()
                .map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") })
                .collect();
            out.push_str(&format!("gaps: {}\n", gaps.join(", ")));
        }
        if let Some(m) = &self.moments {
            out.push_str(&format!("E[det] = {}  E[det^2] = {}\n", m.mean_det, m.mean_det_sq));
        }
        out
    }
}

/// `1, 3, 5, 9` -> `1..5, 9` over odd steps.
fn compress_runs(values: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[j] + 2 {
            j += 1;
        }
        parts.push(if i == j {
            values[i].to_string()
        } else {
            format!("{}..{}", values[i], values[j])
        });
        i = j + 1;
    }
    parts.join(", ")
}

/// Free pairs `(i, j)` with `1 <= i < j < n`, in free-bit order.
fn free_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Number of switching representatives, `2^((n-1)(n-2)/2)`.
pub fn representative_count(n: usize) -> u64 {
    1u64 << free_pairs(n).len()
}

/// Seidel matrix of the representative with the given free-bit code.
pub fn representative(n: usize, code: u64) -> SeidelMatrix {
    let mut words = vec![0u64; pair_count(n).div_ceil(64)];
    let mut p = 0;
    for i in 0..n {
        for j in i + 1..n {
            let bit = if i == 0 {
                true
            } else {
                let b = crate::matrix::pair_index(n, i, j) - (n - 1);
                code >> b & 1 == 1
            };
            if bit {
                words[p / 64] |= 1u64 << (p % 64);
            }
            p += 1;
        }
    }
    SeidelMatrix::from_words(n, words)
}

/// All switching representatives of order `n` in code order.
pub fn representatives(n: usize) -> impl Iterator<Item = SeidelMatrix> {
    (0..representative_count(n)).map(move |c| representative(n, c))
}

fn check_workers(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))
}

/// Visits every representative of shard `shard` in Gray-code order, passing
/// the free-bit code and the dense row-major matrix.
fn walk_shard(n: usize, shard: u64, mut visit: impl FnMut(u64, &[i64])) {
    let free = free_pairs(n);
    let f = free.len();
    let h = f.min(SHARD_BITS);
    let low = f - h;
    let mut code = shard << low;
    let mut a = vec![0i64; n * n];
    for j in 1..n {
        a[j] = 1;
        a[j * n] = -1;
    }
    for (b, &(i, j)) in free.iter().enumerate() {
        let v = if code >> b & 1 == 1 { 1 } else { -1 };
        a[i * n + j] = v;
        a[j * n + i] = -v;
    }
    visit(code, &a);
    for t in 1u64..(1u64 << low) {
        let b = t.trailing_zeros() as usize;
        let (i, j) = free[b];
        a[i * n + j] = -a[i * n + j];
        a[j * n + i] = -a[j * n + i];
        code ^= 1 << b;
        visit(code, &a);
    }
}

fn shard_count(n: usize) -> u64 {
    1u64 << free_pairs(n).len().min(SHARD_BITS)
}

fn dense_is_skew_conference(n: usize, a: &[i64]) -> bool {
    (0..n).all(|i| {
        (i + 1..n).all(|j| (0..n).map(|t| a[i * n + t] * a[j * n + t]).sum::<i64>() == 0)
    })
}

#[derive(Default)]
struct DetShard {
    best: BTreeMap<u64, u64>,
    sum: u128,
    sum_sq: u128,
    visited: u64,
    skew_conference: u64,
    violations: u64,
}

/// Exhaustive `sqrt(det)` set for even `n <= 8`, with exact moments and the
/// non-skew-conference bound checked on every representative.
pub fn enumerate_dets(n: usize, workers: usize) -> Result<SearchReport> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "exhaustive enumeration capped at n=8",
        });
    }
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "order must be at least 2",
        });
    }
    let start = Instant::now();
    let m = (n - 1) as u128;
    let fischer = m.pow(n as u32 - 2) * (m * m).saturating_sub(4);
    let pool = check_workers(workers)?;
    let shards: Vec<DetShard> = pool.install(|| {
        (0..shard_count(n))
            .into_par_iter()
            .map(|shard| {
                let mut acc = DetShard::default();
                walk_shard(n, shard, |code, a| {
                    let pf = pfaffian_i64(n, a).expect("order <= 8 fits in i64");
                    let v = pf.unsigned_abs();
                    let det = (v as u128) * (v as u128);
                    acc.best.entry(v).and_modify(|c| *c = (*c).min(code)).or_insert(code);
                    acc.sum += det;
                    acc.sum_sq += det * det;
                    acc.visited += 1;
                    if n >= 4 && det * det > fischer {
                        if dense_is_skew_conference(n, a) {
                            acc.skew_conference += 1;
                        } else {
                            acc.violations += 1;
                        }
                    } else if n == 2 {
                        acc.skew_conference += 1;
                    }
                });
                acc
            })
            .collect()
    });
    let mut best: BTreeMap<u64, u64> = BTreeMap::new();
    let (mut sum, mut sum_sq, mut visited, mut sc, mut violations) = (0u128, 0u128, 0u64, 0u64, 0u64);
    for s in shards {
        for (v, c) in s.best {
            best.entry(v).and_modify(|e| *e = (*e).min(c)).or_insert(c);
        }
        sum += s.sum;
        sum_sq += s.sum_sq;
        visited += s.visited;
        sc += s.skew_conference;
        violations += s.violations;
    }
    let mut set = DetSet::new(n, Coverage::Exhaustive);
    for (v, code) in best {
        set.insert(v, Provenance::Enumeration, Some(representative(n, code)))?;
    }
    let total = BigInt::from(visited);
    let mut report = SearchReport::from_det_set(&set, visited);
    report.moments = Some(ExactMoments {
        mean_det: BigRational::new(BigInt::from(sum), total.clone()),
        mean_det_sq: BigRational::new(BigInt::from(sum_sq), total),
    });
    report.skew_conference = Some(sc);
    report.bound_violations = Some(violations);
    report.duration_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Exact `(E[det], E[det^2])` over all Seidel matrices of even order `n <= 8`.
pub fn exact_moments(n: usize) -> Result<ExactMoments> {
    Ok(enumerate_dets(n, 1)?.moments.expect("determinant enumeration records moments"))
}

/// Zero at degrees `n - k`, `k` odd; `x^(n-k)` at least `C(n, k)` for even
/// `k`; `x^(n-2)` exactly `C(n, 2)`.
pub fn charpoly_pattern_ok(n: usize, p: &IntPolynomial) -> bool {
    if p.degree() != Some(n) || !p.is_monic() {
        return false;
    }
    let mut binom = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) / k;
        }
        let c = p.coeff(n - k);
        let ok = if k % 2 == 1 {
            c.is_zero()
        } else if k == 2 {
            c == binom
        } else {
            c >= binom
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Exhaustive set of characteristic polynomials for `n <= 8`.
pub fn enumerate_charpolys(n: usize, workers: usize) -> Result<SearchReport> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "exhaustive enumeration capped at n=8",
        });
    }
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "order must be at least 1",
        });
    }
    let start = Instant::now();
    let pool = check_workers(workers)?;
    let shards: Vec<(HashMap<Vec<i64>, u64>, u64)> = pool.install(|| {
        (0..shard_count(n))
            .into_par_iter()
            .map(|shard| {
                let mut seen: HashMap<Vec<i64>, u64> = HashMap::new();
                let mut visited = 0u64;
                walk_shard(n, shard, |code, a| {
                    let c = char_poly_i64(n, a).expect("order <= 8 fits in i64");
                    seen.entry(c).and_modify(|e| *e = (*e).min(code)).or_insert(code);
                    visited += 1;
                });
                (seen, visited)
            })
            .collect()
    });
    let mut merged: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let mut visited = 0;
    for (seen, v) in shards {
        visited += v;
        for (c, code) in seen {
            merged.entry(c).and_modify(|e| *e = (*e).min(code)).or_insert(code);
        }
    }
    let mut entries: Vec<CharPolyEntry> = merged
        .into_iter()
        .map(|(c, code)| {
            let coeffs: Vec<i64> = c.into_iter().rev().collect();
            CharPolyEntry {
                poly: IntPolynomial::from_i64s(&coeffs),
                certificate: MatrixRecord::from(&representative(n, code)),
            }
        })
        .collect();
    entries.sort_by(|a, b| a.poly.coeffs().iter().rev().cmp(b.poly.coeffs().iter().rev()));
    let mut set = DetSet::new(n, Coverage::Exhaustive);
    for e in &entries {
        let det = e.poly.coeff(0);
        let v = det.sqrt().to_u64().expect("small order");
        let s = SeidelMatrix::try_from(&e.certificate)?;
        set.insert(v, Provenance::Enumeration, Some(s))?;
    }
    let pattern_violations = entries.iter().filter(|e| !charpoly_pattern_ok(n, &e.poly)).count();
    let mut report = SearchReport::from_det_set(&set, visited);
    report.charpolys = Some(entries);
    report.pattern_violations = Some(pattern_violations as u64);
    report.duration_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Pfaffian of a dense skew-symmetric matrix of even order.
fn pf_dense(n: usize, a: &[i64]) -> BigInt {
    pfaffian_ff::<i128>(n, a)
        .map(|v| BigInt::from(v))
        .or_else(|| pfaffian_ff::<BigInt>(n, a))
        .expect("arbitrary precision")
}

/// Pfaffian after reversing each arc, from the minors `Pf(S_{ij})`:
/// the Pfaffian is linear in `s_ij` with coefficient
/// `(-1)^(i+j+1) Pf(S with rows/columns i, j removed)` for `i < j`.
fn reversal_pfaffians(n: usize, a: &[i64], pf: &BigInt) -> Vec<((usize, usize), BigInt)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    let mut minor = vec![0i64; (n - 2) * (n - 2)];
    for i in 0..n {
        for j in i + 1..n {
            let keep: Vec<usize> = (0..n).filter(|&v| v != i && v != j).collect();
            for (r, &u) in keep.iter().enumerate() {
                for (c, &w) in keep.iter().enumerate() {
                    minor[r * (n - 2) + c] = a[u * n + w];
                }
            }
            let m = pf_dense(n - 2, &minor);
            let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
            let delta = m * (2 * sign * a[i * n + j]);
            out.push(((i, j), pf - delta));
        }
    }
    out
}

fn dense(s: &SeidelMatrix) -> Vec<i64> {
    s.to_int_matrix().as_slice().to_vec()
}

fn flip(a: &mut [i64], n: usize, i: usize, j: usize) {
    a[i * n + j] = -a[i * n + j];
    a[j * n + i] = -a[j * n + i];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClimbResult {
    #[serde(skip)]
    pub matrix: SeidelMatrix,
    pub record: MatrixRecord,
    #[serde(with = "crate::record::bigint_json")]
    pub sqrt_det: BigInt,
    #[serde(with = "crate::record::bigint_json")]
    pub det: BigInt,
    pub steps: u64,
    pub restarts: u64,
    pub seed: u64,
}

/// Greedy ascent from `s`: repeatedly reverses the arc with the largest
/// factor `(1 + 2 S^{-1}_{ij})^2 > 1`, ties to the smallest `(i, j)`, until
/// none improves or `budget` reversals are spent. Returns the final matrix,
/// its `|Pf|` and the reversals made.
pub fn climb_from(s: &SeidelMatrix, budget: u64) -> Result<(SeidelMatrix, BigInt, u64)> {
    let n = s.order();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let mut a = dense(s);
    let (pf, steps) = ascend(n, &mut a, budget);
    let m = crate::linalg::IntMatrix::from_rows(
        &a.chunks(n.max(1)).map(|r| r.to_vec()).collect::<Vec<_>>(),
    )?;
    Ok((SeidelMatrix::from_int_matrix(&m)?, pf.abs(), steps))
}

fn ascend(n: usize, a: &mut [i64], budget: u64) -> (BigInt, u64) {
    let mut pf = pf_dense(n, a);
    let mut steps = 0;
    while steps < budget && n >= 2 {
        let cur = pf.abs();
        let mut best: Option<((usize, usize), BigInt)> = None;
        for (arc, next) in reversal_pfaffians(n, a, &pf) {
            if next.abs() > cur && best.as_ref().is_none_or(|(_, b)| next.abs() > b.abs()) {
                best = Some((arc, next));
            }
        }
        let Some(((i, j), next)) = best else { break };
        flip(a, n, i, j);
        pf = next;
        steps += 1;
    }
    (pf, steps)
}

/// Hill climbing for a large determinant at even order `n`: random starts,
/// greedy ascent, restart at each local maximum while budget remains. Stops
/// early at the Hadamard bound `(n-1)^(n/2)`.
pub fn hill_climb_max(n: usize, budget: u64, seed: u64) -> Result<ClimbResult> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidParameter(format!("n = {n} must be positive and even")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ceiling = Pow::pow(BigInt::from(n - 1), n as u64);
    let mut spent = 0u64;
    let mut restarts = 0u64;
    let mut best: Option<(SeidelMatrix, BigInt)> = None;
    loop {
        let start = SeidelMatrix::random(n, &mut rng);
        let mut a = dense(&start);
        let (pf, steps) = ascend(n, &mut a, budget.saturating_sub(spent));
        spent += steps + 1;
        let v = pf.abs();
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            let rows: Vec<Vec<i64>> = a.chunks(n).map(|r| r.to_vec()).collect();
            best = Some((SeidelMatrix::from_rows(&rows)?, v.clone()));
        }
        if spent >= budget || Pow::pow(&v, 4u32) == ceiling {
            break;
        }
        restarts += 1;
    }
    let (matrix, sqrt_det) = best.expect("at least one climb");
    Ok(ClimbResult {
        record: MatrixRecord::from(&matrix),
        det: &sqrt_det * &sqrt_det,
        matrix,
        sqrt_det,
        steps: spent,
        restarts,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Construction,
    Join,
    Walk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub matrix: SeidelMatrix,
    pub strategy: Strategy,
    pub certificate: ConstructionCertificate,
    /// Walk steps spent (zero for the deterministic strategies).
    pub steps: u64,
}

impl Membership {
    pub fn provenance(&self) -> Provenance {
        match self.strategy {
            Strategy::Construction => Provenance::Construction,
            Strategy::Join => Provenance::Join,
            Strategy::Walk => Provenance::Walk,
        }
    }
}

/// Largest `k` reachable by the bordered construction at order `n`.
fn construction_limit(n: usize) -> u64 {
    if n < 4 {
        if n == 2 {
            1
        } else {
            0
        }
    } else {
        ((n - 2) * (n - 2) / 2 + 1) as u64
    }
}

/// Smallest even order at which `v` has a cached construction, with a
/// builder for it.
fn cached_order(v: u64, max_order: usize) -> Option<usize> {
    let mut order = 2;
    while order <= max_order {
        if v % 2 == 1 && v <= construction_limit(order) {
            return Some(order);
        }
        if skew_conference_value(order) == Some(v) {
            return Some(order);
        }
        order += 2;
    }
    None
}

/// `sqrt(det)` of the bordered residue matrix at order `m`, if `m - 1` is a
/// prime `3 (mod 4)`.
fn skew_conference_value(m: usize) -> Option<u64> {
    let p = m as u64 - 1;
    if m % 4 == 0 && constructions::is_prime(p) {
        (p as u128).checked_pow((m / 4) as u32).and_then(|v| u64::try_from(v).ok())
    } else {
        None
    }
}

fn build_cached(v: u64, order: usize) -> SeidelMatrix {
    if order == 2 {
        return transitive(2);
    }
    if v <= construction_limit(order) {
        return constructions::target_determinant(order - 2, v)
            .expect("within range")
            .matrix;
    }
    border_all_ones(&quadratic_residue(order as u64 - 1).expect("prime 3 mod 4"))
}

fn pad(s: SeidelMatrix, n: usize) -> SeidelMatrix {
    let m = s.order();
    if m == n {
        s
    } else {
        join(&s, &transitive(n - m))
    }
}

/// Looks for an order-`n` matrix with `sqrt(det) = k`: first the bordered
/// construction, then a join `A -> B -> R` of cached constructions with
/// `sqrt(det A) sqrt(det B) = k`, then seeded reversal walks that greedily
/// move `|Pf|` toward `k`. `None` means the budget ran out, not that `k` is
/// absent.
pub fn find_membership(n: usize, k: u64, budget: u64, seed: u64) -> Result<Option<Membership>> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidParameter(format!("n = {n} must be positive and even")));
    }
    if k % 2 == 0 {
        return Err(Error::InvalidParameter(format!("k = {k} must be odd")));
    }
    let certificate = |kind: ConstructionKind, params: Params| ConstructionCertificate {
        kind,
        claim: Claim::SqrtDet { value: BigInt::from(k) },
        params,
    };
    if k <= construction_limit(n) {
        let matrix = if n == 2 {
            transitive(2)
        } else {
            constructions::target_determinant(n - 2, k)?.matrix
        };
        let params = Params {
            n: Some(n - 2),
            k: Some(k),
            ..Params::default()
        };
        return Ok(Some(Membership {
            matrix,
            strategy: Strategy::Construction,
            certificate: certificate(ConstructionKind::Quadratic, params),
            steps: 0,
        }));
    }
    // join of two cached pieces, padded with a transitive block
    let mut d = 1u64;
    while d * d <= k {
        if k % d == 0 {
            let e = k / d;
            if let (Some(a), Some(b)) = (cached_order(d, n), cached_order(e, n)) {
                if a + b <= n || (d == 1 && b <= n) {
                    let m = if d == 1 {
                        build_cached(e, b)
                    } else {
                        join(&build_cached(d, a), &build_cached(e, b))
                    };
                    let matrix = pad(m, n);
                    debug_assert_eq!(matrix.determinant(), BigInt::from(k) * k);
                    return Ok(Some(Membership {
                        matrix,
                        strategy: Strategy::Join,
                        certificate: certificate(
                            ConstructionKind::Join,
                            Params {
                                n: Some(n),
                                k: Some(k),
                                ..Params::default()
                            },
                        ),
                        steps: 0,
                    }));
                }
            }
        }
        d += 2;
    }
    Ok(reversal_walk(n, k, budget, seed).map(|(matrix, steps)| Membership {
        matrix,
        strategy: Strategy::Walk,
        certificate: certificate(
            ConstructionKind::Reversal,
            Params {
                n: Some(n),
                k: Some(k),
                ..Params::default()
            },
        ),
        steps,
    }))
}

fn reversal_walk(n: usize, k: u64, budget: u64, seed: u64) -> Option<(SeidelMatrix, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = BigInt::from(k);
    let dist = |pf: &BigInt| (pf.abs() - &target).abs();
    let mut spent = 0;
    while spent < budget {
        let mut a = dense(&SeidelMatrix::random(n, &mut rng));
        let mut pf = pf_dense(n, &a);
        spent += 1;
        loop {
            if dist(&pf).is_zero() {
                let rows: Vec<Vec<i64>> = a.chunks(n).map(|r| r.to_vec()).collect();
                return Some((SeidelMatrix::from_rows(&rows).ok()?, spent));
            }
            if spent >= budget {
                break;
            }
            let cur = dist(&pf);
            let moves = reversal_pfaffians(n, &a, &pf);
            let best = moves
                .into_iter()
                .filter(|(_, p)| dist(p) < cur)
                .min_by(|(x, p), (y, q)| dist(p).cmp(&dist(q)).then(x.cmp(y)));
            let Some(((i, j), next)) = best else {
                // local optimum: one random reversal, then keep descending
                if rng.random_bool(0.5) {
                    break;
                }
                let i = rng.random_range(0..n);
                let j = (i + 1 + rng.random_range(0..n - 1)) % n;
                flip(&mut a, n, i.min(j), i.max(j));
                pf = pf_dense(n, &a);
                spent += 1;
                continue;
            };
            flip(&mut a, n, i, j);
            pf = next;
            spent += 1;
        }
    }
    None
}

/// Empirical moments of `det` over uniformly random Seidel matrices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloStats {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub shards: u64,
    pub mean_det: f64,
    pub se_det: f64,
    pub mean_det_sq: f64,
    pub se_det_sq: f64,
}

/// Sampling with `SAMPLE_SHARDS` independent ChaCha8 streams of the master
/// seed; the result does not depend on the worker count.
pub fn monte_carlo_stats(n: usize, samples: u64, seed: u64, workers: usize) -> Result<MonteCarloStats> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidParameter(format!("n = {n} must be positive and even")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pool = check_workers(workers)?;
    let sums: Vec<[BigInt; 4]> = pool.install(|| {
        (0..SAMPLE_SHARDS)
            .into_par_iter()
            .map(|shard| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(shard);
                let count = samples / SAMPLE_SHARDS + u64::from(shard < samples % SAMPLE_SHARDS);
                let mut a = vec![0i64; n * n];
                let mut acc: [BigInt; 4] = Default::default();
                let mut word = 0u64;
                let mut left = 0;
                for _ in 0..count {
                    for &(i, j) in &pairs {
                        if left == 0 {
                            word = rng.random();
                            left = 64;
                        }
                        let v = if word & 1 == 1 { 1 } else { -1 };
                        word >>= 1;
                        left -= 1;
                        a[i * n + j] = v;
                        a[j * n + i] = -v;
                    }
                    let det = match pfaffian_i64(n, &a) {
                        Some(p) => BigInt::from(p as i128 * p as i128),
                        None => Pow::pow(pf_dense(n, &a), 2u32),
                    };
                    let sq = &det * &det;
                    acc[0] += &det;
                    acc[2] += &sq * &det;
                    acc[3] += &sq * &sq;
                    acc[1] += sq;
                }
                acc
            })
            .collect()
    });
    let mut total: [BigInt; 4] = Default::default();
    for s in sums {
        for (t, v) in total.iter_mut().zip(s) {
            *t += v;
        }
    }
    let nn = BigInt::from(samples);
    let mean = |s: &BigInt| BigRational::new(s.clone(), nn.clone());
    let se = |s1: &BigInt, s2: &BigInt| -> f64 {
        if samples < 2 {
            return 0.0;
        }
        // sample variance (s2 - s1^2/N) / (N - 1)
        let var = (BigRational::from_integer(s2.clone())
            - BigRational::new(s1 * s1, nn.clone()))
            / BigRational::from_integer(BigInt::from(samples - 1));
        (var.to_f64().unwrap_or(f64::INFINITY) / samples as f64).sqrt()
    };
    Ok(MonteCarloStats {
        n,
        samples,
        seed,
        shards: SAMPLE_SHARDS,
        mean_det: mean(&total[0]).to_f64().unwrap_or(f64::NAN),
        se_det: se(&total[0], &total[1]),
        mean_det_sq: mean(&total[1]).to_f64().unwrap_or(f64::NAN),
        se_det_sq: se(&total[1], &total[3]),
    })
}
