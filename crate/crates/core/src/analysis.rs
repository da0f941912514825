//! Closed-form statistics, bound families and spectral checks.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntPolynomial};
use crate::matrix::{Graph, SeidelMatrix};
use crate::record::bigint_json;

/// `m!! = m (m-2) (m-4) ...`, with `0!! = 1`.
pub fn double_factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut t = m;
    while t > 1 {
        acc *= t;
        t -= 2;
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Mean determinant of a uniformly random Seidel matrix of even order `n`.
pub fn expected_det(n: usize) -> Result<BigInt> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "order must be at least 2",
        });
    }
    Ok(double_factorial(n as u64 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentRow {
    pub n: usize,
    #[serde(with = "bigint_json")]
    pub y: BigInt,
    /// `E[det^2] = y (n-1)!!`.
    #[serde(with = "bigint_json")]
    pub z: BigInt,
    #[serde(with = "bigint_json")]
    pub mean: BigInt,
    #[serde(with = "bigint_json")]
    pub variance: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentTable {
    pub rows: Vec<MomentRow>,
}

impl MomentTable {
    pub fn row(&self, n: usize) -> Option<&MomentRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,y,z,mean,variance\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.y, r.z, r.mean, r.variance));
        }
        out
    }

    /// Right-aligned text table with columns `n | y_n | z_n`.
    pub fn to_table(&self) -> String {
        let cells: Vec<[String; 3]> = self
            .rows
            .iter()
            .map(|r| [r.n.to_string(), r.y.to_string(), r.z.to_string()])
            .collect();
        let header = ["n".to_string(), "y_n".to_string(), "z_n".to_string()];
        render_table(&header, &cells)
    }
}

fn render_table<const C: usize>(header: &[String; C], rows: &[[String; C]]) -> String {
    let mut width = [0usize; C];
    for row in std::iter::once(header).chain(rows.iter()) {
        for (w, cell) in width.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |row: &[String; C]| {
        row.iter()
            .zip(width.iter())
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(
        &width
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("-+-"),
    );
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

/// `y_0 = y_2 = 1`, `y_n = (n-1) y_{n-2} + (2n-4) y_{n-4}`, for even
/// `2 <= n <= max_n`.
pub fn moment_table(max_n: usize) -> MomentTable {
    let mut y: Vec<BigInt> = vec![BigInt::one(), BigInt::one()]; // y_0, y_2
    let mut rows = Vec::new();
    let mut n = 2;
    while n <= max_n {
        let idx = n / 2;
        if idx >= y.len() {
            let next = BigInt::from(n - 1) * &y[idx - 1] + BigInt::from(2 * n - 4) * &y[idx - 2];
            y.push(next);
        }
        let df = double_factorial(n as u64 - 1);
        let yn = y[idx].clone();
        rows.push(MomentRow {
            n,
            z: &yn * &df,
            variance: &df * (&yn - &df),
            mean: df,
            y: yn,
        });
        n += 2;
    }
    MomentTable { rows }
}

/// Number of `k`-edge matchings in `K_n`: `C(n, 2k) (2k-1)!!`.
pub fn matching_count(n: usize, k: usize) -> Result<BigInt> {
    if 2 * k > n {
        return Err(Error::InvalidParameter(format!("2k = {} exceeds n = {n}", 2 * k)));
    }
    let two_k = 2 * k as u64;
    Ok(binomial(n as u64, two_k) * double_factorial(two_k.saturating_sub(1)))
}

/// Mean characteristic polynomial over all Seidel matrices of order `n`.
pub fn expected_charpoly(n: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 0..=n / 2 {
        coeffs[n - 2 * k] = matching_count(n, k).expect("2k <= n");
    }
    IntPolynomial::new(coeffs)
}

/// Matching numbers `m_0, m_1, ..` of a graph, by branching on the lowest
/// edge.
pub fn matching_numbers(g: &Graph) -> Vec<BigInt> {
    fn go(edges: &[(usize, usize)], used: &mut Vec<bool>, size: usize, counts: &mut Vec<BigInt>) {
        if counts.len() <= size {
            counts.push(BigInt::zero());
        }
        counts[size] += 1;
        for (idx, &(a, b)) in edges.iter().enumerate() {
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                go(&edges[idx + 1..], used, size + 1, counts);
                used[a] = false;
                used[b] = false;
            }
        }
    }
    let mut counts = Vec::new();
    let mut used = vec![false; g.order()];
    go(g.edges(), &mut used, 0, &mut counts);
    counts
}

/// Mean characteristic polynomial over all sign assignments on the edges of
/// `g`: the matching polynomial `sum m_k x^(n-2k)`.
pub fn expected_charpoly_graph(g: &Graph) -> IntPolynomial {
    let n = g.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, m) in matching_numbers(g).into_iter().enumerate() {
        coeffs[n - 2 * k] = m;
    }
    IntPolynomial::new(coeffs)
}

/// A nonnegative real stored through its exact fourth power, so comparisons
/// with integers are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticRoot {
    pub fourth: BigRational,
}

fn exact_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(k);
    (Pow::pow(&r, k) == *v).then_some(r)
}

impl QuarticRoot {
    pub fn from_fourth(fourth: BigRational) -> Self {
        QuarticRoot { fourth }
    }

    /// `base^(num/4)` for a nonnegative integer base.
    pub fn power(base: u64, num: i64) -> Self {
        let b = BigRational::from_integer(BigInt::from(base));
        let fourth = if num >= 0 {
            Pow::pow(&b, num as u64)
        } else {
            Pow::pow(&b, (-num) as u64).recip()
        };
        QuarticRoot { fourth }
    }

    /// The value itself when it is an integer.
    pub fn exact_integer(&self) -> Option<BigInt> {
        if !self.fourth.is_integer() {
            return None;
        }
        exact_root(&self.fourth.to_integer(), 4)
    }

    pub fn is_integral(&self) -> bool {
        self.exact_integer().is_some()
    }

    /// Exact comparison of the value with `k`.
    pub fn cmp_int(&self, k: &BigInt) -> Ordering {
        if k.is_negative() {
            return Ordering::Greater;
        }
        self.fourth.cmp(&BigRational::from_integer(Pow::pow(k, 4u32)))
    }

    pub fn to_f64(&self) -> f64 {
        self.fourth.to_f64().unwrap_or(f64::INFINITY).powf(0.25)
    }
}

impl fmt::Display for QuarticRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "~{:.4}", self.to_f64()),
        }
    }
}

impl Serialize for QuarticRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuarticRoot", 3)?;
        st.serialize_field("fourth_power", &self.fourth.to_string())?;
        st.serialize_field(
            "exact",
            &self.exact_integer().map(|v| crate::record::bigint_to_number(&v)),
        )?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

/// Bounds on `sqrt(det S)` at order `n`, all as [`QuarticRoot`]s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsProfile {
    pub n: usize,
    /// Upper bound `(n-1)^(n/4)`, attained exactly by skew-conference matrices.
    pub hadamard_sqrt: QuarticRoot,
    /// Sharper upper bound `(2n-3)^(1/2) (n-3)^((n-2)/4)`, only for `n = 2 (mod 4)`.
    pub mod2_bound: Option<QuarticRoot>,
    /// Upper bound for non-skew-conference matrices:
    /// `sqrt((n-1)^((n-2)/2) sqrt((n-1)^2 - 4))`.
    pub fischer_bound: QuarticRoot,
    /// Lower bound `(n+1)^((n-2)/4)` when a skew-conference matrix of order
    /// `n + 2` exists.
    pub scm_minor: QuarticRoot,
    /// Width `(n-1)^((n-8)/4)` of the guaranteed gap below the maximum.
    pub gap_threshold: QuarticRoot,
}

impl BoundsProfile {
    pub fn to_table(&self) -> String {
        let row = |name: &str, q: &QuarticRoot| {
            [name.to_string(), q.to_string(), q.fourth.to_string()]
        };
        let mut rows = vec![row("hadamard_sqrt", &self.hadamard_sqrt)];
        if let Some(m) = &self.mod2_bound {
            rows.push(row("mod2_bound", m));
        }
        rows.push(row("fischer_bound", &self.fischer_bound));
        rows.push(row("scm_minor", &self.scm_minor));
        rows.push(row("gap_threshold", &self.gap_threshold));
        let header = ["bound".to_string(), "value".to_string(), "fourth power".to_string()];
        format!("n = {}\n{}", self.n, render_table(&header, &rows))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bound,value,fourth_power\n");
        let mut push = |name: &str, q: &QuarticRoot| {
            out.push_str(&format!("{name},{q},{}\n", q.fourth));
        };
        push("hadamard_sqrt", &self.hadamard_sqrt);
        if let Some(m) = &self.mod2_bound {
            push("mod2_bound", m);
        }
        push("fischer_bound", &self.fischer_bound);
        push("scm_minor", &self.scm_minor);
        push("gap_threshold", &self.gap_threshold);
        out
    }
}

pub fn bounds_profile(n: usize) -> Result<BoundsProfile> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::OrderOutOfRange {
            n,
            reason: "bounds need an even order n >= 4",
        });
    }
    let m = n as u64 - 1;
    let ni = n as i64;
    let int = |v: BigInt| BigRational::from_integer(v);
    let mod2_bound = (n % 4 == 2).then(|| {
        QuarticRoot::from_fourth(int(
            Pow::pow(BigInt::from(2 * n as u64 - 3), 2u32) * Pow::pow(BigInt::from(n as u64 - 3), n as u64 - 2),
        ))
    });
    let fischer = Pow::pow(BigInt::from(m), n as u64 - 2) * (BigInt::from(m * m) - 4);
    Ok(BoundsProfile {
        n,
        hadamard_sqrt: QuarticRoot::power(m, ni),
        mod2_bound,
        fischer_bound: QuarticRoot::from_fourth(int(fischer)),
        scm_minor: QuarticRoot::power(m + 2, ni - 2),
        gap_threshold: QuarticRoot::power(m, ni - 8),
    })
}

/// `det <= (n-1)^((n-2)/2) sqrt((n-1)^2 - 4)`, decided by squaring.
pub fn within_fischer_bound(n: usize, det: &BigInt) -> bool {
    if n < 2 {
        return true;
    }
    let m = BigInt::from(n as u64 - 1);
    let rhs = Pow::pow(&m, n as u64 - 2) * (&m * &m - 4);
    det * det <= rhs
}

/// Imaginary parts of the eigenvalues of `S`, descending, from the
/// eigenvalues of the positive semidefinite matrix `-S^2`.
pub fn imaginary_spectrum(m: &IntMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    let sq = m.mul(m);
    let a = DMatrix::from_fn(n, n, |i, j| -(sq.get(i, j) as f64));
    let eig = SymmetricEigen::try_new(a, 1e-12, 10_000).ok_or(Error::EigenSolver)?;
    let mut mu: Vec<f64> = eig.eigenvalues.iter().map(|v| v.max(0.0)).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    // Eigenvalues of -S^2 come in equal pairs (one per +-i sqrt(mu)); an odd
    // order adds a single zero at the end.
    let mut parts = Vec::with_capacity(n);
    for pair in mu.chunks(2) {
        if pair.len() == 2 {
            let r = ((pair[0] + pair[1]) / 2.0).sqrt();
            parts.push(r);
            parts.push(-r);
        } else {
            parts.push(0.0);
        }
    }
    parts.sort_by(|a, b| b.total_cmp(a));
    Ok(parts)
}

/// Slack allowed in interlacing comparisons.
pub const INTERLACE_TOL: f64 = 1e-7;

/// Cauchy interlacing between `S` and its principal submatrix on `subset`:
/// `lambda_{n-m+j} <= theta_j <= lambda_j`.
pub fn interlace_check(s: &SeidelMatrix, subset: &[usize]) -> Result<bool> {
    let n = s.order();
    if subset.is_empty() || subset.len() > n {
        return Err(Error::InvalidParameter("subset must be nonempty and within the order".into()));
    }
    check_vertices(subset, n)?;
    let lambda = imaginary_spectrum(&s.to_int_matrix())?;
    let theta = imaginary_spectrum(&s.principal(subset).to_int_matrix())?;
    let m = theta.len();
    Ok((0..m).all(|j| {
        lambda[n - m + j] - INTERLACE_TOL <= theta[j] && theta[j] <= lambda[j] + INTERLACE_TOL
    }))
}

fn check_vertices(subset: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("vertex {} repeated", v + 1)));
        }
    }
    Ok(())
}

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|v| !subset.contains(v)).collect()
}

/// `(x^2 + n - 1)^(n/2 - k) c_{S[a]}(x) = c_{S(a)}(x)` for a skew-conference
/// `S` and `|a| = k`, where `S(a)` deletes the rows and columns in `a`. For
/// `k > n/2` the identity is checked in its equivalent complemented form.
pub fn jacobi_factor_check(s: &SeidelMatrix, subset: &[usize]) -> Result<bool> {
    if !crate::constructions::is_skew_conference(s) {
        return Err(Error::NotSkewConference);
    }
    let n = s.order();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    check_vertices(subset, n)?;
    let rest = complement(subset, n);
    let (small, large) = if subset.len() <= n / 2 {
        (subset.to_vec(), rest)
    } else {
        (rest, subset.to_vec())
    };
    let factor = IntPolynomial::x2_plus(n as i64 - 1).pow((n / 2 - small.len()) as u32);
    let lhs = factor.mul(&s.principal(&small).char_poly());
    Ok(lhs == s.principal(&large).char_poly())
}

/// Every double deletion of a skew-conference matrix of order `n + 2` has
/// `sqrt(det) = (n + 1)^((n - 2)/4)`, i.e. `det = (n+1)^((n-2)/2)`.
pub fn scm_minor_check(s: &SeidelMatrix) -> Result<bool> {
    if !crate::constructions::is_skew_conference(s) {
        return Err(Error::NotSkewConference);
    }
    let order = s.order();
    if order % 2 == 1 || order < 4 {
        return Err(Error::OrderOutOfRange {
            n: order,
            reason: "need an even skew-conference order >= 4",
        });
    }
    let expected = Pow::pow(BigInt::from(order as u64 - 1), (order as u64 - 4) / 2);
    let pairs: Vec<(usize, usize)> = (0..order)
        .flat_map(|i| (i + 1..order).map(move |j| (i, j)))
        .collect();
    Ok(pairs.par_iter().all(|&(i, j)| {
        let keep: Vec<usize> = (0..order).filter(|&v| v != i && v != j).collect();
        s.principal(&keep).determinant() == expected
    }))
}

/// Bits of precision for the fixed-point fallback.
const FIXED_BITS: u64 = 256;

/// `pi * 2^FIXED_BITS` (truncated) via Machin's formula.
fn fixed_pi() -> BigInt {
    // arctan(1/x) * 2^bits with guard bits
    fn arctan_inv(x: u64, one: &BigInt) -> BigInt {
        let x2 = BigInt::from(x * x);
        let mut term = one / x;
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term /= &x2;
            let t = &term / (2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    }
    let one = BigInt::one() << (FIXED_BITS + 32);
    let pi = (arctan_inv(5, &one) * 16) - (arctan_inv(239, &one) * 4);
    pi >> 32
}

/// `(sin x, cos x) * 2^FIXED_BITS` for a fixed-point `x` in `[0, pi/2]`.
fn fixed_sin_cos(x: &BigInt) -> (BigInt, BigInt) {
    let one = BigInt::one() << FIXED_BITS;
    let mut sin = BigInt::zero();
    let mut cos = BigInt::zero();
    let mut term = one.clone(); // x^k / k!
    let mut k = 0u64;
    while !term.is_zero() {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = ((term * x) >> FIXED_BITS) / k;
    }
    (sin, cos)
}

/// `cot(pi / (2k))^2` compared with `n - 1`.
fn cot_squared_cmp(n: usize, k: usize) -> Ordering {
    let target = n as f64 - 1.0;
    // cot^2 is rational only for k <= 3.
    match k {
        1 => return 0.0f64.total_cmp(&target),
        2 => return 1.0f64.total_cmp(&target),
        3 => return 3.0f64.total_cmp(&target),
        _ => {}
    }
    let c = 1.0 / (std::f64::consts::PI / (2.0 * k as f64)).tan();
    let c2 = c * c;
    if (c2 - target).abs() > 1e-6 * target.max(1.0) {
        return c2.total_cmp(&target);
    }
    let x = fixed_pi() / (2 * k as u64);
    let (sin, cos) = fixed_sin_cos(&x);
    // cot^2 vs n - 1  <=>  cos^2 vs (n - 1) sin^2; irrational for k >= 4 so
    // 256 bits separate the two sides.
    (&cos * &cos).cmp(&(&sin * &sin * BigInt::from(n as u64 - 1)))
}

/// True when `R_k` cannot be a principal submatrix of an order-`n`
/// skew-conference matrix: `R_k` has an eigenvalue of modulus
/// `sin(pi/k) / (1 - cos(pi/k)) = cot(pi/(2k))`, which must not exceed
/// `sqrt(n - 1)` under interlacing.
pub fn transitive_obstruction(n: usize, k: usize) -> bool {
    if n == 0 {
        return k > 0;
    }
    k >= 1 && cot_squared_cmp(n, k) == Ordering::Greater
}

/// The real `N_c` solving `cot(pi c / (2N)) = sqrt(N - 1)`: beyond it
/// `R_{n/c}` is obstructed.
pub fn obstruction_threshold(c: f64) -> f64 {
    let f = |n: f64| 1.0 / (std::f64::consts::PI * c / (2.0 * n)).tan() - (n - 1.0).sqrt();
    let (mut lo, mut hi) = (c.max(1.0) + 1e-9, 1e6);
    // f < 0 just above c (cot near zero), f > 0 for large n
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{border_all_ones, quadratic_residue, transitive};

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
        assert_eq!(expected_det(14).unwrap(), BigInt::from(13 * 11 * 9 * 7 * 5 * 3));
        assert!(expected_det(5).is_err());
        assert!(expected_det(0).is_err());
    }

    #[test]
    fn moments_small() {
        let t = moment_table(6);
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.row(4).unwrap().variance, BigInt::from(12));
        assert_eq!(t.row(6).unwrap().z, BigInt::from(645));
        assert!(moment_table(0).rows.is_empty());
        assert!(t.to_table().contains("645"));
    }

    #[test]
    fn matchings() {
        assert_eq!(matching_count(6, 3).unwrap(), BigInt::from(15));
        assert_eq!(matching_count(6, 2).unwrap(), BigInt::from(45));
        assert_eq!(matching_count(6, 1).unwrap(), BigInt::from(15));
        assert_eq!(matching_count(9, 0).unwrap(), BigInt::one());
        assert!(matching_count(5, 3).is_err());
        assert_eq!(expected_charpoly(3), IntPolynomial::from_i64s(&[0, 3, 0, 1]));
        assert_eq!(expected_charpoly(6), IntPolynomial::from_i64s(&[15, 0, 45, 0, 15, 0, 1]));
    }

    #[test]
    fn graph_matchings() {
        let c4 = Graph::cycle(4);
        assert_eq!(expected_charpoly_graph(&c4), IntPolynomial::from_i64s(&[2, 0, 4, 0, 1]));
        assert_eq!(expected_charpoly_graph(&Graph::edgeless(5)), IntPolynomial::monomial(BigInt::one(), 5));
        for n in 1..8 {
            assert_eq!(expected_charpoly_graph(&Graph::complete(n)), expected_charpoly(n));
        }
    }

    #[test]
    fn quartic_roots() {
        assert_eq!(QuarticRoot::power(3, 4).exact_integer(), Some(BigInt::from(3)));
        assert_eq!(QuarticRoot::power(9, 10).exact_integer(), Some(BigInt::from(243)));
        assert_eq!(QuarticRoot::power(5, 6).exact_integer(), None);
        let q = QuarticRoot::power(5, 6); // ~11.18
        assert_eq!(q.cmp_int(&BigInt::from(11)), Ordering::Greater);
        assert_eq!(q.cmp_int(&BigInt::from(12)), Ordering::Less);
        assert_eq!(QuarticRoot::power(3, -4).fourth, BigRational::new(1.into(), 81.into()));
    }

    #[test]
    fn bounds_examples() {
        let b4 = bounds_profile(4).unwrap();
        assert_eq!(b4.hadamard_sqrt.exact_integer(), Some(BigInt::from(3)));
        assert!(b4.mod2_bound.is_none());
        let b6 = bounds_profile(6).unwrap();
        assert_eq!(b6.mod2_bound.unwrap().exact_integer(), Some(BigInt::from(9)));
        assert!(!b6.hadamard_sqrt.is_integral());
        let b12 = bounds_profile(12).unwrap();
        assert_eq!(b12.hadamard_sqrt.exact_integer(), Some(BigInt::from(1331)));
        assert_eq!(b12.gap_threshold.exact_integer(), Some(BigInt::from(11)));
        assert_eq!(b12.scm_minor.exact_integer(), None);
        assert_eq!(bounds_profile(8).unwrap().scm_minor.exact_integer(), Some(BigInt::from(27)));
        assert!(bounds_profile(5).is_err());
        assert!(bounds_profile(2).is_err());
    }

    #[test]
    fn fischer() {
        // n = 4: 9 * 5 = 45, det <= sqrt(45) ~ 6.7
        assert!(within_fischer_bound(4, &BigInt::from(1)));
        assert!(!within_fischer_bound(4, &BigInt::from(9)));
        // n = 8: 7^6 * 45, sqrt ~ 2301.5
        assert!(within_fischer_bound(8, &BigInt::from(35 * 35)));
        assert!(!within_fischer_bound(8, &BigInt::from(49 * 49)));
    }

    #[test]
    fn spectrum_of_small_matrices() {
        let s = transitive(3);
        let sp = imaginary_spectrum(&s.to_int_matrix()).unwrap();
        let r3 = 3f64.sqrt();
        assert!((sp[0] - r3).abs() < 1e-9 && sp[1].abs() < 1e-9 && (sp[2] + r3).abs() < 1e-9);
    }

    #[test]
    fn interlacing_on_conference() {
        let c = border_all_ones(&quadratic_residue(3).unwrap());
        for v in 0..4 {
            let subset: Vec<usize> = (0..4).filter(|&u| u != v).collect();
            assert!(interlace_check(&c, &subset).unwrap());
        }
        assert!(interlace_check(&c, &[0, 1, 2, 3]).unwrap());
        assert!(interlace_check(&c, &[]).is_err());
        assert!(interlace_check(&c, &[4]).is_err());
    }

    #[test]
    fn jacobi_small() {
        let c = border_all_ones(&quadratic_residue(3).unwrap());
        for v in 0..4 {
            assert!(jacobi_factor_check(&c, &[v]).unwrap());
        }
        assert!(jacobi_factor_check(&c, &[0, 1, 2]).unwrap());
        assert!(jacobi_factor_check(&transitive(4), &[0]).is_err());
    }

    #[test]
    fn scm_minor_small() {
        let c = border_all_ones(&quadratic_residue(3).unwrap());
        assert!(scm_minor_check(&c).unwrap());
        assert!(scm_minor_check(&transitive(4)).is_err());
    }

    #[test]
    fn obstruction() {
        assert!(!transitive_obstruction(8, 2));
        assert!(transitive_obstruction(8, 20));
        // cot(pi/8)^2 = 3 + 2 sqrt 2 ~ 5.83
        assert!(transitive_obstruction(6, 4));
        assert!(!transitive_obstruction(7, 4));
        // exact tie: cot(pi/6)^2 = 3 = n - 1 at n = 4
        assert!(!transitive_obstruction(4, 3));
        assert!(transitive_obstruction(3, 3));
        assert!((obstruction_threshold(2.0) - 9.5).abs() < 0.1);
        assert!((obstruction_threshold(3.0) - 21.9).abs() < 0.1);
        assert!((obstruction_threshold(4.0) - 39.0).abs() < 0.5);
    }

    #[test]
    fn fixed_point_pi() {
        let pi = fixed_pi();
        let approx = (pi >> (FIXED_BITS - 52)).to_f64().unwrap() / (1u64 << 52) as f64;
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        let (s, c) = fixed_sin_cos(&(fixed_pi() / 6u32));
        let s = (s >> (FIXED_BITS - 52)).to_f64().unwrap() / (1u64 << 52) as f64;
        let c = (c >> (FIXED_BITS - 52)).to_f64().unwrap() / (1u64 << 52) as f64;
        assert!((s - 0.5).abs() < 1e-15 && (c - 0.75f64.sqrt()).abs() < 1e-15);
    }
}
