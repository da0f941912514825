//! Explicit Seidel matrices with checkable claims.
//!
//! Every construction can be paired with a [`ConstructionCertificate`] that
//! states what the matrix is supposed to achieve. [`ConstructionCertificate::verify`]
//! recomputes the claim from the matrix alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntPolynomial};
use crate::matrix::{SeidelMatrix, Tournament};
use crate::record::bigint_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Transitive,
    Join,
    Reversal,
    /// Bordered transitive matrix with a prescribed determinant.
    Quadratic,
    /// Quadratic residue tournament.
    Residue,
    /// All-ones bordering.
    Bordered,
    Hc1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Claim {
    /// `sqrt(det S)`; zero for odd orders.
    SqrtDet {
        #[serde(with = "bigint_json")]
        value: BigInt,
    },
    /// `S S^T = (n-1) I`.
    SkewConference,
    /// Every ordered pair of vertices dominates exactly `common` vertices.
    DoublyRegular { common: usize },
    /// `+-sqrt(m) i` are eigenvalues: `x^2 + m` divides the characteristic
    /// polynomial.
    Eigenvalue { modulus_squared: u64 },
}

/// Parameters recorded with a certificate. Vertices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub kind: ConstructionKind,
    pub claim: Claim,
    pub params: Params,
}

impl ConstructionCertificate {
    /// Recomputes the claim from `s`.
    pub fn verify(&self, s: &SeidelMatrix) -> bool {
        match &self.claim {
            Claim::SqrtDet { value } => s.determinant() == value * value,
            Claim::SkewConference => is_skew_conference(s),
            Claim::DoublyRegular { common } => {
                doubly_regular_constant(&s.to_tournament()) == Some(*common)
            }
            Claim::Eigenvalue { modulus_squared } => s
                .char_poly()
                .is_divisible_by(&IntPolynomial::x2_plus(*modulus_squared as i64)),
        }
    }
}

/// A matrix together with the certificate for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub matrix: SeidelMatrix,
    pub certificate: ConstructionCertificate,
}

impl Certified {
    pub fn verify(&self) -> bool {
        self.certificate.verify(&self.matrix)
    }
}

fn sqrt_det_claim(v: impl Into<BigInt>) -> Claim {
    Claim::SqrtDet { value: v.into() }
}

/// Seidel matrix `R_n` of the transitive tournament.
pub fn transitive(n: usize) -> SeidelMatrix {
    SeidelMatrix::transitive(n)
}

pub fn transitive_certified(n: usize) -> Certified {
    Certified {
        matrix: transitive(n),
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Transitive,
            claim: sqrt_det_claim(if n % 2 == 0 { 1 } else { 0 }),
            params: Params {
                n: Some(n),
                ..Params::default()
            },
        },
    }
}

/// Closed form of `R_n^{-1}` for even `n`: entry `(i, j)` with `i < j` is
/// `(-1)^(j-i)`, and the matrix is skew-symmetric.
pub fn transitive_inverse(n: usize) -> Result<IntMatrix> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = if (j - i) % 2 == 0 { 1 } else { -1 };
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    Ok(m)
}

/// The row vector `x^T R_n^{-1}` for `x = (1, -1, 1, .., -1)`.
pub fn transitive_weights(n: usize) -> Result<Vec<i64>> {
    let inv = transitive_inverse(n)?;
    Ok((0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i % 2 == 0 { inv.get(i, j) } else { -inv.get(i, j) })
                .sum()
        })
        .collect())
}

/// Seidel matrix of the join `T1 -> T2`: block form `[[S1, J], [-J^T, S2]]`.
pub fn join(s1: &SeidelMatrix, s2: &SeidelMatrix) -> SeidelMatrix {
    let (a, b) = (s1.order(), s2.order());
    let mut m = IntMatrix::zeros(a + b);
    for i in 0..a + b {
        for j in i + 1..a + b {
            let v = if j < a {
                s1.entry(i, j)
            } else if i >= a {
                s2.entry(i - a, j - a)
            } else {
                1
            };
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    SeidelMatrix::from_int_matrix(&m).expect("join of Seidel matrices is Seidel")
}

pub fn join_certified(s1: &SeidelMatrix, s2: &SeidelMatrix) -> Certified {
    let matrix = join(s1, s2);
    let claim = if s1.order() % 2 == 0 || s2.order() % 2 == 0 {
        let d1 = s1.determinant();
        let d2 = s2.determinant();
        sqrt_det_claim(d1.sqrt() * d2.sqrt())
    } else {
        // The product rule needs an even factor; record the computed value.
        sqrt_det_claim(matrix.determinant().sqrt())
    };
    Certified {
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Join,
            claim,
            params: Params {
                n: Some(matrix.order()),
                ..Params::default()
            },
        },
        matrix,
    }
}

/// How an arc reversal moves the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetChange {
    Increase,
    Unchanged,
    Decrease,
}

#[derive(Clone, Debug)]
pub struct Reversal {
    pub matrix: SeidelMatrix,
    pub det: BigInt,
    /// `S^{-1}_{ij}` for the oriented pair actually used (`s_ij = +1`).
    pub inverse_entry: BigRational,
    pub change: DetChange,
    pub certificate: ConstructionCertificate,
}

/// Reverses arc `{i, j}` and predicts the new determinant from the inverse:
/// `det S' = det S (1 + 2 S^{-1}_{ij})^2` with the pair oriented so that
/// `s_ij = +1`.
pub fn reversal_det(s: &SeidelMatrix, i: usize, j: usize) -> Result<Reversal> {
    let matrix = s.reverse_arc(i, j)?;
    let (i, j) = if s.entry(i, j) == 1 { (i, j) } else { (j, i) };
    let inv = s.inverse()?;
    let det = BigRational::from_integer(s.determinant());
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let e = inv.get(i, j).clone();
    let factor = BigRational::one() + BigRational::from_integer(BigInt::from(2)) * &e;
    let new_det = &det * &factor * &factor;
    debug_assert!(new_det.is_integer());
    let minus_one = -BigRational::one();
    let change = if e.is_zero() || e == minus_one {
        DetChange::Unchanged
    } else if e.is_positive() || e < minus_one {
        DetChange::Increase
    } else {
        DetChange::Decrease
    };
    let det_int = new_det.to_integer();
    Ok(Reversal {
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Reversal,
            claim: sqrt_det_claim(det_int.sqrt()),
            params: Params {
                n: Some(s.order()),
                arc: Some((i + 1, j + 1)),
                ..Params::default()
            },
        },
        matrix,
        det: det_int,
        inverse_entry: e,
        change,
    })
}

/// For even `n`, joins `R_2 -> S` and reverses an arc in the off-diagonal
/// block whose inverse entry is positive. The result has order `n + 2` and
/// strictly larger determinant than `S`.
pub fn grow(s: &SeidelMatrix) -> Result<Reversal> {
    let n = s.order();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let b = join(&transitive(2), s);
    let inv = b.inverse()?;
    for i in 0..2 {
        for j in 2..n + 2 {
            if inv.get(i, j).is_positive() {
                return reversal_det(&b, i, j);
            }
        }
    }
    Err(Error::InvalidParameter(
        "no positive entry in the off-diagonal block of the inverse".into(),
    ))
}

/// Signs `y` with `w . y = target`, where `w = x^T R_n^{-1}`.
///
/// Writing `y_i = sign(w_i) e_i` turns this into choosing `e_i = +-1` with
/// `sum |w_i| e_i = target`, i.e. a subset of `|w| = {1,1,3,3,..,n-1,n-1}`
/// summing to `(target + n^2/2) / 2`. Weights are taken greedily from the
/// largest down, leftmost first on ties.
fn target_signs(n: usize, target: i64) -> Option<Vec<i8>> {
    let w = transitive_weights(n).ok()?;
    let total: i64 = w.iter().map(|v| v.abs()).sum();
    if (target + total) % 2 != 0 || target.abs() > total {
        return None;
    }
    let mut rem = (target + total) / 2;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(w[i].abs()), i));
    let mut e = vec![-1i8; n];
    for i in order {
        if w[i].abs() <= rem {
            e[i] = 1;
            rem -= w[i].abs();
        }
    }
    if rem != 0 {
        return None;
    }
    Some((0..n).map(|i| if w[i] < 0 { -e[i] } else { e[i] }).collect())
}

/// Order `n + 2` Seidel matrix with determinant exactly `k^2`, for even `n`
/// and odd `1 <= k <= n^2/2 + 1`.
///
/// The matrix is `[[0, 1, x^T], [-1, 0, y^T], [-x, -y, R_n]]` with `x`
/// alternating `+-1`; its determinant is `(1 + x^T R_n^{-1} y)^2`.
pub fn target_determinant(n: usize, k: u64) -> Result<Certified> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n = {n} must be positive and even")));
    }
    if k % 2 == 0 || k == 0 || 2 * (k - 1) > (n * n) as u64 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be odd with 1 <= k <= n^2/2 + 1 = {}",
            n * n / 2 + 1
        )));
    }
    let y = target_signs(n, k as i64 - 1).ok_or_else(|| {
        Error::InvalidParameter(format!("no sign vector reaches k = {k} at n = {n}"))
    })?;
    let size = n + 2;
    let mut m = IntMatrix::zeros(size);
    let mut put = |i: usize, j: usize, v: i64| {
        m.set(i, j, v);
        m.set(j, i, -v);
    };
    put(0, 1, 1);
    for t in 0..n {
        let x = if t % 2 == 0 { 1 } else { -1 };
        put(0, t + 2, x);
        put(1, t + 2, y[t] as i64);
        for u in t + 1..n {
            put(t + 2, u + 2, 1);
        }
    }
    Ok(Certified {
        matrix: SeidelMatrix::from_int_matrix(&m).expect("entries are +-1"),
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Quadratic,
            claim: sqrt_det_claim(k),
            params: Params {
                n: Some(n),
                k: Some(k),
                y: Some(y),
                ..Params::default()
            },
        },
    })
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Quadratic residue tournament on `GF(p)`: `a -> b` iff `b - a` is a
/// nonzero square. Requires a prime `p = 3 (mod 4)`.
pub fn quadratic_residue(p: u64) -> Result<SeidelMatrix> {
    if p % 4 != 3 || !is_prime(p) {
        return Err(Error::NotQuadraticResiduePrime(p));
    }
    let n = p as usize;
    let mut square = vec![false; n];
    for a in 1..p {
        square[(a * a % p) as usize] = true;
    }
    let mut m = IntMatrix::zeros(n);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let d = (b + n - a) % n;
                m.set(a, b, if square[d] { 1 } else { -1 });
            }
        }
    }
    SeidelMatrix::from_int_matrix(&m)
}

pub fn quadratic_residue_certified(p: u64) -> Result<Certified> {
    let matrix = quadratic_residue(p)?;
    Ok(Certified {
        matrix,
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Residue,
            claim: Claim::DoublyRegular {
                common: ((p - 3) / 4) as usize,
            },
            params: Params {
                p: Some(p),
                ..Params::default()
            },
        },
    })
}

/// `[[0, j], [-j^T, S]]` with `j` the all-ones row.
pub fn border_all_ones(s: &SeidelMatrix) -> SeidelMatrix {
    join(&transitive(1), s)
}

pub fn border_certified(s: &SeidelMatrix) -> Certified {
    let matrix = border_all_ones(s);
    let claim = if is_doubly_regular(&s.to_tournament()) {
        Claim::SkewConference
    } else {
        sqrt_det_claim(matrix.determinant().sqrt())
    };
    Certified {
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Bordered,
            claim,
            params: Params {
                n: Some(matrix.order()),
                ..Params::default()
            },
        },
        matrix,
    }
}

/// `S S^T = (n-1) I`.
pub fn is_skew_conference(s: &SeidelMatrix) -> bool {
    let m = s.to_int_matrix();
    let n = m.order();
    for i in 0..n {
        for j in i + 1..n {
            let dot: i64 = (0..n).map(|t| m.get(i, t) * m.get(j, t)).sum();
            if dot != 0 {
                return false;
            }
        }
    }
    true
}

/// Common out-neighbour count, if it is the same for all ordered pairs.
pub fn doubly_regular_constant(t: &Tournament) -> Option<usize> {
    let n = t.order();
    let out: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| t.has_arc(i, j)).collect())
        .collect();
    let mut constant = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = (0..n).filter(|&v| out[i][v] && out[j][v]).count();
            match constant {
                None => constant = Some(c),
                Some(k) if k != c => return None,
                _ => {}
            }
        }
    }
    Some(constant.unwrap_or(0))
}

pub fn is_doubly_regular(t: &Tournament) -> bool {
    doubly_regular_constant(t).is_some()
}

/// Order `2k + 1` Seidel matrix with eigenvalues `+-sqrt(4k-1) i`: two
/// alternating rows bordering `R_{2k-1}`.
pub fn bordered_transitive_hc1(k: usize) -> Result<SeidelMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let n = 2 * k + 1;
    let mut m = IntMatrix::zeros(n);
    let mut put = |i: usize, j: usize, v: i64| {
        m.set(i, j, v);
        m.set(j, i, -v);
    };
    put(0, 1, 1);
    for c in 2..n {
        let v = if c % 2 == 0 { -1 } else { 1 };
        put(0, c, v);
        put(1, c, -v);
        for d in c + 1..n {
            put(c, d, 1);
        }
    }
    SeidelMatrix::from_int_matrix(&m)
}

pub fn hc1_certified(k: usize) -> Result<Certified> {
    Ok(Certified {
        matrix: bordered_transitive_hc1(k)?,
        certificate: ConstructionCertificate {
            kind: ConstructionKind::Hc1,
            claim: Claim::Eigenvalue {
                modulus_squared: 4 * k as u64 - 1,
            },
            params: Params {
                k: Some(k as u64),
                ..Params::default()
            },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;

    fn diamond() -> SeidelMatrix {
        SeidelMatrix::from_rows(&[
            vec![0, 1, 1, 1],
            vec![-1, 0, 1, -1],
            vec![-1, -1, 0, 1],
            vec![-1, 1, -1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn transitive_inverse_matches_rational_inverse() {
        for n in [2, 4, 6, 8] {
            let explicit = RationalMatrix::from_int(&transitive_inverse(n).unwrap());
            assert_eq!(transitive(n).inverse().unwrap(), explicit, "n = {n}");
        }
        assert!(transitive_inverse(3).is_err());
    }

    #[test]
    fn weights_for_order_four() {
        assert_eq!(transitive_weights(4).unwrap(), vec![-3, 1, 1, -3]);
        assert_eq!(transitive_weights(2).unwrap(), vec![-1, -1]);
        let mut abs: Vec<i64> = transitive_weights(8).unwrap().iter().map(|v| v.abs()).collect();
        abs.sort_unstable();
        assert_eq!(abs, vec![1, 1, 3, 3, 5, 5, 7, 7]);
    }

    #[test]
    fn join_examples() {
        let r2 = transitive(2);
        assert_eq!(join(&r2, &r2).determinant(), BigInt::from(1));
        assert_eq!(join(&diamond(), &r2).determinant(), BigInt::from(9));
        assert_eq!(join(&transitive(3), &diamond()).determinant(), BigInt::from(0));
        assert_eq!(join(&r2, &r2), transitive(4));
    }

    #[test]
    fn reversal_on_diamond() {
        let r = reversal_det(&diamond(), 0, 1).unwrap();
        assert_eq!(r.inverse_entry, BigRational::new((-1).into(), 3.into()));
        assert_eq!(r.det, BigInt::from(1));
        assert_eq!(r.change, DetChange::Decrease);
        assert_eq!(r.matrix.determinant(), BigInt::from(1));
        assert_eq!(r.certificate.params.arc, Some((1, 2)));
        // opposite orientation gives the same answer
        let back = reversal_det(&r.matrix, 0, 1).unwrap();
        assert_eq!(back.det, BigInt::from(9));
        assert_eq!(back.certificate.params.arc, Some((2, 1)));
        assert_eq!(back.change, DetChange::Increase);
        assert!(reversal_det(&transitive(3), 0, 1).is_err());
    }

    #[test]
    fn grow_strictly_increases() {
        for s in [transitive(2), diamond(), transitive(4)] {
            let g = grow(&s).unwrap();
            assert_eq!(g.matrix.order(), s.order() + 2);
            assert!(g.det > s.determinant());
            assert_eq!(g.matrix.determinant(), g.det);
        }
    }

    #[test]
    fn target_determinant_examples() {
        let c = target_determinant(4, 9).unwrap();
        assert_eq!(c.matrix.order(), 6);
        assert_eq!(c.matrix.determinant(), BigInt::from(81));
        assert!(c.verify());
        let one = target_determinant(4, 1).unwrap();
        assert_eq!(one.matrix.determinant(), BigInt::from(1));
        let w = transitive_weights(4).unwrap();
        let y = one.certificate.params.y.clone().unwrap();
        assert_eq!(w.iter().zip(&y).map(|(a, b)| a * *b as i64).sum::<i64>(), 0);
    }

    #[test]
    fn target_determinant_rejects() {
        assert!(target_determinant(4, 11).is_err());
        assert!(target_determinant(4, 4).is_err());
        assert!(target_determinant(3, 1).is_err());
        assert!(target_determinant(0, 1).is_err());
    }

    #[test]
    fn residue_tournaments() {
        let q3 = quadratic_residue(3).unwrap();
        // 1 -> 2 -> 3 -> 1
        assert_eq!(q3.entry(0, 1), 1);
        assert_eq!(q3.entry(1, 2), 1);
        assert_eq!(q3.entry(2, 0), 1);
        assert_eq!(doubly_regular_constant(&q3.to_tournament()), Some(0));
        assert_eq!(
            doubly_regular_constant(&quadratic_residue(7).unwrap().to_tournament()),
            Some(1)
        );
        assert!(is_doubly_regular(&quadratic_residue(11).unwrap().to_tournament()));
        assert!(!is_doubly_regular(&transitive(4).to_tournament()));
        for bad in [1, 2, 5, 9, 13, 15, 21] {
            assert!(quadratic_residue(bad).is_err(), "p = {bad}");
        }
    }

    #[test]
    fn bordering() {
        let b3 = border_all_ones(&quadratic_residue(3).unwrap());
        assert!(is_skew_conference(&b3));
        assert_eq!(b3.determinant(), BigInt::from(9));
        let b7 = border_all_ones(&quadratic_residue(7).unwrap());
        assert!(is_skew_conference(&b7));
        assert_eq!(b7.determinant(), BigInt::from(49 * 49));
        assert!(!is_skew_conference(&border_all_ones(&transitive(3))));
        assert!(is_skew_conference(&transitive(2)));
        assert!(!is_skew_conference(&transitive(4)));
        assert!(border_certified(&quadratic_residue(7).unwrap()).verify());
    }

    #[test]
    fn hc1_small() {
        let s = bordered_transitive_hc1(1).unwrap();
        assert_eq!(s.char_poly(), IntPolynomial::from_i64s(&[0, 3, 0, 1]));
        let s2 = bordered_transitive_hc1(2).unwrap();
        assert_eq!(s2.char_poly(), IntPolynomial::from_i64s(&[0, 21, 0, 10, 0, 1]));
        assert!(hc1_certified(5).unwrap().verify());
        assert!(bordered_transitive_hc1(0).is_err());
    }

    #[test]
    fn hc1_row_identity() {
        // (e1 - e2)^T S^2 = -(4k - 1)(e1 - e2)^T
        for k in 1..=6 {
            let m = bordered_transitive_hc1(k).unwrap().to_int_matrix();
            let sq = m.mul(&m);
            let n = 2 * k + 1;
            for j in 0..n {
                let v = sq.get(0, j) - sq.get(1, j);
                let expect = match j {
                    0 => -(4 * k as i64 - 1),
                    1 => 4 * k as i64 - 1,
                    _ => 0,
                };
                assert_eq!(v, expect, "k = {k}, column {j}");
            }
        }
    }

    #[test]
    fn certificate_json_shape() {
        let c = target_determinant(4, 9).unwrap().certificate;
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.starts_with(r#"{"kind":"quadratic","claim":{"type":"sqrt_det","value":9}"#), "{json}");
        let back: ConstructionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
