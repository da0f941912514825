use num_bigint::BigInt;

use super::exact::Exact;
use super::IntMatrix;
use crate::error::{Error, Result};

/// Fraction-free Pfaffian elimination.
///
/// After eliminating the leading pairs `I`, the working entry `(k, l)` holds
/// `Pf(A[I + {k, l}])`. The next pair `(p, q)` is removed with the Pfaffian
/// analogue of Sylvester's identity
///
/// `Pf(I) Pf(I+pqkl) = Pf(I+pq) Pf(I+kl) - Pf(I+pk) Pf(I+ql) + Pf(I+pl) Pf(I+qk)`
///
/// so the division by the previous pivot is exact.
pub(crate) fn pfaffian_ff<T: Exact>(n: usize, src: &[i64]) -> Option<T> {
    debug_assert!(n % 2 == 0);
    if n == 0 {
        return Some(T::one());
    }
    let mut w: Vec<T> = src.iter().map(|&v| T::from_i64(v)).collect();
    let mut prev = T::one();
    let mut negate = false;
    let mut p = 0;
    loop {
        let q = p + 1;
        let Some(r) = (q..n).find(|&r| !w[p * n + r].is_zero()) else {
            return Some(T::zero());
        };
        if r != q {
            // Swap indices q and r in rows and columns; Pf changes sign.
            for j in 0..n {
                w.swap(q * n + j, r * n + j);
            }
            for i in 0..n {
                w.swap(i * n + q, i * n + r);
            }
            negate = !negate;
        }
        let pivot = w[p * n + q].clone();
        if q + 1 == n {
            return if negate { pivot.neg() } else { Some(pivot) };
        }
        for k in q + 1..n {
            for l in k + 1..n {
                let a = pivot.mul(&w[k * n + l])?;
                let b = w[p * n + k].mul(&w[q * n + l])?;
                let c = w[p * n + l].mul(&w[q * n + k])?;
                let v = a.sub(&b)?.add(&c)?.div_exact(&prev)?;
                w[l * n + k] = v.neg()?;
                w[k * n + l] = v;
            }
        }
        prev = pivot;
        p += 2;
    }
}

fn check_skew_even(m: &IntMatrix) -> Result<()> {
    if m.order() % 2 == 1 {
        return Err(Error::OddOrder(m.order()));
    }
    if !m.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    Ok(())
}

/// Exact Pfaffian of an even-order skew-symmetric integer matrix.
pub fn pfaffian(m: &IntMatrix) -> Result<BigInt> {
    check_skew_even(m)?;
    let n = m.order();
    Ok(pfaffian_ff::<i128>(n, m.as_slice())
        .map(|v| v.to_big())
        .or_else(|| pfaffian_ff::<BigInt>(n, m.as_slice()))
        .expect("arbitrary precision elimination cannot overflow"))
}

/// `i64` Pfaffian for hot loops. The caller guarantees even order and skew
/// symmetry; `None` signals overflow.
#[inline]
pub fn pfaffian_i64(n: usize, entries: &[i64]) -> Option<i64> {
    pfaffian_ff::<i64>(n, entries)
}

/// A perfect matching of `{0, .., 2m-1}` with pairs `(i_k, j_k)`, `i_k < j_k`,
/// sorted by first element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The permutation `i_1 j_1 i_2 j_2 ... i_m j_m`.
    pub fn permutation(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    /// Sign of the induced permutation, by inversion count.
    pub fn sign(&self) -> i64 {
        let perm = self.permutation();
        let mut inversions = 0usize;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product of the matched entries `m[i_k][j_k]`.
    pub fn weight(&self, m: &IntMatrix) -> i64 {
        self.pairs.iter().map(|&(i, j)| m.get(i, j)).product()
    }
}

/// All `(n-1)!!` perfect matchings of `n` points.
pub fn perfect_matchings(n: usize) -> Vec<PerfectMatching> {
    fn rec(
        remaining: &mut Vec<usize>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<PerfectMatching>,
    ) {
        if remaining.is_empty() {
            out.push(PerfectMatching {
                pairs: current.clone(),
            });
            return;
        }
        let first = remaining.remove(0);
        for pos in 0..remaining.len() {
            let partner = remaining.remove(pos);
            current.push((first, partner));
            rec(remaining, current, out);
            current.pop();
            remaining.insert(pos, partner);
        }
        remaining.insert(0, first);
    }
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Pfaffian as the signed sum over perfect matchings. Cost `(n-1)!!`, so
/// restricted to `n <= 12`.
pub fn pfaffian_bruteforce(m: &IntMatrix) -> Result<BigInt> {
    check_skew_even(m)?;
    if m.order() > 12 {
        return Err(Error::OrderOutOfRange {
            n: m.order(),
            reason: "matching-sum Pfaffian is limited to n <= 12",
        });
    }
    let total: i64 = perfect_matchings(m.order())
        .iter()
        .map(|pm| pm.sign() * pm.weight(m))
        .sum();
    Ok(BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn matching_counts_are_double_factorials() {
        assert_eq!(perfect_matchings(0).len(), 1);
        assert_eq!(perfect_matchings(2).len(), 1);
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
        assert_eq!(perfect_matchings(8).len(), 105);
        assert!(perfect_matchings(5).is_empty());
    }

    #[test]
    fn matching_shape() {
        for pm in perfect_matchings(6) {
            let firsts: Vec<usize> = pm.pairs().iter().map(|p| p.0).collect();
            assert!(firsts.windows(2).all(|w| w[0] < w[1]));
            assert!(pm.pairs().iter().all(|&(i, j)| i < j));
            let mut all = pm.permutation();
            all.sort_unstable();
            assert_eq!(all, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn two_by_two() {
        let a = m(&[vec![0, 5], vec![-5, 0]]);
        assert_eq!(pfaffian(&a).unwrap(), BigInt::from(5));
        assert_eq!(pfaffian_bruteforce(&a).unwrap(), BigInt::from(5));
    }

    #[test]
    fn four_by_four_general() {
        // Pf = a12 a34 - a13 a24 + a14 a23 = 2*7 - 3*6 + 5*4 = 16
        let a = m(&[
            vec![0, 2, 3, 5],
            vec![-2, 0, 4, 6],
            vec![-3, -4, 0, 7],
            vec![-5, -6, -7, 0],
        ]);
        assert_eq!(pfaffian(&a).unwrap(), BigInt::from(16));
        assert_eq!(pfaffian_bruteforce(&a).unwrap(), BigInt::from(16));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        // a12 = 0 forces a pivot swap.
        let a = m(&[
            vec![0, 0, 1, 1],
            vec![0, 0, 1, -1],
            vec![-1, -1, 0, 1],
            vec![-1, 1, -1, 0],
        ]);
        assert_eq!(pfaffian(&a).unwrap(), pfaffian_bruteforce(&a).unwrap());
        let zero = IntMatrix::zeros(4);
        assert_eq!(pfaffian(&zero).unwrap(), BigInt::from(0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(pfaffian(&IntMatrix::zeros(3)), Err(Error::OddOrder(3)));
        let not_skew = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(pfaffian(&not_skew), Err(Error::NotSkewSymmetric));
        assert!(pfaffian_bruteforce(&IntMatrix::zeros(14)).is_err());
    }
}
