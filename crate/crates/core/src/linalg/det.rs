use num_bigint::BigInt;

use super::exact::Exact;
use super::IntMatrix;

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate value
/// is a minor of the input, so all divisions are exact.
pub(crate) fn bareiss<T: Exact>(n: usize, src: &[i64]) -> Option<T> {
    if n == 0 {
        return Some(T::one());
    }
    let mut a: Vec<T> = src.iter().map(|&v| T::from_i64(v)).collect();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Some(T::zero());
            };
            for j in k..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let lhs = a[i * n + j].mul(&pivot)?;
                let rhs = lead.mul(&a[k * n + j])?;
                a[i * n + j] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

/// Exact determinant of an integer matrix.
///
/// Runs in `i128` and repeats in arbitrary precision on overflow.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.order();
    bareiss::<i128>(n, m.as_slice())
        .map(|d| d.to_big())
        .or_else(|| bareiss::<BigInt>(n, m.as_slice()))
        .expect("arbitrary precision elimination cannot overflow")
}

/// `i64` determinant for the enumeration hot path; `None` on overflow.
pub fn det_i64(m: &IntMatrix) -> Option<i64> {
    bareiss::<i64>(m.order(), m.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &IntMatrix) -> i64 {
        let n = m.order();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let rest: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let mut sub = IntMatrix::zeros(n - 1);
                for (a, &r) in rest.iter().enumerate() {
                    for (b, &c) in cols.iter().enumerate() {
                        sub.set(a, b, m.get(r, c));
                    }
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m.get(0, j) * cofactor_det(&sub)
            })
            .sum()
    }

    #[test]
    fn matches_cofactor_expansion_on_small_matrices() {
        let cases = [
            vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]],
            vec![vec![0, 1, 2], vec![3, 0, 4], vec![5, 6, 0]],
            vec![
                vec![0, 0, 1, 2],
                vec![0, 0, 3, 4],
                vec![5, 6, 0, 0],
                vec![7, 8, 0, 0],
            ],
            vec![vec![1, 2], vec![2, 4]],
        ];
        for rows in cases {
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(det(&m), BigInt::from(cofactor_det(&m)), "{m:?}");
        }
    }

    #[test]
    fn empty_and_scalar() {
        assert_eq!(det(&IntMatrix::zeros(0)), BigInt::from(1));
        assert_eq!(det(&IntMatrix::from_rows(&[vec![-7]]).unwrap()), BigInt::from(-7));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // diag(2^62, 2^62, 2^62) overflows i128 in the product.
        let big = 1i64 << 62;
        let m = IntMatrix::from_rows(&[
            vec![big, 0, 0],
            vec![0, big, 0],
            vec![0, 0, big],
        ])
        .unwrap();
        assert_eq!(det(&m), BigInt::from(big).pow(3));
        assert!(det_i64(&m).is_none());
    }
}
