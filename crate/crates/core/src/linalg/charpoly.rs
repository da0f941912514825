use num_bigint::BigInt;

use super::exact::Exact;
use super::{IntMatrix, IntPolynomial};

/// Berkowitz's division-free recurrence. Returns the coefficients of
/// `det(xI - A)` with the leading coefficient first.
///
/// Row `r` extends the characteristic polynomial of the leading `r x r`
/// block by the Toeplitz column `[1, -a_rr, -R C, -R M C, ..]` where `M` is
/// the block, `R` the new row and `C` the new column.
pub(crate) fn berkowitz<T: Exact>(n: usize, a: &[i64]) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| T::from_i64(a[i * n + j]);
    let mut v: Vec<T> = vec![T::one()];
    let mut u: Vec<T> = Vec::with_capacity(n);
    let mut next: Vec<T> = Vec::with_capacity(n);
    for r in 0..n {
        let mut t: Vec<T> = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(at(r, r).neg()?);
        u.clear();
        u.extend((0..r).map(|i| at(i, r)));
        for step in 0..r {
            let mut s = T::zero();
            for (j, uj) in u.iter().enumerate() {
                if !uj.is_zero() {
                    s = s.add(&at(r, j).mul(uj)?)?;
                }
            }
            t.push(s.neg()?);
            if step + 1 < r {
                next.clear();
                for i in 0..r {
                    let mut s = T::zero();
                    for (j, uj) in u.iter().enumerate() {
                        let aij = a[i * n + j];
                        if aij != 0 && !uj.is_zero() {
                            s = s.add(&T::from_i64(aij).mul(uj)?)?;
                        }
                    }
                    next.push(s);
                }
                std::mem::swap(&mut u, &mut next);
            }
        }
        let mut nv = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = T::zero();
            for j in 0..=i.min(r) {
                if !v[j].is_zero() {
                    s = s.add(&t[i - j].mul(&v[j])?)?;
                }
            }
            nv.push(s);
        }
        v = nv;
    }
    Some(v)
}

/// Characteristic polynomial `det(xI - A)` with exact integer coefficients.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.order();
    let coeffs: Vec<BigInt> = match berkowitz::<i128>(n, m.as_slice()) {
        Some(v) => v.iter().map(Exact::to_big).collect(),
        None => berkowitz::<BigInt>(n, m.as_slice()).expect("arbitrary precision"),
    };
    IntPolynomial::new(coeffs.into_iter().rev().collect())
}

/// `i64` characteristic polynomial, leading coefficient first. `None` on
/// overflow.
pub fn char_poly_i64(n: usize, entries: &[i64]) -> Option<Vec<i64>> {
    berkowitz::<i64>(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    /// Coefficient of `x^(n-k)` is `(-1)^k` times the sum of the `k x k`
    /// principal minors.
    fn minors_oracle(m: &IntMatrix) -> IntPolynomial {
        let n = m.order();
        let mut coeffs = vec![BigInt::from(0); n + 1];
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            let d = det(&m.principal(&idx));
            if k % 2 == 0 {
                coeffs[n - k] += d;
            } else {
                coeffs[n - k] -= d;
            }
        }
        IntPolynomial::new(coeffs)
    }

    #[test]
    fn agrees_with_principal_minor_sums() {
        let cases = vec![
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]],
            vec![
                vec![0, 1, 1, 1],
                vec![-1, 0, 1, -1],
                vec![-1, -1, 0, 1],
                vec![-1, 1, -1, 0],
            ],
            vec![
                vec![2, -1, 0, 3, 1],
                vec![0, 1, 4, -2, 0],
                vec![5, 0, -3, 1, 2],
                vec![1, 1, 1, 1, 1],
                vec![0, -2, 0, 3, -1],
            ],
        ];
        for rows in cases {
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(char_poly(&m), minors_oracle(&m));
        }
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(char_poly(&IntMatrix::zeros(0)), IntPolynomial::one());
        assert_eq!(char_poly(&IntMatrix::zeros(1)), IntPolynomial::from_i64s(&[0, 1]));
        assert_eq!(
            char_poly_i64(2, &[0, 1, -1, 0]).unwrap(),
            vec![1, 0, 1]
        );
    }
}
