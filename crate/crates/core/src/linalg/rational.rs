use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::record::bigint_to_number;

/// Dense matrix of exact rationals. `BigRational` keeps every entry in
/// lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let n = m.order();
        RationalMatrix {
            rows: n,
            cols: n,
            data: m
                .as_slice()
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flatten()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in addition".into()));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RationalMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.rows).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut d = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                d = -d;
            }
            let pivot = a[k * n + k].clone();
            d *= &pivot;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] / &pivot;
                for j in k..n {
                    let v = &a[i * n + j] - &f * &a[k * n + j];
                    a[i * n + j] = v;
                }
            }
        }
        Ok(d)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Err(Error::Singular);
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] /= &pivot;
                inv[k * n + j] /= &pivot;
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let f = a[i * n + k].clone();
                for j in 0..n {
                    let v = &a[i * n + j] - &f * &a[k * n + j];
                    a[i * n + j] = v;
                    let w = &inv[i * n + j] - &f * &inv[k * n + j];
                    inv[i * n + j] = w;
                }
            }
        }
        Ok(RationalMatrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Entries as integers, if every denominator is one.
    pub fn to_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        v.is_integer().then(|| v.to_integer())
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize)]
struct Cell {
    num: serde_json::Number,
    den: serde_json::Number,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<Cell> = (0..self.cols)
                .map(|j| {
                    let v = self.get(i, j);
                    debug_assert!(v.denom().is_positive());
                    Cell {
                        num: bigint_to_number(v.numer()),
                        den: bigint_to_number(v.denom()),
                    }
                })
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Exact inverse of an integer matrix.
pub fn inverse(m: &IntMatrix) -> Result<RationalMatrix> {
    RationalMatrix::from_int(m).inverse()
}

/// Determinant through the Schur complement of the trailing block:
/// `det M = det(M/D) det D` with `M/D = A - B D^-1 C`.
///
/// `split` is the size of the leading block `A`.
pub fn schur_det(m: &RationalMatrix, split: usize) -> Result<BigRational> {
    if !m.is_square() || split > m.rows() {
        return Err(Error::Dimension(format!(
            "cannot split a {}x{} matrix at {}",
            m.rows(),
            m.cols(),
            split
        )));
    }
    let n = m.rows();
    let a = m.block(0, split, 0, split);
    let b = m.block(0, split, split, n);
    let c = m.block(split, n, 0, split);
    let d = m.block(split, n, split, n);
    let d_inv = d.inverse()?;
    let complement = a.sub(&b.mul(&d_inv)?.mul(&c)?)?;
    Ok(complement.det()? * d.det()?)
}

/// `det(A + X Y^T) = det A * det(I + Y^T A^-1 X)` for `n x k` factors.
pub fn smw_det_update(
    det_a: &BigRational,
    a_inv: &RationalMatrix,
    x: &RationalMatrix,
    y: &RationalMatrix,
) -> Result<BigRational> {
    let n = a_inv.rows();
    if !a_inv.is_square() || x.rows() != n || y.rows() != n || x.cols() != y.cols() {
        return Err(Error::Dimension("update factors must both be n x k".into()));
    }
    let k = x.cols();
    let core = RationalMatrix::identity(k).add(&y.transpose().mul(a_inv)?.mul(x)?)?;
    Ok(det_a * core.det()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(m.det().unwrap(), q(18, 1));
    }

    #[test]
    fn singular_is_reported() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert_eq!(m.det().unwrap(), q(0, 1));
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let m = RationalMatrix::from_i64_rows(&[vec![0, -3], vec![3, 0]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(*inv.get(0, 1), q(1, 3));
        assert_eq!(inv.get(1, 0).denom(), &BigInt::from(3));
        let json = serde_json::to_string(&inv).unwrap();
        assert_eq!(
            json,
            r#"[[{"num":0,"den":1},{"num":1,"den":3}],[{"num":-1,"den":3},{"num":0,"den":1}]]"#
        );
    }

    #[test]
    fn schur_block_diagonal() {
        let m = RationalMatrix::from_i64_rows(&[
            vec![2, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ])
        .unwrap();
        assert_eq!(schur_det(&m, 2).unwrap(), q(1, 1));
        let d = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let mut sing = RationalMatrix::identity(4);
        for i in 0..2 {
            for j in 0..2 {
                sing.set(2 + i, 2 + j, d.get(i, j).clone());
            }
        }
        assert_eq!(schur_det(&sing, 2), Err(Error::Singular));
    }

    #[test]
    fn smw_zero_update() {
        let a = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let z = RationalMatrix::zeros(2, 1);
        let det_a = a.det().unwrap();
        assert_eq!(smw_det_update(&det_a, &a.inverse().unwrap(), &z, &z).unwrap(), det_a);
    }
}
