//! Integer matrices: Seifert matrices, `A(1)`, diagonalizers.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Row-major construction; panics on ragged input (test and fixture helper).
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        assert!(rows.iter().all(|x| x.as_ref().len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    pub fn square_from_entries(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for {n}x{n}", entries.len())));
        }
        Ok(IntMatrix { rows: n, cols: n, data: entries })
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

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch("integer matrix product".into()));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()
        }))
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("integer matrix sum".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)]))
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("integer matrix difference".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)]))
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Bareiss elimination over `Z`.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Inverse of a matrix with determinant `±1`, via exact rational
    /// Gauss-Jordan.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let det = self.determinant()?;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let n = self.rows;
        let mut a: Vec<BigRational> = self.data.iter().cloned().map(BigRational::from_integer).collect();
        let mut inv: Vec<BigRational> = IntMatrix::identity(n).data.into_iter().map(BigRational::from_integer).collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i * n + k].is_zero()).expect("nonsingular");
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
                inv.swap(k * n + j, p * n + j);
            }
            let piv = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] = &a[k * n + j] / &piv;
                inv[k * n + j] = &inv[k * n + j] / &piv;
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let f = a[i * n + k].clone();
                for j in 0..n {
                    let (ak, ik) = (a[k * n + j].clone(), inv[k * n + j].clone());
                    a[i * n + j] -= &f * ak;
                    inv[i * n + j] -= &f * ik;
                }
            }
        }
        Ok(IntMatrix { rows: n, cols: n, data: inv.into_iter().map(|x| x.to_integer()).collect() })
    }

    /// `(n_plus, n_minus, n_zero)` of a symmetric matrix by exact congruence
    /// diagonalization over `Q`.
    pub fn inertia(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a: Vec<BigRational> = self.data.iter().cloned().map(BigRational::from_integer).collect();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[k * n + k].is_zero() {
                if let Some(p) = (k + 1..n).find(|&i| !a[i * n + i].is_zero()) {
                    swap_sym(&mut a, n, k, p);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i * n + j].is_zero())
                {
                    // both diagonal entries vanish, so row_i += row_j makes a_ii = 2 a_ij
                    for c in 0..n {
                        let v = a[j * n + c].clone();
                        a[i * n + c] += v;
                    }
                    for r in 0..n {
                        let v = a[r * n + j].clone();
                        a[r * n + i] += v;
                    }
                    swap_sym(&mut a, n, k, i);
                } else {
                    break;
                }
            }
            let piv = a[k * n + k].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] / &piv;
                for j in k..n {
                    let v = &f * &a[k * n + j];
                    a[i * n + j] -= v;
                }
                for j in k..n {
                    a[j * n + i] = a[i * n + j].clone();
                }
            }
        }
        Ok((pos, neg, n - pos - neg))
    }

    pub fn signature(&self) -> Result<i64> {
        let (p, n, _) = self.inertia()?;
        Ok(p as i64 - n as i64)
    }
}

fn swap_sym(a: &mut [BigRational], n: usize, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..n {
        a.swap(i * n + c, j * n + c);
    }
    for r in 0..n {
        a.swap(r * n + i, r * n + j);
    }
}

/// `gcd` of a slice of integers, nonnegative.
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{}x{}]({self})", self.rows, self.cols)
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| e.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {:?}", e.trim()))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let c = rows[0].len();
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let r = rows.len();
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [-1, 0]]).determinant().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(&[[0, 1, 2], [3, 0, 4], [5, 6, 0]]).determinant().unwrap(), BigInt::from(56));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn inertia_examples() {
        // trefoil V + V^T
        assert_eq!(IntMatrix::from_rows(&[[-2, 1], [1, -2]]).signature().unwrap(), -2);
        // figure-eight V + V^T, det -5
        assert_eq!(IntMatrix::from_rows(&[[2, 1], [1, -2]]).signature().unwrap(), 0);
        // zero diagonal needs the off-diagonal pivot trick
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).inertia().unwrap(), (1, 1, 0));
        assert_eq!(IntMatrix::from_rows(&[[0, 0], [0, 0]]).inertia().unwrap(), (0, 0, 2));
        assert_eq!(IntMatrix::from_rows(&[[1, 1], [1, 1]]).inertia().unwrap(), (1, 0, 1));
        assert!(IntMatrix::from_rows(&[[1, 2], [0, 1]]).inertia().is_err());
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let p = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let inv = p.unimodular_inverse().unwrap();
        assert_eq!(p.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert!(IntMatrix::from_rows(&[[2, 0], [0, 1]]).unimodular_inverse().is_err());
    }

    #[test]
    fn parse_and_render() {
        let m: IntMatrix = "-1, 1; 0, -1".parse().unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[-1, 1], [0, -1]]));
        assert_eq!(m.to_string(), "-1, 1; 0, -1");
        assert!("1, x".parse::<IntMatrix>().is_err());
    }
}
