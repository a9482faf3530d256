//! Dense matrices over `Z[t, t^-1]` and over its fraction field.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::{laurent_gcd, LaurentPoly, UnitFactor};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn diagonal(diag: &[LaurentPoly]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { LaurentPoly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LaurentMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(LaurentMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| LaurentPoly::constant(m[(i, j)].clone()))
    }

    pub fn column_vector(v: Vec<LaurentPoly>) -> Self {
        let n = v.len();
        LaurentMatrix { rows: n, cols: 1, entries: v }
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

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Transpose with every entry conjugated.
    pub fn hermitian_conjugate(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conjugate())
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        self.require_square()?;
        Ok(self.hermitian_conjugate() == *self)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|e| e * c)
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = rhs.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &LaurentMatrix) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &LaurentMatrix, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("shape mismatch".into()));
        }
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &LaurentMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn block_diagonal(blocks: &[&LaurentMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Integer matrix of values at `t = 1`.
    pub fn at_one(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).at_one())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Fraction-free (Bareiss) elimination; exact divisions in the Laurent
    /// ring.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        self.require_square()?;
        Ok(bareiss(self.entries.clone(), self.rows))
    }

    /// Laplace expansion along the first row. Exponential; used for small
    /// matrices and as an independent check on `determinant`.
    pub fn determinant_by_expansion(&self) -> Result<LaurentPoly> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.expand(&idx, &idx))
    }

    fn expand(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        match rows.len() {
            0 => LaurentPoly::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = LaurentPoly::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * self.expand(&rows[1..], &rest);
                    if k % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        }
    }

    /// Classical adjugate: `adj[i][j] = (-1)^(i+j) * minor(j, i)`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        if n == 1 {
            return Ok(Self::identity(1));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.submatrix(&rows, &cols).determinant().expect("square minor");
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        }))
    }

    pub fn inverse_over_fraction_field(&self) -> Result<RationalFunctionMatrix> {
        self.require_square()?;
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(RationalFunctionMatrix { numerators: self.adjugate()?, denominator: det })
    }

    /// Inverse of a matrix whose determinant is a unit `±t^k`.
    pub fn unimodular_inverse(&self) -> Result<Self> {
        let det = self.determinant()?;
        let u = det.unit_factor().ok_or_else(|| Error::NonUnitTransform(det.to_string()))?;
        let inv = u.inverse().to_poly();
        Ok(self.adjugate()?.scale(&inv))
    }

    /// `U^* A U` where `U^*` is the conjugate transpose.
    pub fn congruence(&self, u: &LaurentMatrix) -> Result<Self> {
        self.require_square()?;
        u.require_square()?;
        if u.rows != self.rows {
            return Err(Error::DimensionMismatch("transform size differs from form size".into()));
        }
        let det = u.determinant()?;
        if !det.is_unit() {
            return Err(Error::NonUnitTransform(det.to_string()));
        }
        u.hermitian_conjugate().mul(self)?.mul(u)
    }

    /// Canonical gcd of all `k x k` minors; zero when every minor vanishes.
    pub fn minors_gcd(&self, k: usize) -> Result<LaurentPoly> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::BadMinorSize { k, rows: self.rows, cols: self.cols });
        }
        let mut acc = LaurentPoly::zero();
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                let m = self.submatrix(&rows, &cols).determinant()?;
                if m.is_zero() {
                    continue;
                }
                acc = laurent_gcd(&acc, &m);
                if acc.is_one() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }
}

/// All increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn bareiss(mut a: Vec<LaurentPoly>, n: usize) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            // pivot on the sparsest nonzero entry below
            let Some(p) = (k + 1..n)
                .filter(|&i| !a[i * n + k].is_zero())
                .min_by_key(|&i| a[i * n + k].num_terms())
            else {
                return LaurentPoly::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &a[i * n + j]) - &(&a[i * n + k] * &a[k * n + j]);
                a[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i * n + k] = LaurentPoly::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl fmt::Display for LaurentMatrix {
    /// Rows separated by `; `, entries by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMatrix[{}x{}]({self})", self.rows, self.cols)
    }
}

impl FromStr for LaurentMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let rows = s
            .split(';')
            .map(|row| row.split(',').map(|e| e.trim().parse::<LaurentPoly>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

/// A matrix over `Q(t)` with a single common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionMatrix {
    pub numerators: LaurentMatrix,
    pub denominator: LaurentPoly,
}

impl RationalFunctionMatrix {
    pub fn rows(&self) -> usize {
        self.numerators.rows()
    }

    pub fn cols(&self) -> usize {
        self.numerators.cols()
    }

    /// Exact Laurent matrix when the denominator divides every numerator.
    pub fn to_laurent(&self) -> Option<LaurentMatrix> {
        let entries = self
            .numerators
            .entries()
            .iter()
            .map(|e| e.div_exact(&self.denominator))
            .collect::<Option<Vec<_>>>()?;
        LaurentMatrix::new(self.rows(), self.cols(), entries).ok()
    }

    pub fn is_integral(&self) -> bool {
        self.to_laurent().is_some()
    }

    /// True iff `lhs * self` is the identity over `Q(t)`.
    pub fn is_right_inverse_of(&self, lhs: &LaurentMatrix) -> bool {
        let Ok(prod) = lhs.mul(&self.numerators) else {
            return false;
        };
        prod == LaurentMatrix::identity(prod.rows()).scale(&self.denominator) && prod.is_square()
    }

    /// Multiplies every entry by the unit `u^-1` so the denominator becomes
    /// `target`, when `target ≐ denominator`.
    pub fn with_denominator(&self, target: &LaurentPoly) -> Option<Self> {
        let u: UnitFactor = target.doteq(&self.denominator)?;
        Some(RationalFunctionMatrix { numerators: self.numerators.map(|e| e.mul_unit(u)), denominator: target.clone() })
    }
}
