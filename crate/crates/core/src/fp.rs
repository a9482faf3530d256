//! Polynomials over a prime field `F_p` and Smith normal form over `F_p[t]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::laurent::LaurentPoly;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Polynomial over `F_p`, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1 % p] }.trimmed()
    }

    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        FpPoly { p, c: coeffs.into_iter().map(|x| x % p).collect() }.trimmed()
    }

    /// Reduction of `t^-lo * f` mod p, where `lo` is the lowest exponent of
    /// `f`; the shift is a unit of the Laurent ring.
    pub fn from_laurent_shifted(f: &LaurentPoly, p: u64, shift: i64) -> Self {
        let Some(hi) = f.max_exp() else {
            return Self::zero(p);
        };
        let len = (hi + shift + 1).max(0) as usize;
        let mut c = vec![0u64; len];
        for (e, v) in f.terms() {
            let idx = e + shift;
            assert!(idx >= 0, "shift leaves a negative exponent");
            c[idx as usize] = reduce_int(v, p);
        }
        FpPoly { p, c }.trimmed()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn trimmed(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly { p: self.p, c }.trimmed()
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
            .collect();
        FpPoly { p, c }.trimmed()
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut c = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + *a as u128 * *b as u128) % p;
            }
        }
        FpPoly { p: self.p, c: c.into_iter().map(|x| x as u64).collect() }.trimmed()
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p as u128;
        FpPoly { p: self.p, c: self.c.iter().map(|&x| ((x as u128 * k as u128) % p) as u64).collect() }.trimmed()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let inv = inv_mod(d.leading(), p);
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - d.c.len() + 1];
        while r.len() >= d.c.len() && !r.is_empty() {
            let k = r.len() - d.c.len();
            let f = ((*r.last().unwrap() as u128 * inv as u128) % p as u128) as u64;
            q[k] = f;
            for (i, &di) in d.c.iter().enumerate() {
                let sub = ((f as u128 * di as u128) % p as u128) as u64;
                r[k + i] = (r[k + i] + p - sub) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (FpPoly { p, c: q }.trimmed(), FpPoly { p, c: r })
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Removes every factor of `t`.
    pub fn strip_t(&self) -> FpPoly {
        let k = self.c.iter().position(|&x| x != 0).unwrap_or(0);
        FpPoly { p: self.p, c: self.c[k..].to_vec() }
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, o: &FpPoly) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.div_rem(self).1.is_zero()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.c.iter().rev().fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p) as u64
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (e, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{c}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[mod {}]({self})", self.p)
    }
}

/// Diagonal of the Smith normal form of a matrix over `F_p[t]` (row-major,
/// `rows x cols`). Returns `min(rows, cols)` monic entries with each dividing
/// the next; zeros trail.
pub fn smith_diagonal(mut a: Vec<FpPoly>, rows: usize, cols: usize, p: u64) -> Vec<FpPoly> {
    let n = rows.min(cols);
    let idx = |i: usize, j: usize| i * cols + j;
    'outer: for k in 0..n {
        loop {
            // pivot: nonzero entry of least degree in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = &a[idx(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.degree() < a[idx(bi, bj)].degree()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            for j in 0..cols {
                a.swap(idx(k, j), idx(pi, j));
            }
            for i in 0..rows {
                a.swap(idx(i, k), idx(i, pj));
            }
            let piv = a[idx(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if a[idx(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[idx(i, k)].div_rem(&piv);
                for j in k..cols {
                    let v = a[idx(i, j)].sub(&q.mul(&a[idx(k, j)]));
                    a[idx(i, j)] = v;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if a[idx(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[idx(k, j)].div_rem(&piv);
                for i in k..rows {
                    let v = a[idx(i, j)].sub(&q.mul(&a[idx(i, k)]));
                    a[idx(i, j)] = v;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the trailing block
            let bad = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !piv.divides(&a[idx(i, j)]));
            if let Some((i, _)) = bad {
                for j in k..cols {
                    let v = a[idx(k, j)].add(&a[idx(i, j)]);
                    a[idx(k, j)] = v;
                }
                continue;
            }
            break;
        }
    }
    let diag = (0..n).map(|i| a[idx(i, i)].clone()).collect();
    finish(diag, n, p)
}

fn finish(mut diag: Vec<FpPoly>, n: usize, p: u64) -> Vec<FpPoly> {
    diag.resize(n, FpPoly::zero(p));
    let mut out: Vec<FpPoly> = diag.into_iter().map(|d| d.monic()).collect();
    // zeros last, otherwise keep the chain order
    out.sort_by_key(|d| d.is_zero());
    out
}
