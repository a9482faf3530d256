//! Exact arithmetic in the integral Laurent ring `Z[t, t^-1]`.
//!
//! Polynomials are stored sparsely as a map from exponent to nonzero
//! arbitrary-precision coefficient. Units of the ring are exactly `±t^k`,
//! so "equal up to a unit" (`doteq`) is a shift plus a sign.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A unit `sign * t^power` of `Z[t, t^-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitFactor {
    pub sign: i8,
    pub power: i64,
}

impl UnitFactor {
    pub const ONE: UnitFactor = UnitFactor { sign: 1, power: 0 };

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(BigInt::from(self.sign), self.power)
    }

    pub fn inverse(self) -> UnitFactor {
        UnitFactor { sign: self.sign, power: -self.power }
    }

    pub fn compose(self, other: UnitFactor) -> UnitFactor {
        UnitFactor { sign: self.sign * other.sign, power: self.power + other.power }
    }
}

impl fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            let c: BigInt = c.into();
            add_term(&mut out, e, c);
        }
        LaurentPoly { terms: out }
    }

    /// `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent window, `max - min`; 0 for the zero polynomial.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// True iff the polynomial is `±t^k`.
    pub fn unit_factor(&self) -> Option<UnitFactor> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some(UnitFactor { sign: 1, power: e })
        } else if (-c).is_one() {
            Some(UnitFactor { sign: -1, power: e })
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_factor().is_some()
    }

    /// `p(t^-1)`.
    pub fn conjugate(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    pub fn mul_unit(&self, u: UnitFactor) -> Self {
        let s = self.shift(u.power);
        if u.sign < 0 {
            -s
        } else {
            s
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::ZeroEvaluationPoint);
        }
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let xe = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += xe * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Representative of the class under `±t^k` with lowest exponent 0 and
    /// positive leading coefficient.
    pub fn canonical(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let s = self.shift(-lo);
        if s.leading_coeff().is_some_and(|c| c.is_negative()) {
            -s
        } else {
            s
        }
    }

    /// Returns the unit `u` with `other = u * self`, if one exists.
    pub fn doteq(&self, other: &LaurentPoly) -> Option<UnitFactor> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(UnitFactor::ONE),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let shift = other.min_exp()? - self.min_exp()?;
        let sign: i8 = if self.trailing_coeff()? == other.trailing_coeff()? {
            1
        } else if *self.trailing_coeff()? == -other.trailing_coeff()?.clone() {
            -1
        } else {
            return None;
        };
        let u = UnitFactor { sign, power: shift };
        (self.mul_unit(u) == *other).then_some(u)
    }

    pub fn is_doteq(&self, other: &LaurentPoly) -> bool {
        self.doteq(other).is_some()
    }

    /// Exact quotient `self / divisor` in `Z[t, t^-1]`, or `None` when the
    /// divisor does not divide.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a_lo, a) = self.dense();
        let (b_lo, b) = divisor.dense();
        let q = zpoly::div_exact(&a, &b)?;
        Some(Self::from_dense(a_lo - b_lo, q))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Normalizes a polynomial that is `≐` a symmetric polynomial with
    /// `|p(1)| = 1` so that `p(1) = 1` and `p(t^-1) = p(t)`.
    pub fn normalize_alexander(&self) -> Result<LaurentPoly> {
        let v = self.at_one();
        let sign = if v.is_one() {
            1
        } else if (-&v).is_one() {
            -1
        } else {
            return Err(Error::NotNormalizable(format!("|p(1)| = {} is not 1", v.abs())));
        };
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        if (lo + hi) % 2 != 0 {
            return Err(Error::NotNormalizable(
                "odd exponent span, no unit shift symmetrizes it".into(),
            ));
        }
        let out = self.mul_unit(UnitFactor { sign, power: -(lo + hi) / 2 });
        if out.conjugate() != out {
            return Err(Error::NotNormalizable("not symmetric up to a unit".into()));
        }
        Ok(out)
    }

    /// Coefficients `(low, dense)` with `dense[i]` the coefficient of
    /// `t^(low+i)`; `(0, [])` for zero.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        LaurentPoly { terms }
    }
}

/// Canonical gcd in `Z[t, t^-1]`: lowest exponent 0, positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn laurent_gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return g.canonical();
    }
    if g.is_zero() {
        return f.canonical();
    }
    let (_, a) = f.dense();
    let (_, b) = g.dense();
    LaurentPoly::from_dense(0, zpoly::gcd(&a, &b)).canonical()
}

/// gcd of a list; 0 for an empty list or a list of zeros.
pub fn laurent_gcd_all<'a>(it: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for p in it {
        acc = laurent_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn add_term(terms: &mut BTreeMap<i64, BigInt>, e: i64, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let remove = {
        let slot = terms.entry(e).or_default();
        *slot += c;
        slot.is_zero()
    };
    if remove {
        terms.remove(&e);
    }
}

/// Dense univariate arithmetic over `Z[t]`, coefficients low to high.
pub(crate) mod zpoly {
    use super::*;

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn content(v: &[BigInt]) -> BigInt {
        v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
        let c = content(v);
        if c.is_zero() || c.is_one() {
            return v.to_vec();
        }
        v.iter().map(|x| x / &c).collect()
    }

    /// Strips factors of `t` from the low end.
    fn strip_low(v: &[BigInt]) -> Vec<BigInt> {
        let k = v.iter().position(|c| !c.is_zero()).unwrap_or(v.len());
        v[k..].to_vec()
    }

    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = strip_low(a);
        let b = strip_low(b);
        let mut r = a.clone();
        trim(&mut r);
        let mut b = b;
        trim(&mut b);
        if b.is_empty() {
            return None;
        }
        if r.is_empty() {
            return Some(Vec::new());
        }
        if r.len() < b.len() {
            return None;
        }
        let lb = b.last().unwrap().clone();
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let lr = r.last().unwrap();
            let (c, rem) = lr.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let k = r.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
            q[k] = c;
            trim(&mut r);
            if r.is_empty() {
                return Some(q);
            }
        }
        None
    }

    /// Pseudo-remainder of `a` by `b` (both nonzero, trimmed).
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lb = b.last().unwrap();
        while r.len() >= b.len() {
            let lr = r.last().unwrap().clone();
            let k = r.len() - b.len();
            for x in r.iter_mut() {
                *x *= lb;
            }
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &lr * bi;
            }
            trim(&mut r);
            r = primitive(&r);
        }
        r
    }

    /// gcd in `Z[t]` by the primitive pseudo-remainder sequence, times the
    /// content gcd. Both inputs nonzero.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let a = strip_low(a);
        let b = strip_low(b);
        let c = content(&a).gcd(&content(&b));
        let mut x = primitive(&a);
        let mut y = primitive(&b);
        trim(&mut x);
        trim(&mut y);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = prem(&x, &y);
            x = y;
            y = strip_low(&primitive(&r));
            trim(&mut y);
        }
        let mut g = primitive(&x);
        if g.last().is_some_and(|l| l.is_negative()) {
            g.iter_mut().for_each(|v| *v = -v.clone());
        }
        g.iter().map(|v| v * &c).collect()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (&e, c) in &rhs.terms {
            add_term(&mut out, e, c.clone());
        }
        LaurentPoly { terms: out }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (&e, c) in &rhs.terms {
            add_term(&mut out, e, -c);
        }
        LaurentPoly { terms: out }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                add_term(&mut out, e1 + e2, c1 * c2);
            }
        }
        LaurentPoly { terms: out }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            add_term(&mut self.terms, e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            add_term(&mut self.terms, e, -c);
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Renders highest exponent first, e.g. `t - 1 + t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str("t")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Grammar: `term (('+' | '-') term)*`, `term = [sign] [int] ['t' ['^' int]]`.
    /// Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let raw: Vec<char> = s.chars().collect();
        for (i, c) in raw.iter().enumerate() {
            if c.is_whitespace() {
                let prev = raw[..i].iter().rev().find(|c| !c.is_whitespace());
                let next = raw[i..].iter().find(|c| !c.is_whitespace());
                if let (Some(a), Some(b)) = (prev, next) {
                    if (a.is_ascii_alphanumeric() || *a == '^') && b.is_ascii_alphanumeric() {
                        return Err(Error::Parse(format!("missing operator in {s:?}")));
                    }
                }
            }
        }
        let chars: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let err = |msg: &str, pos: usize| Error::Parse(format!("{msg} at offset {pos} in {s:?}"));
        let mut pos = 0;
        let mut out = BTreeMap::new();
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| {
                let digits: String = chars[start..*pos].iter().collect();
                BigInt::from_str(&digits).expect("digits")
            })
        };
        let mut first = true;
        while pos < chars.len() {
            let mut sign = BigInt::one();
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err("expected '+' or '-'", pos)),
            }
            first = false;
            let coeff = read_int(&mut pos);
            let mut exp = 0i64;
            let has_t = pos < chars.len() && chars[pos] == 't';
            if has_t {
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let mut esign = 1i64;
                    if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                        if chars[pos] == '-' {
                            esign = -1;
                        }
                        pos += 1;
                    }
                    let e = read_int(&mut pos).ok_or_else(|| err("expected exponent", pos))?;
                    let e: i64 = e.try_into().map_err(|_| err("exponent out of range", pos))?;
                    exp = esign * e;
                }
            }
            if coeff.is_none() && !has_t {
                return Err(err("expected a term", pos));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * sign;
            add_term(&mut out, exp, c);
        }
        Ok(LaurentPoly { terms: out })
    }
}
