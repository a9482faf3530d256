//! Independent oracles and fixtures shared by the integration tests.
//!
//! The oracles deliberately avoid the library's own algorithms: determinants
//! go through exact rational elimination at integer points plus Lagrange
//! interpolation, signatures through floating-point eigenvalues, and gcds
//! through Euclid over `Q[t]`.
#![allow(dead_code)]

use knotbound::intmat::IntMatrix;
use knotbound::laurent::LaurentPoly;
use knotbound::matrix::LaurentMatrix;
use knotbound::report::{parse_table_str, KnotRecord};
use knotbound::seifert::SeifertMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngExt;

pub const TABLE: &str = include_str!("../../fixtures/knots.csv");

pub fn table() -> Vec<KnotRecord> {
    parse_table_str(TABLE).expect("bundled table parses")
}

pub fn knot(name: &str) -> SeifertMatrix {
    table().into_iter().find(|r| r.name == name).expect("knot in table").seifert
}

pub fn cert_text(name: &str) -> &'static str {
    match name {
        "granny" => include_str!("../../fixtures/certs/granny.cert"),
        "square" => include_str!("../../fixtures/certs/square.cert"),
        "5_1" => include_str!("../../fixtures/certs/5_1.cert"),
        _ => panic!("no fixture certificate for {name}"),
    }
}

pub fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

pub fn m(s: &str) -> LaurentMatrix {
    s.parse().unwrap()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Determinant over `Q` by Gaussian elimination.
pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

/// `det(tV - V^T)` in `Z[t]` via evaluation at `t = 1..=n+1` and Lagrange
/// interpolation.
pub fn alexander_det_by_interpolation(v: &IntMatrix) -> Vec<BigInt> {
    let n = v.rows();
    let xs: Vec<i64> = (1..=n as i64 + 1).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|&x| {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| rat(x) * BigRational::from_integer(v[(i, j)].clone()) - BigRational::from_integer(v[(j, i)].clone())).collect())
                .collect();
            rational_det(rows)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, yi) in ys.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b.clone();
                next[k] -= b * rat(xj);
            }
            basis = next;
            denom *= rat(xs[i] - xj);
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * yi / &denom;
        }
    }
    coeffs.into_iter().map(|c| {
        assert!(c.is_integer(), "interpolated coefficient {c} is not integral");
        c.to_integer()
    }).collect()
}

/// Symmetrizes and signs a `Z[t]` coefficient vector so that `Δ(1) = 1`.
pub fn normalize_oracle(coeffs: &[BigInt]) -> LaurentPoly {
    let lo = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let hi = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
    assert_eq!((lo + hi) % 2, 0, "odd span cannot be symmetric");
    let mid = ((lo + hi) / 2) as i64;
    let sum: BigInt = coeffs.iter().sum();
    let sign = if sum.is_negative() { -1 } else { 1 };
    LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| (k as i64 - mid, c * sign)))
}

/// Signature of `V + V^T` from floating-point eigenvalues.
pub fn float_signature(v: &IntMatrix) -> i64 {
    let n = v.rows();
    if n == 0 {
        return 0;
    }
    let s = nalgebra::DMatrix::from_fn(n, n, |i, j| (&v[(i, j)] + &v[(j, i)]).to_f64().unwrap());
    let eig = s.symmetric_eigenvalues();
    eig.iter().map(|&x| if x > 1e-9 { 1 } else if x < -1e-9 { -1 } else { 0 }).sum()
}

fn qtrim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `a mod b` over `Q[t]`.
fn qrem(mut a: Vec<BigRational>, b: &[BigRational]) -> Vec<BigRational> {
    qtrim(&mut a);
    while a.len() >= b.len() && !a.is_empty() {
        let f = a.last().unwrap() / b.last().unwrap();
        let shift = a.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            let sub = &f * c;
            a[k + shift] -= sub;
        }
        qtrim(&mut a);
    }
    a
}

/// gcd in `Z[t, t^-1]` through Gauss's lemma: integer content gcd times the
/// primitive part of the monic gcd over `Q[t]`. Returned in the canonical
/// form (lowest exponent 0, positive leading coefficient).
pub fn gcd_oracle(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let to_q = |x: &LaurentPoly| -> Vec<BigRational> {
        let (_, c) = x.dense();
        c.into_iter().map(BigRational::from_integer).collect()
    };
    let content = |x: &LaurentPoly| x.terms().fold(BigInt::zero(), |acc, (_, c)| num_integer::Integer::gcd(&acc, c));
    if f.is_zero() && g.is_zero() {
        return LaurentPoly::zero();
    }
    let (mut a, mut b) = (to_q(f), to_q(g));
    qtrim(&mut a);
    qtrim(&mut b);
    while !b.is_empty() {
        let r = qrem(a, &b);
        a = b;
        b = r;
    }
    let c = num_integer::Integer::gcd(&content(f), &content(g));
    // clear denominators and make primitive
    let lcm = a.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let cont = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    let lo = ints.iter().position(|x| !x.is_zero()).unwrap();
    let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
    LaurentPoly::from_terms(ints.iter().enumerate().skip(lo).map(|(k, x)| ((k - lo) as i64, x / &cont * sign * &c)))
}

pub fn random_poly(rng: &mut impl RngExt, low: i64, high: i64, coeff: i64) -> LaurentPoly {
    LaurentPoly::from_terms((low..=high).map(|e| (e, rng.random_range(-coeff..=coeff))))
}

pub fn random_matrix(rng: &mut impl RngExt, rows: usize, cols: usize, low: i64, high: i64, coeff: i64) -> LaurentMatrix {
    LaurentMatrix::from_fn(rows, cols, |_, _| random_poly(rng, low, high, coeff))
}

/// A random matrix with determinant `±t^k`: a product of elementary row
/// operations with polynomial multipliers, a permutation and unit scalings.
pub fn random_unimodular(rng: &mut impl RngExt, n: usize, steps: usize) -> LaurentMatrix {
    let mut u = LaurentMatrix::identity(n);
    for _ in 0..steps {
        if n >= 2 {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let f = random_poly(rng, -1, 1, 1);
            for c in 0..n {
                let v = u.get(i, c) + &(&f * u.get(j, c));
                u.set(i, c, v);
            }
        }
    }
    let i = rng.random_range(0..n);
    let unit = LaurentPoly::monomial(if rng.random_range(0..2) == 0 { 1 } else { -1 }, rng.random_range(-2..=2));
    for c in 0..n {
        let v = u.get(i, c) * &unit;
        u.set(i, c, v);
    }
    u
}
