//! Deciding whether a unimodular symmetric integer form is congruent over `Z`
//! to a diagonal form `diag(±1, ..., ±1)`.
//!
//! The search splits off vectors of norm `±1` one at a time. A norm `±1`
//! vector `v` always splits the lattice as `Zv ⊕ v^⊥`, so the form is
//! diagonalizable iff some such split leaves a diagonalizable complement.
//! Two facts about unimodular lattices keep the search greedy:
//!
//! * an odd indefinite unimodular form is `I_{p,q}`; splitting so that the
//!   complement stays odd and indefinite (or has rank at most one) never
//!   loses diagonalizability;
//! * a definite unimodular form is `I_m ⊕ L` with `L` free of norm-one
//!   vectors, and every norm-one vector lies in `I_m`, so any split is as
//!   good as any other. Definite forms are searched exhaustively.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Every self-pairing is even, so no `±1` can appear on a diagonal.
    EvenForm,
    /// A definite form whose norm-one vectors all leave an even complement.
    DefiniteNoUnitSplitting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagVerdict {
    pub decision: Decision,
    /// Rows form a basis `P` with `P Q P^T = diag(±1)`; set iff `Yes`.
    pub witness: Option<IntMatrix>,
    pub obstruction: Option<Obstruction>,
}

impl DiagVerdict {
    fn yes(p: IntMatrix) -> Self {
        DiagVerdict { decision: Decision::Yes, witness: Some(p), obstruction: None }
    }

    fn no(o: Obstruction) -> Self {
        DiagVerdict { decision: Decision::No, witness: None, obstruction: Some(o) }
    }

    fn undecided() -> Self {
        DiagVerdict { decision: Decision::Undecided, witness: None, obstruction: None }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

/// Decides congruent diagonalizability of a symmetric unimodular `q`.
///
/// `radius` bounds the coordinates searched when `q` is indefinite; definite
/// forms are enumerated completely and never come back `Undecided`.
pub fn diagonalizable_over_z(q: &IntMatrix, radius: u32) -> Result<DiagVerdict> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let det = q.determinant()?;
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let n = q.rows();
    if n == 0 {
        return Ok(DiagVerdict::yes(IntMatrix::zeros(0, 0)));
    }
    if is_even(q) {
        return Ok(DiagVerdict::no(Obstruction::EvenForm));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let basis = IntMatrix::identity(n);
    let verdict = split(q, &basis, radius, &mut rows)?;
    if verdict != Decision::Yes {
        return Ok(match verdict {
            Decision::No => DiagVerdict::no(Obstruction::DefiniteNoUnitSplitting),
            _ => DiagVerdict::undecided(),
        });
    }
    let p = IntMatrix::from_fn(n, n, |i, j| rows[i][j].clone());
    if is_diagonalizing_witness(q, &p) {
        Ok(DiagVerdict::yes(p))
    } else {
        Ok(DiagVerdict::undecided())
    }
}

/// `det(P) = ±1` and `P Q P^T` diagonal with entries `±1`.
pub fn is_diagonalizing_witness(q: &IntMatrix, p: &IntMatrix) -> bool {
    if p.rows() != q.rows() || p.cols() != q.rows() {
        return false;
    }
    if p.determinant().map(|d| d.abs() != BigInt::one()).unwrap_or(true) {
        return false;
    }
    let Ok(d) = p.mul(q).and_then(|x| x.mul(&p.transpose())) else {
        return false;
    };
    d.is_diagonal() && d.diagonal().iter().all(|x| x.abs().is_one())
}

/// `(n_plus, n_minus)`: the counts of `+1` and `-1` in `P Q P^T`.
pub fn signed_counts(verdict: &DiagVerdict, q: &IntMatrix) -> Result<(usize, usize)> {
    let p = match (&verdict.decision, &verdict.witness) {
        (Decision::Yes, Some(p)) => p,
        _ => return Err(Error::NotDiagonalized),
    };
    if !is_diagonalizing_witness(q, p) {
        return Err(Error::NotDiagonalized);
    }
    let d = p.mul(q)?.mul(&p.transpose())?;
    let plus = d.diagonal().iter().filter(|x| x.is_positive()).count();
    Ok((plus, q.rows() - plus))
}

fn is_even(g: &IntMatrix) -> bool {
    g.diagonal().iter().all(|x| x.is_even())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Definiteness {
    Positive,
    Negative,
    Indefinite,
}

fn definiteness(g: &IntMatrix) -> Result<Definiteness> {
    let (p, n, _) = g.inertia()?;
    Ok(if n == 0 {
        Definiteness::Positive
    } else if p == 0 {
        Definiteness::Negative
    } else {
        Definiteness::Indefinite
    })
}

/// Recursively splits the lattice spanned by the rows of `basis` (Gram
/// matrix `g`), pushing the split-off vectors onto `out` in original
/// coordinates.
fn split(q: &IntMatrix, basis: &IntMatrix, radius: u32, out: &mut Vec<Vec<BigInt>>) -> Result<Decision> {
    let mut g = gram(q, basis)?;
    let k = g.rows();
    if k == 0 {
        return Ok(Decision::Yes);
    }
    if k == 1 {
        out.push(basis.row(0).to_vec());
        return Ok(Decision::Yes);
    }
    let kind = definiteness(&g)?;
    let reduced;
    let basis = if kind == Definiteness::Indefinite {
        let t = reduce_diagonal(&g)?;
        reduced = t.mul(basis)?;
        g = gram(q, &reduced)?;
        &reduced
    } else {
        basis
    };
    let accept = |v: &[BigInt]| -> Result<Option<IntMatrix>> {
        let norm = quad(&g, v);
        if norm.abs() != BigInt::one() {
            return Ok(None);
        }
        let comp = complement(&g, v, &norm)?;
        let cg = gram(&g, &comp)?;
        if cg.rows() >= 2 && is_even(&cg) {
            return Ok(None);
        }
        if kind == Definiteness::Indefinite && cg.rows() >= 2 && definiteness(&cg)? != Definiteness::Indefinite {
            return Ok(None);
        }
        Ok(Some(comp))
    };

    let found = match kind {
        Definiteness::Indefinite => {
            let mut hit = None;
            'shells: for r in 1..=radius as i64 {
                let mut found_in_shell = None;
                for_each_in_shell(k, r, |v| {
                    let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                    match accept(&v) {
                        Ok(Some(c)) => {
                            found_in_shell = Some(Ok((v, c)));
                            false
                        }
                        Ok(None) => true,
                        Err(e) => {
                            found_in_shell = Some(Err(e));
                            false
                        }
                    }
                });
                if let Some(res) = found_in_shell {
                    hit = Some(res?);
                    break 'shells;
                }
            }
            match hit {
                Some(h) => h,
                None => return Ok(Decision::Undecided),
            }
        }
        Definiteness::Positive | Definiteness::Negative => {
            let pos = if kind == Definiteness::Positive { g.clone() } else { g.neg() };
            let mut units = short_vectors(&pos, 1);
            units.sort_by(|a, b| shell_order(a, b));
            let mut hit = None;
            for v in units {
                let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                if let Some(c) = accept(&v)? {
                    hit = Some((v, c));
                    break;
                }
            }
            match hit {
                Some(h) => h,
                None => return Ok(Decision::No),
            }
        }
    };

    let (v, comp) = found;
    out.push(combine(basis, &v));
    let comp_basis = IntMatrix::from_fn(comp.rows(), basis.cols(), |i, j| {
        (0..k).map(|l| &comp[(i, l)] * &basis[(l, j)]).sum()
    });
    split(q, &comp_basis, radius, out)
}

/// A unimodular `T` such that `T g T^T` has small diagonal entries, from
/// greedily applying `b_i <- b_i ± b_j` while it lowers `|g_ii|`. The
/// coordinate search for an indefinite form runs in this reduced basis.
fn reduce_diagonal(g: &IntMatrix) -> Result<IntMatrix> {
    let k = g.rows();
    let mut t = IntMatrix::identity(k);
    let mut h = g.clone();
    loop {
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for s in [1i64, -1] {
                    let s = BigInt::from(s);
                    let new_diag = &h[(i, i)] + BigInt::from(2) * &s * &h[(i, j)] + &h[(j, j)];
                    if new_diag.abs() < h[(i, i)].abs() {
                        let mut e = IntMatrix::identity(k);
                        e[(i, j)] = s;
                        t = e.mul(&t)?;
                        h = e.mul(&h)?.mul(&e.transpose())?;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            return Ok(t);
        }
    }
}

fn gram(q: &IntMatrix, basis: &IntMatrix) -> Result<IntMatrix> {
    basis.mul(q)?.mul(&basis.transpose())
}

fn quad(g: &IntMatrix, v: &[BigInt]) -> BigInt {
    let k = g.rows();
    let mut acc = BigInt::zero();
    for i in 0..k {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..k {
            acc += &v[i] * &g[(i, j)] * &v[j];
        }
    }
    acc
}

fn combine(basis: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..basis.cols()).map(|j| (0..basis.rows()).map(|i| &v[i] * &basis[(i, j)]).sum()).collect()
}

/// Basis (as rows, in the coordinates of `g`) of the orthogonal complement
/// of a vector `v` with `v^T g v = norm = ±1`.
fn complement(g: &IntMatrix, v: &[BigInt], norm: &BigInt) -> Result<IntMatrix> {
    let k = g.rows();
    let completion = unimodular_completion(v)?;
    // pairing of v with each completing vector
    let gv: Vec<BigInt> = (0..k).map(|j| (0..k).map(|i| &v[i] * &g[(i, j)]).sum()).collect();
    Ok(IntMatrix::from_fn(k - 1, k, |i, j| {
        let c = completion.row(i + 1);
        let pair: BigInt = c.iter().zip(&gv).map(|(a, b)| a * b).sum();
        // c - (pair / norm) v, exact since norm is ±1
        &c[j] - &pair * norm * &v[j]
    }))
}

/// A unimodular matrix whose first row is the primitive vector `v`.
fn unimodular_completion(v: &[BigInt]) -> Result<IntMatrix> {
    let k = v.len();
    // U v = ±e_0 via 2x2 extended-gcd steps; the columns of U^-1 are then
    // a basis whose first member is ±v.
    let mut x = v.to_vec();
    let mut u = IntMatrix::identity(k);
    for i in (1..k).rev() {
        if x[i].is_zero() {
            continue;
        }
        let (a0, a1) = (x[i - 1].clone(), x[i].clone());
        let e = a0.extended_gcd(&a1);
        let gcd = e.gcd;
        let (s, t) = (e.x, e.y);
        let (c, d) = (-(&a1 / &gcd), &a0 / &gcd);
        for col in 0..k {
            let r0 = u[(i - 1, col)].clone();
            let r1 = u[(i, col)].clone();
            u[(i - 1, col)] = &s * &r0 + &t * &r1;
            u[(i, col)] = &c * &r0 + &d * &r1;
        }
        x[i - 1] = gcd;
        x[i] = BigInt::zero();
    }
    if !x[0].abs().is_one() {
        return Err(Error::DimensionMismatch("vector is not primitive".into()));
    }
    let inv = u.unimodular_inverse()?;
    // inv * (±e_0) = v, so column 0 of inv is ±v
    let mut t = inv.transpose();
    if x[0].is_negative() {
        for col in 0..k {
            t[(0, col)] = -t[(0, col)].clone();
        }
    }
    Ok(t)
}

fn digit_rank(x: i64) -> i64 {
    // 0, 1, -1, 2, -2, ...
    if x > 0 {
        2 * x - 1
    } else {
        -2 * x
    }
}

fn shell_order(a: &[i64], b: &[i64]) -> Ordering {
    let ma = a.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mb = b.iter().map(|x| x.abs()).max().unwrap_or(0);
    ma.cmp(&mb).then_with(|| {
        a.iter().map(|&x| digit_rank(x)).cmp(b.iter().map(|&x| digit_rank(x)))
    })
}

/// Visits every vector of `[-r, r]^k` with max-norm exactly `r`, in the
/// order of `shell_order`, until `f` returns false.
fn for_each_in_shell(k: usize, r: i64, mut f: impl FnMut(&[i64]) -> bool) {
    let digits: Vec<i64> = std::iter::once(0).chain((1..=r).flat_map(|d| [d, -d])).collect();
    let base = digits.len();
    let mut idx = vec![0usize; k];
    let mut v = vec![0i64; k];
    loop {
        for (slot, &d) in v.iter_mut().zip(&idx) {
            *slot = digits[d];
        }
        if v.iter().any(|x| x.abs() == r) && !f(&v) {
            return;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < base {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// All nonzero `x` with `x^T g x == target` for positive definite `g`
/// (Fincke-Pohst enumeration; candidates are confirmed exactly).
fn short_vectors(g: &IntMatrix, target: i64) -> Vec<Vec<i64>> {
    let k = g.rows();
    let mut q = vec![vec![0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            q[i][j] = g[(i, j)].to_f64().unwrap_or(f64::INFINITY);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for l in i + 1..k {
            for j in l..k {
                q[l][j] -= q[l][i] * q[i][j];
            }
        }
    }
    let bound = target as f64 * (1.0 + 1e-7) + 1e-9;
    let mut out = Vec::new();
    let mut x = vec![0i64; k];
    fp_recurse(&q, k, bound, &mut x, &mut out, g, target);
    out
}

fn fp_recurse(
    q: &[Vec<f64>],
    level: usize,
    remaining: f64,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    g: &IntMatrix,
    target: i64,
) {
    if level == 0 {
        if x.iter().any(|&v| v != 0) {
            let bx: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            if quad(g, &bx) == BigInt::from(target) {
                out.push(x.clone());
            }
        }
        return;
    }
    let i = level - 1;
    let k = q.len();
    let center: f64 = -(i + 1..k).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let half = (remaining.max(0.0) / q[i][i]).sqrt();
    let lo = (center - half - 1e-9).ceil() as i64;
    let hi = (center + half + 1e-9).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let d = xi as f64 - center;
        let rest = remaining - q[i][i] * d * d;
        if rest < -1e-9 {
            continue;
        }
        fp_recurse(q, i, rest, x, out, g, target);
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e8() -> IntMatrix {
        // Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4)
        let mut m = [[0i64; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &[(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)] {
            m[a][b] = -1;
            m[b][a] = -1;
        }
        IntMatrix::from_rows(&m)
    }

    #[test]
    fn e8_is_unimodular_positive_definite() {
        let q = e8();
        assert_eq!(q.determinant().unwrap(), BigInt::one());
        assert_eq!(q.inertia().unwrap(), (8, 0, 0));
    }

    #[test]
    fn odd_indefinite_rank_two() {
        let q = IntMatrix::from_rows(&[[0, 1], [1, 1]]);
        let v = diagonalizable_over_z(&q, 10).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        let p = v.witness.clone().unwrap();
        assert!(is_diagonalizing_witness(&q, &p));
        assert_eq!(p.row(0), &[BigInt::zero(), BigInt::one()]);
        assert_eq!(signed_counts(&v, &q).unwrap(), (1, 1));
    }

    #[test]
    fn even_forms_are_rejected() {
        let h = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let v = diagonalizable_over_z(&h, 10).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.obstruction, Some(Obstruction::EvenForm));
        let v = diagonalizable_over_z(&e8(), 10).unwrap();
        assert_eq!(v.obstruction, Some(Obstruction::EvenForm));
    }

    #[test]
    fn disguised_diagonal_forms() {
        // -G^T G for a unitriangular G: negative definite, congruent to -I
        let neg: IntMatrix = "-1, 2, 1, 1; 2, -5, -2, -2; 1, -2, -2, 0; 1, -2, 0, -3".parse().unwrap();
        // indefinite; its unit vectors lie outside small coordinates until reduced
        let indef: IntMatrix = "1, 2, 0, 2; 2, 3, -1, 2; 0, -1, -2, 0; 2, 2, 0, -3".parse().unwrap();
        for (q, counts) in [(neg, (0, 4)), (indef, (2, 2))] {
            let v = diagonalizable_over_z(&q, 10).unwrap();
            assert_eq!(v.decision, Decision::Yes, "{q}");
            assert_eq!(signed_counts(&v, &q).unwrap(), counts);
        }
    }

    #[test]
    fn e8_plus_one_has_no_unit_splitting() {
        let q = IntMatrix::block_diagonal(&[&e8(), &IntMatrix::from_rows(&[[1]])]);
        let v = diagonalizable_over_z(&q, 10).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.obstruction, Some(Obstruction::DefiniteNoUnitSplitting));
        let neg = q.neg();
        assert_eq!(diagonalizable_over_z(&neg, 10).unwrap().decision, Decision::No);
    }

    #[test]
    fn odd_indefinite_with_hidden_even_summand() {
        // [1] ⊕ H is I_{2,1}; splitting off e_0 first would strand H
        let q = IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        let v = diagonalizable_over_z(&q, 10).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(signed_counts(&v, &q).unwrap(), (2, 1));
        // E8 ⊕ [-1] is odd indefinite, hence I_{8,1}
        let q = IntMatrix::block_diagonal(&[&e8(), &IntMatrix::from_rows(&[[-1]])]);
        let v = diagonalizable_over_z(&q, 3).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(signed_counts(&v, &q).unwrap(), (8, 1));
    }

    #[test]
    fn diagonal_inputs_and_trivial_cases() {
        let q = IntMatrix::from_rows(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        let v = diagonalizable_over_z(&q, 10).unwrap();
        assert!(v.is_yes());
        assert_eq!(signed_counts(&v, &q).unwrap(), (1, 2));
        let v = diagonalizable_over_z(&IntMatrix::from_rows(&[[1]]), 10).unwrap();
        assert_eq!(signed_counts(&v, &IntMatrix::from_rows(&[[1]])).unwrap(), (1, 0));
        let empty = IntMatrix::zeros(0, 0);
        assert!(diagonalizable_over_z(&empty, 1).unwrap().is_yes());
    }

    #[test]
    fn input_errors() {
        assert_eq!(diagonalizable_over_z(&IntMatrix::from_rows(&[[1, 2], [0, 1]]), 3), Err(Error::NotSymmetric));
        assert!(matches!(
            diagonalizable_over_z(&IntMatrix::from_rows(&[[2, 0], [0, 1]]), 3),
            Err(Error::NotUnimodular(_))
        ));
        let no = diagonalizable_over_z(&IntMatrix::from_rows(&[[0, 1], [1, 0]]), 3).unwrap();
        assert_eq!(signed_counts(&no, &IntMatrix::from_rows(&[[0, 1], [1, 0]])), Err(Error::NotDiagonalized));
    }

    #[test]
    fn shell_enumeration_order() {
        let mut seen = Vec::new();
        for_each_in_shell(2, 1, |v| {
            seen.push(v.to_vec());
            true
        });
        assert_eq!(seen.len(), 8);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[1], vec![0, -1]);
    }

    #[test]
    fn completion_is_unimodular() {
        let v: Vec<BigInt> = [3, 5, -7].iter().map(|&x| BigInt::from(x)).collect();
        let c = unimodular_completion(&v).unwrap();
        assert_eq!(c.row(0), v.as_slice());
        assert_eq!(c.determinant().unwrap().abs(), BigInt::one());
    }
}
