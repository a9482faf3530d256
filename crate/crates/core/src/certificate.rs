//! Certificates for upper bounds on the algebraic unknotting number.
//!
//! A certificate of size `n` is a hermitian `n x n` matrix `A` over
//! `Z[t, t^-1]` together with a witness `S`, a `2g x n` matrix whose columns
//! are the images of the generators of `Λ^n / AΛ^n` in the Alexander module
//! `Λ^2g / MΛ^2g`, `M = tV - V^T`. It certifies `u_a(K) <= n` when `S`
//! induces an isometry from `λ(A)` to the Blanchfield form and `A(1)` is
//! congruent over `Z` to a diagonal matrix.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::blanchfield::{blanchfield_table, BlanchfieldPresentation, ResidueClass};
use crate::diag::{diagonalizable_over_z, is_diagonalizing_witness, Decision};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::orders::{nakanishi_lower_bound, rank_mod_p, specialize, DEFAULT_PRIMES};
use crate::seifert::SeifertMatrix;

pub const DEFAULT_RADIUS: u32 = 10;

/// Primes and evaluation points for the specialization cross-check of the
/// surjectivity proxy.
const SPECIALIZATION_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub a: LaurentMatrix,
    pub witness: LaurentMatrix,
    /// Unimodular `P` with `P A(1) P^T = diag(±1)`; computed when absent.
    pub diagonalizer: Option<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertFailure {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("A is not hermitian")]
    HermitianFail,
    #[error("det(A) = {det} is not a unit multiple of the Alexander polynomial {delta}")]
    DeterminantFail { det: String, delta: String },
    #[error("S A does not lie in the image of M; the map on generators is not well defined")]
    WitnessNotWellDefined,
    #[error("pairing mismatch at ({i}, {j}): lambda(A) gives {lambda}, Blanchfield gives {blanchfield}")]
    PairingMismatch { i: usize, j: usize, lambda: String, blanchfield: String },
    #[error("surjectivity proxy failed: {0}")]
    SurjectivityProxyFail(String),
    #[error("A(1) is not diagonalizable over Z ({0:?})")]
    A1NotDiagonalizable(Decision),
}

/// A verified bound `u_a(K) <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedBound {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub diagonalizer: IntMatrix,
    /// `det(A^-1) Δ^2 / Δ`; a passing certificate has this `≐ 1`.
    pub predicted_target: LaurentPoly,
}

impl Certificate {
    pub fn new(a: LaurentMatrix, witness: LaurentMatrix, diagonalizer: Option<IntMatrix>) -> Self {
        Certificate { a, witness, diagonalizer }
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// The size-zero certificate. It passes exactly when the Alexander
    /// module is trivial, i.e. `Δ = 1`.
    pub fn trivial() -> Self {
        Certificate {
            a: LaurentMatrix::zeros(0, 0),
            witness: LaurentMatrix::zeros(0, 0),
            diagonalizer: Some(IntMatrix::zeros(0, 0)),
        }
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    /// Block sum of certificates for the components of a connected sum.
    /// `components[k]` lists the rows of the full Seifert matrix belonging to
    /// block `k`, and `size` is the full size `2g`.
    pub fn block_sum(parts: &[Certificate], components: &[Vec<usize>], size: usize) -> Result<Self> {
        if parts.len() != components.len() {
            return Err(Error::DimensionMismatch("one certificate per component required".into()));
        }
        let blocks: Vec<&LaurentMatrix> = parts.iter().map(|c| &c.a).collect();
        let a = LaurentMatrix::block_diagonal(&blocks);
        let mut s = LaurentMatrix::zeros(size, a.rows());
        let mut col0 = 0;
        for (part, rows) in parts.iter().zip(components) {
            if part.size() > 0 && part.witness.rows() != rows.len() {
                return Err(Error::DimensionMismatch("witness rows differ from component size".into()));
            }
            for (local, &global) in rows.iter().enumerate() {
                for j in 0..part.size() {
                    s.set(global, col0 + j, part.witness.get(local, j).clone());
                }
            }
            col0 += part.size();
        }
        let diagonalizer = parts
            .iter()
            .map(|c| c.diagonalizer.as_ref())
            .collect::<Option<Vec<_>>>()
            .map(|ps| IntMatrix::block_diagonal(&ps));
        Ok(Certificate { a, witness: s, diagonalizer })
    }
}

impl fmt::Display for Certificate {
    /// Sections `A:`, `S:` and optionally `P:`, one matrix row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn section(f: &mut fmt::Formatter<'_>, name: &str, rows: Vec<String>) -> fmt::Result {
            writeln!(f, "{name}:")?;
            for r in rows {
                writeln!(f, "{r}")?;
            }
            Ok(())
        }
        let lrows = |m: &LaurentMatrix| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(", "))
                .collect::<Vec<_>>()
        };
        section(f, "A", lrows(&self.a))?;
        section(f, "S", lrows(&self.witness))?;
        if let Some(p) = &self.diagonalizer {
            let rows = (0..p.rows())
                .map(|i| p.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
                .collect();
            section(f, "P", rows)?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    /// Each section header (`A:`, `S:`, `P:`) may carry matrix text on the
    /// same line; following lines continue the section, one or more rows
    /// per line. `#` starts a comment. An empty section is the 0x0 matrix.
    fn from_str(s: &str) -> Result<Self> {
        let mut sections: [Option<Vec<String>>; 3] = [None, None, None];
        let mut current: Option<usize> = None;
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let header = ["A:", "S:", "P:"].iter().position(|h| line.starts_with(h));
            let body = match header {
                Some(k) => {
                    if sections[k].is_some() {
                        return Err(Error::TableParse { line: lineno + 1, message: format!("duplicate section {}", &line[..2]) });
                    }
                    sections[k] = Some(Vec::new());
                    current = Some(k);
                    line[2..].trim()
                }
                None => line,
            };
            if body.is_empty() {
                continue;
            }
            let Some(k) = current else {
                return Err(Error::TableParse { line: lineno + 1, message: "matrix text before any section header".into() });
            };
            sections[k].as_mut().expect("section opened").push(body.to_string());
        }
        let [a, w, p] = sections;
        let a = a.ok_or_else(|| Error::Parse("missing section A:".into()))?;
        let w = w.ok_or_else(|| Error::Parse("missing section S:".into()))?;
        Ok(Certificate {
            a: a.join("; ").parse()?,
            witness: w.join("; ").parse()?,
            diagonalizer: p.map(|rows| rows.join("; ").parse()).transpose()?,
        })
    }
}

/// `det(A^-1) Δ^2 / Δ`, with `det(A^-1)` formed as `det(adj A) / det(A)^n`.
/// `None` when the quotient is not a Laurent polynomial.
pub fn predicted_target_alexander(a: &LaurentMatrix, delta: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    let n = a.rows() as u32;
    let det = a.determinant()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let det_adj = a.adjugate()?.determinant()?;
    Ok((&det_adj * delta).div_exact(&det.pow(n)))
}

pub fn verify_certificate(v: &SeifertMatrix, cert: &Certificate) -> std::result::Result<CheckedBound, CertFailure> {
    verify_certificate_with(v, cert, DEFAULT_RADIUS)
}

/// Runs the six checks in order and reports the first that fails.
pub fn verify_certificate_with(
    v: &SeifertMatrix,
    cert: &Certificate,
    radius: u32,
) -> std::result::Result<CheckedBound, CertFailure> {
    let bl = blanchfield_table(v).map_err(|e| CertFailure::Malformed(e.to_string()))?;
    verify_against(&bl, cert, radius)
}

fn verify_against(
    bl: &BlanchfieldPresentation,
    cert: &Certificate,
    radius: u32,
) -> std::result::Result<CheckedBound, CertFailure> {
    let malformed = |m: String| CertFailure::Malformed(m);
    let a = &cert.a;
    let n = a.rows();
    let size = bl.m.rows();
    if !a.is_square() {
        return Err(malformed(format!("A is {}x{}", a.rows(), a.cols())));
    }
    let s = if n == 0 && cert.witness.rows() == 0 { LaurentMatrix::zeros(size, 0) } else { cert.witness.clone() };
    if s.rows() != size || s.cols() != n {
        return Err(malformed(format!("S is {}x{}, expected {size}x{n}", s.rows(), s.cols())));
    }
    if let Some(p) = &cert.diagonalizer {
        if p.rows() != n || p.cols() != n {
            return Err(malformed(format!("P is {}x{}, expected {n}x{n}", p.rows(), p.cols())));
        }
    }
    let internal = |e: Error| CertFailure::Malformed(e.to_string());

    // (1)
    if !a.is_hermitian().map_err(internal)? {
        return Err(CertFailure::HermitianFail);
    }

    // (2)
    let det_a = a.determinant().map_err(internal)?;
    let det_fail = || CertFailure::DeterminantFail { det: det_a.to_string(), delta: bl.delta.to_string() };
    if !det_a.is_doteq(&bl.delta) {
        return Err(det_fail());
    }
    let predicted = predicted_target_alexander(a, &bl.delta).map_err(internal)?.ok_or_else(det_fail)?;
    if !predicted.is_unit() {
        return Err(det_fail());
    }

    // (3) S A = M W with W integral
    let m_adj = bl.m.adjugate().map_err(internal)?;
    let sa = s.mul(a).map_err(internal)?;
    let w = m_adj.mul(&sa).map_err(internal)?;
    if !w.entries().iter().all(|e| bl.det_m().divides(e)) {
        return Err(CertFailure::WitnessNotWellDefined);
    }

    // (4) λ(A)(e_i, e_j) = Bl(S e_i, S e_j)
    let a_adj = a.adjugate().map_err(internal)?;
    let (gram, det_m) = bl.gram(&s).map_err(internal)?;
    for i in 0..n {
        for j in 0..n {
            let lambda = ResidueClass::new(a_adj.get(i, j).clone(), det_a.clone()).map_err(internal)?;
            let blv = ResidueClass::new(gram.get(i, j).clone(), det_m.clone()).map_err(internal)?;
            if !lambda.residue_equal(&blv) {
                return Err(CertFailure::PairingMismatch {
                    i,
                    j,
                    lambda: lambda.to_string(),
                    blanchfield: blv.to_string(),
                });
            }
        }
    }

    // (5)
    surjectivity_proxy(&bl.m, a, &s)?;

    // (6)
    let a1 = a.at_one();
    let p = match &cert.diagonalizer {
        Some(p) if is_diagonalizing_witness(&a1, p) => p.clone(),
        _ => {
            let verdict = diagonalizable_over_z(&a1, radius).map_err(internal)?;
            match verdict.witness {
                Some(p) if verdict.is_yes() => p,
                _ => return Err(CertFailure::A1NotDiagonalizable(verdict.decision)),
            }
        }
    };
    let d = p.mul(&a1).and_then(|x| x.mul(&p.transpose())).map_err(internal)?;
    let n_plus = d.diagonal().iter().filter(|x| **x == 1.into()).count();
    Ok(CheckedBound { n, n_plus, n_minus: n - n_plus, diagonalizer: p, predicted_target: predicted })
}

/// Maximal minors of `[M | S]` generate the unit ideal, and at every
/// specialization `t = a` over the small primes the map is onto and the two
/// cokernels have equal dimension.
fn surjectivity_proxy(m: &LaurentMatrix, a: &LaurentMatrix, s: &LaurentMatrix) -> std::result::Result<(), CertFailure> {
    let size = m.rows();
    if size == 0 {
        return Ok(());
    }
    let ms = m.hstack(s).map_err(|e| CertFailure::Malformed(e.to_string()))?;
    let g = ms.minors_gcd(size).map_err(|e| CertFailure::Malformed(e.to_string()))?;
    if !g.is_unit() {
        return Err(CertFailure::SurjectivityProxyFail(format!("maximal minors of [M | S] have gcd {g}")));
    }
    let n = a.rows();
    for &p in &SPECIALIZATION_PRIMES {
        for x in 1..p {
            if rank_mod_p(&specialize(&ms, p, x), size, ms.cols(), p) != size {
                return Err(CertFailure::SurjectivityProxyFail(format!("[M | S] drops rank at t = {x} mod {p}")));
            }
            let coker_m = size - rank_mod_p(&specialize(m, p, x), size, size, p);
            let coker_a = n - rank_mod_p(&specialize(a, p, x), n, n, p);
            if coker_m != coker_a {
                return Err(CertFailure::SurjectivityProxyFail(format!(
                    "cokernel dimensions {coker_a} and {coker_m} differ at t = {x} mod {p}"
                )));
            }
        }
    }
    Ok(())
}

/// `0, 1, -1, 2, -2, ...`
fn digit_value(d: u64) -> i64 {
    let k = d.div_ceil(2) as i64;
    if d % 2 == 1 {
        k
    } else {
        -k
    }
}

/// Decodes candidate `index` into a vector of `size` Laurent polynomials
/// with exponents `0..=degree` and coefficients in `[-height, height]`.
/// The first entry's low coefficients vary fastest, so small vectors come
/// first.
fn decode_candidate(mut index: u64, size: usize, degree: u32, height: u32) -> Vec<LaurentPoly> {
    let base = 2 * height as u64 + 1;
    (0..size)
        .map(|_| {
            let coeffs: Vec<i64> = (0..=degree)
                .map(|_| {
                    let d = index % base;
                    index /= base;
                    digit_value(d)
                })
                .collect();
            LaurentPoly::from_coeffs(0, &coeffs)
        })
        .collect()
}

/// Searches for a certificate `A = [εΔ]`, `S = x` of size one.
///
/// Candidates `(x, ε)` are visited in a fixed total order (`x` by
/// [`decode_candidate`] index, then `ε = +1` before `-1`) and the first one
/// passing [`verify_certificate`] is returned, independent of how the
/// parallel search is scheduled. A knot with `Δ = 1` returns the size-zero
/// certificate. Knots whose Nakanishi bound or signature bound exceeds one
/// return `None` without searching.
///
/// The candidate space has `(2h + 1)^((d + 1) 2g)` vectors, which is only
/// practical for genus one at the default bounds.
pub fn search_rank_one_certificate(v: &SeifertMatrix, degree_bound: u32, height_bound: u32) -> Option<Certificate> {
    let bl = blanchfield_table(v).ok()?;
    if bl.delta.is_one() {
        let c = Certificate::trivial();
        return verify_against(&bl, &c, DEFAULT_RADIUS).is_ok().then_some(c);
    }
    if v.signature_at_minus_one().abs() > 2 {
        return None;
    }
    if nakanishi_lower_bound(&v.alexander_presentation(), &DEFAULT_PRIMES).ok()? > 1 {
        return None;
    }
    let size = v.size();
    let positions = size as u32 * (degree_bound + 1);
    let total = (2 * height_bound as u64 + 1).checked_pow(positions).unwrap_or(u64::MAX);
    // det M = w Δ, so ε/Δ = ε w / det M
    let w = bl.delta.doteq(bl.det_m())?.to_poly();
    let eps = [LaurentPoly::one(), -LaurentPoly::one()];
    let make = |k: u64| {
        let x = decode_candidate(k / 2, size, degree_bound, height_bound);
        let sign = &eps[(k % 2) as usize];
        (x, sign)
    };
    let found = (2..total.saturating_mul(2)).into_par_iter().find_first(|&k| {
        let (x, sign) = make(k);
        let q = match bl.pairing(&x, &x) {
            Ok(r) => r.numerator().clone(),
            Err(_) => return false,
        };
        if !bl.det_m().divides(&(&q - &(sign * &w))) {
            return false;
        }
        verify_against(&bl, &rank_one(&bl.delta, sign, x), DEFAULT_RADIUS).is_ok()
    })?;
    let (x, sign) = make(found);
    Some(rank_one(&bl.delta, sign, x))
}

fn rank_one(delta: &LaurentPoly, sign: &LaurentPoly, x: Vec<LaurentPoly>) -> Certificate {
    let a = LaurentMatrix::diagonal(&[sign * delta]);
    Certificate { a, witness: LaurentMatrix::column_vector(x), diagonalizer: Some(IntMatrix::identity(1)) }
}

/// Certificate for a knot whose Seifert matrix splits into diagonal blocks:
/// searches each block separately and assembles the block sum. `None` if
/// `V` has a single block or any block search fails.
pub fn assemble_block_certificate(v: &SeifertMatrix, degree_bound: u32, height_bound: u32) -> Option<Certificate> {
    let comps = v.block_components();
    if comps.len() < 2 {
        return None;
    }
    let parts = comps
        .iter()
        .map(|c| search_rank_one_certificate(&v.restrict(c).ok()?, degree_bound, height_bound))
        .collect::<Option<Vec<_>>>()?;
    let cert = Certificate::block_sum(&parts, &comps, v.size()).ok()?;
    verify_certificate(v, &cert).is_ok().then_some(cert)
}
