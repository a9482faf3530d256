//! Orders of finitely presented `Z[t, t^-1]`-modules and the mod-p lower
//! bound for the minimal number of generators (Nakanishi index).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp::{is_prime, pow_mod, reduce_int, smith_diagonal, FpPoly};
use crate::laurent::LaurentPoly;
use crate::matrix::{combinations, LaurentMatrix};

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// A presentation `Λ^m --A--> Λ^n --> H --> 0`; rows are generators,
/// columns are relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub matrix: LaurentMatrix,
}

impl Presentation {
    pub fn new(matrix: LaurentMatrix) -> Self {
        Presentation { matrix }
    }

    pub fn generators(&self) -> usize {
        self.matrix.rows()
    }

    pub fn relations(&self) -> usize {
        self.matrix.cols()
    }
}

impl From<LaurentMatrix> for Presentation {
    fn from(m: LaurentMatrix) -> Self {
        Presentation::new(m)
    }
}

/// Smith normal form over `F_p[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub prime: u64,
    /// Monic, non-unit, nonzero; each divides the next.
    pub invariant_factors: Vec<FpPoly>,
    /// Number of free summands (zero invariant factors plus surplus rows).
    pub rank_deficiency: usize,
}

impl SnfResult {
    /// Minimal number of generators of the reduced module.
    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len() + self.rank_deficiency
    }
}

/// gcd of the maximal (`n x n`) minors, canonicalized. A presentation with
/// no generators presents the zero module, of order 1.
pub fn order_of_presentation(p: &Presentation) -> LaurentPoly {
    let n = p.generators();
    if n == 0 {
        return LaurentPoly::one();
    }
    if p.relations() < n {
        return LaurentPoly::zero();
    }
    p.matrix.minors_gcd(n).expect("n <= min(rows, cols)")
}

/// Whether `order(H) * v` is zero in `H`, i.e. lies in the column span.
///
/// Square presentations are decided exactly by adjugate integrality. For
/// wider matrices a `true` answer is exact (an integral solution was found
/// on some maximal column subset) while `false` may be conservative: ideal
/// membership over the two-dimensional ring is not decided in general.
pub fn annihilation_check(p: &Presentation, v: &[LaurentPoly]) -> Result<bool> {
    let n = p.generators();
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {} generators", v.len(), n)));
    }
    let ord = order_of_presentation(p);
    let target: Vec<LaurentPoly> = v.iter().map(|x| x * &ord).collect();
    if target.iter().all(LaurentPoly::is_zero) {
        return Ok(true);
    }
    if p.relations() < n {
        return Ok(false);
    }
    // A specialization t -> a over F_p in which the target leaves the span
    // rules membership out.
    for &prime in &[2u64, 3, 5, 7] {
        for a in 1..prime {
            let m = specialize(&p.matrix, prime, a);
            let rank_m = rank_mod_p(&m, n, p.relations(), prime);
            let mut aug = Vec::with_capacity(n * (p.relations() + 1));
            for i in 0..n {
                aug.extend_from_slice(&m[i * p.relations()..(i + 1) * p.relations()]);
                aug.push(eval_mod(&target[i], prime, a));
            }
            if rank_mod_p(&aug, n, p.relations() + 1, prime) > rank_m {
                return Ok(false);
            }
        }
    }
    let col = LaurentMatrix::column_vector(target);
    for cols in combinations(p.relations(), n) {
        let rows: Vec<usize> = (0..n).collect();
        let sub = p.matrix.submatrix(&rows, &cols);
        let Ok(inv) = sub.inverse_over_fraction_field() else {
            continue;
        };
        let w = inv.numerators.mul(&col)?;
        if w.entries().iter().all(|e| inv.denominator.divides(e)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smith normal form of the presentation reduced mod `prime`. Each row is
/// first multiplied by a power of `t` (a unit) so all entries lie in
/// `F_p[t]`; powers of `t` are then stripped from the invariant factors.
pub fn snf_over_fp(p: &Presentation, prime: u64) -> Result<SnfResult> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    let (rows, cols) = (p.matrix.rows(), p.matrix.cols());
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let shift = (0..cols).filter_map(|j| p.matrix.get(i, j).min_exp()).min().unwrap_or(0);
        for j in 0..cols {
            entries.push(FpPoly::from_laurent_shifted(p.matrix.get(i, j), prime, -shift));
        }
    }
    let diag = smith_diagonal(entries, rows, cols, prime);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors = diag
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.strip_t().monic())
        .filter(|d| !d.is_constant())
        .collect();
    Ok(SnfResult { prime, invariant_factors, rank_deficiency: rows - nonzero })
}

/// Largest mod-p generator count over `primes`. Each count is a lower bound
/// on the minimal number of generators of the module. An empty prime list
/// gives 0.
pub fn nakanishi_lower_bound(p: &Presentation, primes: &[u64]) -> Result<usize> {
    let counts = primes
        .par_iter()
        .map(|&q| snf_over_fp(p, q).map(|s| s.generator_count()))
        .collect::<Result<Vec<_>>>()?;
    Ok(counts.into_iter().max().unwrap_or(0))
}

/// Value of `f` at `t = a` in `F_p` (`a` nonzero).
pub fn eval_mod(f: &LaurentPoly, p: u64, a: u64) -> u64 {
    let a_inv = pow_mod(a, p - 2, p);
    let mut acc = 0u128;
    for (e, c) in f.terms() {
        let base = if e >= 0 { pow_mod(a, e as u64, p) } else { pow_mod(a_inv, (-e) as u64, p) };
        acc = (acc + reduce_int(c, p) as u128 * base as u128) % p as u128;
    }
    acc as u64
}

/// Row-major specialization of `m` at `t = a` over `F_p`.
pub fn specialize(m: &LaurentMatrix, p: u64, a: u64) -> Vec<u64> {
    m.entries().iter().map(|e| eval_mod(e, p, a)).collect()
}

pub fn rank_mod_p(m: &[u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, piv * cols + j);
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for r in 0..rows {
            if r == rank || a[r * cols + c] == 0 {
                continue;
            }
            let f = (a[r * cols + c] as u128 * inv as u128 % p as u128) as u64;
            for j in 0..cols {
                let sub = (f as u128 * a[rank * cols + j] as u128 % p as u128) as u64;
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
