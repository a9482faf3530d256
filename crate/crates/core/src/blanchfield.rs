//! Residues in `Q(t)/Z[t, t^-1]`, the Blanchfield pairing read off a Seifert
//! matrix, and the linking form `λ(A)` of a hermitian matrix.
//!
//! The pairing convention is
//!
//! ```text
//! Bl(x, y) = conj(x)^T (t - 1) (tV - V^T)^-1 y   mod Z[t, t^-1]
//! ```
//!
//! Since `conj(tV - V^T)^T = -t^-1 (tV - V^T)`, the matrix
//! `(t - 1)(tV - V^T)^-1` is exactly hermitian, and the pairing is well
//! defined on the module presented by `tV - V^T`.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{laurent_gcd, LaurentPoly};
use crate::matrix::LaurentMatrix;
use crate::seifert::SeifertMatrix;

/// A fraction `numerator / denominator` read modulo `Z[t, t^-1]`.
///
/// Stored unreduced. Two classes are equal when the denominator product
/// divides the cross difference, see [`ResidueClass::residue_equal`].
#[derive(Clone)]
pub struct ResidueClass {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl ResidueClass {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ResidueClass { numerator, denominator })
    }

    pub fn zero() -> Self {
        ResidueClass { numerator: LaurentPoly::zero(), denominator: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    /// `a/b ≡ c/d` iff `bd` divides `ad - cb` in `Z[t, t^-1]`.
    pub fn residue_equal(&self, other: &ResidueClass) -> bool {
        if self.denominator == other.denominator {
            return self.denominator.divides(&(&self.numerator - &other.numerator));
        }
        let diff = &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator);
        (&self.denominator * &other.denominator).divides(&diff)
    }

    /// Whether the class is zero, i.e. the fraction is a Laurent polynomial.
    pub fn is_zero(&self) -> bool {
        self.denominator.divides(&self.numerator)
    }

    pub fn add(&self, other: &ResidueClass) -> ResidueClass {
        if self.denominator == other.denominator {
            return ResidueClass {
                numerator: &self.numerator + &other.numerator,
                denominator: self.denominator.clone(),
            };
        }
        ResidueClass {
            numerator: &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn neg(&self) -> ResidueClass {
        ResidueClass { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> ResidueClass {
        ResidueClass { numerator: &self.numerator * p, denominator: self.denominator.clone() }
    }

    /// Image under `t -> t^-1`.
    pub fn conjugate(&self) -> ResidueClass {
        ResidueClass { numerator: self.numerator.conjugate(), denominator: self.denominator.conjugate() }
    }

    /// An equal class in a tidier form: common factors cancelled, the
    /// denominator canonical, and, when the denominator has leading and
    /// trailing coefficients `±1`, the numerator reduced into the exponent
    /// window `[min_exp(den), max_exp(den))`. The window makes the
    /// representative unique for such denominators.
    pub fn simplified(&self) -> ResidueClass {
        let g = laurent_gcd(&self.numerator, &self.denominator);
        let mut num = self.numerator.div_exact(&g).expect("gcd divides numerator");
        let den = self.denominator.div_exact(&g).expect("gcd divides denominator");
        if den.is_unit() || num.is_zero() {
            return ResidueClass::zero();
        }
        let canon = den.canonical();
        let u = den.doteq(&canon).expect("canonical form is an associate");
        // den = u^-1 * canon, so num/den = (u * num)/canon
        num = num.mul_unit(u);
        let den = canon;
        let (lo, hi) = (den.min_exp().unwrap(), den.max_exp().unwrap());
        let lead = den.leading_coeff().unwrap().clone();
        let trail = den.trailing_coeff().unwrap().clone();
        let unit = |c: &num_bigint::BigInt| c == &1.into() || c == &(-1).into();
        if unit(&lead) && unit(&trail) {
            while let Some(top) = num.max_exp().filter(|&e| e >= hi) {
                let c = num.coeff(top) * &lead;
                num -= &den.shift(top - hi).scale(&c);
            }
            while let Some(bottom) = num.min_exp().filter(|&e| e < lo) {
                let c = num.coeff(bottom) * &trail;
                num -= &den.shift(bottom - lo).scale(&c);
            }
        }
        if num.is_zero() {
            return ResidueClass::zero();
        }
        ResidueClass { numerator: num, denominator: den }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplified();
        let wrap = |p: &LaurentPoly| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{} / {} (mod Z[t,1/t])", wrap(&s.numerator), wrap(&s.denominator))
    }
}

impl fmt::Debug for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueClass({} / {})", self.numerator, self.denominator)
    }
}

/// The Blanchfield pairing on the generators `e_i` of the module presented
/// by `M = tV - V^T`.
#[derive(Clone, Debug)]
pub struct BlanchfieldPresentation {
    pub m: LaurentMatrix,
    pub delta: LaurentPoly,
    /// `table[i][j] = Bl(e_i, e_j)`.
    pub table: Vec<Vec<ResidueClass>>,
    /// `(t - 1) adj(M)`; the table is this over `det(M)`.
    pairing_numerators: LaurentMatrix,
    det_m: LaurentPoly,
}

impl BlanchfieldPresentation {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// `Bl(x, y)` for vectors in the free module on the generators.
    pub fn pairing(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<ResidueClass> {
        let n = self.size();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!("vectors of length {} and {} for {n} generators", x.len(), y.len())));
        }
        Ok(ResidueClass { numerator: bilinear(&self.pairing_numerators, x, y), denominator: self.det_m.clone() })
    }

    /// `conj(S)^T (t - 1) adj(M) S` and `det(M)`: the Gram matrix of the
    /// columns of `S` as a numerator matrix over one denominator.
    pub fn gram(&self, s: &LaurentMatrix) -> Result<(LaurentMatrix, LaurentPoly)> {
        let g = s.hermitian_conjugate().mul(&self.pairing_numerators)?.mul(s)?;
        Ok((g, self.det_m.clone()))
    }

    pub fn det_m(&self) -> &LaurentPoly {
        &self.det_m
    }

    fn check(&self) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if !self.table[j][i].residue_equal(&self.table[i][j].conjugate()) {
                    return Err(Error::ConventionSelfCheckFailed(format!("entry ({i}, {j}) is not hermitian")));
                }
                if !self.table[i][j].mul_poly(&self.delta).is_zero() {
                    return Err(Error::ConventionSelfCheckFailed(format!("entry ({i}, {j}) is not killed by delta")));
                }
            }
        }
        Ok(())
    }
}

/// `conj(x)^T N y`.
fn bilinear(n: &LaurentMatrix, x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = LaurentPoly::zero();
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                row += &(n.get(i, j) * yj);
            }
        }
        acc += &(&xi.conjugate() * &row);
    }
    acc
}

/// Blanchfield pairing table of the knot with Seifert matrix `v`.
pub fn blanchfield_table(v: &SeifertMatrix) -> Result<BlanchfieldPresentation> {
    let m = v.alexander_matrix();
    let delta = v.alexander_polynomial()?;
    let det_m = m.determinant()?;
    let t_minus_one = LaurentPoly::from_coeffs(0, &[-1, 1]);
    let pairing_numerators = m.adjugate()?.scale(&t_minus_one);
    let n = m.rows();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ResidueClass { numerator: pairing_numerators.get(i, j).clone(), denominator: det_m.clone() })
                .collect()
        })
        .collect();
    let b = BlanchfieldPresentation { m, delta, table, pairing_numerators, det_m };
    b.check()?;
    Ok(b)
}

/// `λ(A)(x, y) = conj(x)^T A^-1 y`.
pub fn lambda_pairing(a: &LaurentMatrix, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<ResidueClass> {
    if !a.is_hermitian()? {
        return Err(Error::NotHermitian);
    }
    if x.len() != a.rows() || y.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {} for a {}x{} form",
            x.len(),
            y.len(),
            a.rows(),
            a.rows()
        )));
    }
    let inv = a.inverse_over_fraction_field()?;
    Ok(ResidueClass { numerator: bilinear(&inv.numerators, x, y), denominator: inv.denominator })
}

/// Outcome of re-checking a Blanchfield table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub hermitian: bool,
    pub delta_annihilates: bool,
    pub sesquilinear: bool,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.hermitian && self.delta_annihilates && self.sesquilinear
    }
}

/// Re-verifies the table entries as stored: hermitian symmetry,
/// annihilation by `Δ`, and `Bl(p x, y) = conj(p) Bl(x, y)` on a fixed set
/// of sample polynomials and basis vectors.
pub fn pairing_audit(b: &BlanchfieldPresentation) -> AuditReport {
    let n = b.size();
    let cells = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let hermitian = cells().all(|(i, j)| b.table[j][i].residue_equal(&b.table[i][j].conjugate()));
    let delta_annihilates = cells().all(|(i, j)| b.table[i][j].mul_poly(&b.delta).is_zero());
    let samples: Vec<LaurentPoly> =
        ["t", "t^-1 - 2", "3t^2 - t + 1"].iter().map(|s| s.parse().expect("valid sample")).collect();
    let basis = |k: usize| (0..n).map(|i| if i == k { LaurentPoly::one() } else { LaurentPoly::zero() }).collect::<Vec<_>>();
    let sesquilinear = cells().all(|(i, j)| {
        samples.iter().all(|p| {
            let px: Vec<LaurentPoly> = basis(i).iter().map(|c| c * p).collect();
            match b.pairing(&px, &basis(j)) {
                Ok(lhs) => lhs.residue_equal(&b.table[i][j].mul_poly(&p.conjugate())),
                Err(_) => false,
            }
        })
    });
    AuditReport { hermitian, delta_annihilates, sesquilinear }
}
