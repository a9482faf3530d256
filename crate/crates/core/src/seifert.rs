//! Seifert matrices and the classical invariants read off from them.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::orders::Presentation;

/// A square integer matrix `V` of even size with `det(V - V^T) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::NotSeifert(format!("{}x{} is not square", v.rows(), v.cols())));
        }
        if !v.rows().is_multiple_of(2) {
            return Err(Error::NotSeifert(format!("odd size {}", v.rows())));
        }
        let det = v.sub(&v.transpose())?.determinant()?;
        if !det.is_one() {
            return Err(Error::NotSeifert(format!("det(V - V^T) = {det}, expected 1")));
        }
        Ok(SeifertMatrix(v))
    }

    pub fn unknot() -> Self {
        SeifertMatrix(IntMatrix::zeros(0, 0))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }

    /// `tV - V^T`, a square presentation matrix of the Alexander module.
    pub fn alexander_matrix(&self) -> LaurentMatrix {
        let n = self.size();
        LaurentMatrix::from_fn(n, n, |i, j| {
            LaurentPoly::from_terms([(1, self.0[(i, j)].clone()), (0, -self.0[(j, i)].clone())])
        })
    }

    pub fn alexander_presentation(&self) -> Presentation {
        Presentation::new(self.alexander_matrix())
    }

    /// `det(tV - V^T)`, normalized so that `Δ(1) = 1` and `Δ(t^-1) = Δ(t)`.
    pub fn alexander_polynomial(&self) -> Result<LaurentPoly> {
        self.alexander_matrix().determinant()?.normalize_alexander()
    }

    /// Signature of `V + V^T`, computed exactly.
    pub fn signature_at_minus_one(&self) -> i64 {
        self.0.add(&self.0.transpose()).and_then(|s| s.signature()).expect("V + V^T is symmetric")
    }

    /// Levine-Tristram signature at `ω = exp(2πi θ)`: the signature of the
    /// hermitian matrix `(1 - ω)V + (1 - ω̄)V^T`.
    ///
    /// Eigenvalues come from a double-precision symmetric eigensolver on the
    /// real `2n x 2n` embedding. Any eigenvalue within `1e-9 * ‖H‖_F` of zero
    /// is reported as `OmegaAtAlexanderRoot` rather than given a sign.
    pub fn levine_tristram_signature(&self, theta: &BigRational) -> Result<SignatureSample> {
        if !theta.is_positive() || *theta >= BigRational::one() {
            return Err(Error::InvalidTheta(theta.to_string()));
        }
        let n = self.size();
        if n == 0 {
            return Ok(SignatureSample { theta: theta.clone(), value: 0 });
        }
        let angle = 2.0 * std::f64::consts::PI * theta.to_f64().expect("finite rational");
        let (s, c) = angle.sin_cos();
        let v = |i: usize, j: usize| self.0[(i, j)].to_f64().expect("entry fits in f64");
        // H = (1-ω)V + (1-ω̄)V^T: Re = (1 - cos)(V + V^T), Im = sin (V^T - V)
        let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
        let mut frob = 0.0;
        for i in 0..n {
            for j in 0..n {
                let re = (1.0 - c) * (v(i, j) + v(j, i));
                let im = s * (v(j, i) - v(i, j));
                frob += re * re + im * im;
                emb[(i, j)] = re;
                emb[(i + n, j + n)] = re;
                emb[(i, j + n)] = -im;
                emb[(i + n, j)] = im;
            }
        }
        let gap = 1e-9 * frob.sqrt();
        let eig = emb.symmetric_eigenvalues();
        if eig.iter().any(|x| x.abs() <= gap) {
            return Err(Error::OmegaAtAlexanderRoot { theta: theta.to_string() });
        }
        let pos = eig.iter().filter(|&&x| x > 0.0).count() as i64;
        let neg = eig.iter().filter(|&&x| x < 0.0).count() as i64;
        // each eigenvalue of H appears twice in the embedding
        Ok(SignatureSample { theta: theta.clone(), value: (pos - neg) / 2 })
    }

    /// Block sum; realizes the connected sum of the two knots.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        SeifertMatrix(IntMatrix::block_diagonal(&[&self.0, &other.0]))
    }

    /// Splits `V` into diagonal blocks that are themselves Seifert matrices,
    /// returning the index set of each block. A single block means no
    /// decomposition was found.
    pub fn block_components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.0[(i, j)].is_zero() {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    if a != b {
                        comp[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of_group: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut comp, i);
            match root_of_group.iter().position(|&x| x == r) {
                Some(g) => groups[g].push(i),
                None => {
                    root_of_group.push(r);
                    groups.push(vec![i]);
                }
            }
        }
        let all_valid = groups.iter().all(|g| SeifertMatrix::new(self.0.submatrix(g, g)).is_ok());
        if groups.len() <= 1 || !all_valid {
            return vec![(0..n).collect()];
        }
        groups
    }

    pub fn restrict(&self, idx: &[usize]) -> Result<SeifertMatrix> {
        SeifertMatrix::new(self.0.submatrix(idx, idx))
    }
}

impl TryFrom<IntMatrix> for SeifertMatrix {
    type Error = Error;
    fn try_from(v: IntMatrix) -> Result<Self> {
        SeifertMatrix::new(v)
    }
}

/// A Levine-Tristram signature value at `ω = exp(2πi θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSample {
    pub theta: BigRational,
    pub value: i64,
}

/// `p/q` or an integer, as a rational.
pub fn parse_theta(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidTheta(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(IntMatrix::from_rows(&[[-1, 1], [0, -1]])).unwrap()
    }

    fn figure_eight() -> SeifertMatrix {
        SeifertMatrix::new(IntMatrix::from_rows(&[[1, 1], [0, -1]])).unwrap()
    }

    fn theta(s: &str) -> BigRational {
        parse_theta(s).unwrap()
    }

    #[test]
    fn validation() {
        let v = IntMatrix::from_rows(&[[-1, 1], [0, -1]]);
        let skew = v.sub(&v.transpose()).unwrap();
        assert_eq!(skew, IntMatrix::from_rows(&[[0, 1], [-1, 0]]));
        assert!(SeifertMatrix::new(v).is_ok());
        assert!(matches!(SeifertMatrix::new(IntMatrix::identity(2)), Err(Error::NotSeifert(_))));
        assert!(SeifertMatrix::new(IntMatrix::zeros(0, 0)).is_ok());
        assert!(matches!(SeifertMatrix::new(IntMatrix::identity(1)), Err(Error::NotSeifert(_))));
        // det(V - V^T) = 4
        assert!(SeifertMatrix::new(IntMatrix::from_rows(&[[0, 2], [0, 0]])).is_err());
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(trefoil().alexander_polynomial().unwrap(), p("t - 1 + t^-1"));
        assert_eq!(figure_eight().alexander_matrix().determinant().unwrap(), p("-t^2 + 3t - 1"));
        assert_eq!(figure_eight().alexander_polynomial().unwrap(), p("-t + 3 - t^-1"));
        assert_eq!(SeifertMatrix::unknot().alexander_polynomial().unwrap(), p("1"));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(trefoil().signature_at_minus_one(), -2);
        assert_eq!(figure_eight().signature_at_minus_one(), 0);
        assert_eq!(SeifertMatrix::unknot().signature_at_minus_one(), 0);
    }

    #[test]
    fn levine_tristram_examples() {
        let t = trefoil();
        assert_eq!(t.levine_tristram_signature(&theta("1/2")).unwrap().value, -2);
        assert_eq!(t.levine_tristram_signature(&theta("1/4")).unwrap().value, -2);
        assert_eq!(t.levine_tristram_signature(&theta("1/100")).unwrap().value, 0);
        assert_eq!(t.levine_tristram_signature(&theta("99/100")).unwrap().value, 0);
        assert!(matches!(t.levine_tristram_signature(&theta("1/6")), Err(Error::OmegaAtAlexanderRoot { .. })));
        assert!(matches!(t.levine_tristram_signature(&theta("0")), Err(Error::InvalidTheta(_))));
        assert!(matches!(t.levine_tristram_signature(&theta("3/2")), Err(Error::InvalidTheta(_))));
        assert_eq!(SeifertMatrix::unknot().levine_tristram_signature(&theta("1/3")).unwrap().value, 0);
    }

    #[test]
    fn connected_sum_examples() {
        let g = trefoil().connected_sum(&trefoil());
        assert_eq!(g.alexander_polynomial().unwrap(), p("t - 1 + t^-1").pow(2));
        let k = trefoil().connected_sum(&SeifertMatrix::unknot());
        assert_eq!(k.alexander_polynomial().unwrap(), p("t - 1 + t^-1"));
        assert_eq!(k.signature_at_minus_one(), -2);
        assert_eq!(trefoil().connected_sum(&figure_eight()).signature_at_minus_one(), -2);
    }

    #[test]
    fn block_components_split_connected_sums() {
        let g = trefoil().connected_sum(&figure_eight());
        assert_eq!(g.block_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(trefoil().block_components(), vec![vec![0, 1]]);
    }

    #[test]
    fn theta_parsing() {
        assert_eq!(theta("1/4"), BigRational::new(1.into(), 4.into()));
        assert!(parse_theta("1/0").is_err());
        assert!(parse_theta("x").is_err());
    }
}
