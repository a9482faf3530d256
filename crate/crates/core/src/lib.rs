//! Exact bounds on the algebraic unknotting number of a knot, computed from
//! its Seifert matrix.
//!
//! The lower bounds come from the Nakanishi index (minimal number of
//! generators of the Alexander module, bounded via Smith normal forms mod
//! p), the signature, and nontriviality of the Alexander polynomial. Upper
//! bounds come from certificates: hermitian matrices `A` over `Z[t, t^-1]`
//! whose linking form is isometric to the Blanchfield form and whose value
//! at `t = 1` diagonalizes over `Z`. Every certificate is re-verified before
//! it is reported.
//!
//! All algebra is exact. The only floating-point computation is the
//! Levine-Tristram signature away from `ω = -1`, which refuses to answer
//! when an eigenvalue is too close to zero.

pub mod blanchfield;
pub mod bounds;
pub mod certificate;
pub mod diag;
pub mod error;
pub mod fp;
pub mod intmat;
pub mod laurent;
pub mod matrix;
pub mod orders;
pub mod report;
pub mod seifert;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matrix::LaurentMatrix;
pub use seifert::SeifertMatrix;
