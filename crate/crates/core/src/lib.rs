//! Verification routines for `pspan(Q(m,n))`, the number of independent line
//! fields on the Wall manifold `Q(m,n)`.
//!
//! The crate is split along the lines of the argument it checks:
//!
//! * [`invariants`]: closed-form integer invariants (2-adic valuation,
//!   Hurwitz–Radon numbers, the span formula and its fibration bound).
//! * [`f2cohomology`]: graded polynomial quotient rings over `F_2`, Wall's
//!   total Stiefel–Whitney class and the virtual Stiefel–Whitney obstruction.
//! * [`clifford`]: exact Gaussian-integer construction of the anticommuting
//!   skew-Hermitian family `A_1, …, A_{2ν+1}` on `C^{n+1}`.
//! * [`fields`]: numerical evaluation of the quasi-invariant vector fields on
//!   `CP^n × S^m × S^1`, with tangency, sign and rank checks.

pub mod clifford;
pub mod error;
pub mod f2cohomology;
pub mod fields;
pub mod invariants;
pub mod linalg;

pub use clifford::{CliffordFamily, GaussMatrix, Generator, Sign};
pub use error::{Error, Result};
pub use f2cohomology::{F2Poly, RingKind, RingPresentation};
pub use fields::{AmbientTangent, Involution, QuasiSign, TotalSpacePoint};
pub use invariants::WallParams;
