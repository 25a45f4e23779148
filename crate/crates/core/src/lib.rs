//! Exact inverses of reciprocal Hankel matrices.
//!
//! A reciprocal Hankel matrix `R_n(a_k)` has entry `(i, j)` equal to
//! `1 / a_{i+j-1}`. For the Hilbert matrix (`a_k = k`), the Filbert matrix
//! (`a_k = F_k`), its Fibonacci-polynomial generalisation, and several
//! binomial and Fibonomial sequences, the inverse has a closed form that this
//! crate evaluates exactly and checks against an independent fraction-free
//! elimination.
//!
//! * [`exact`]: big integers, rationals, integer polynomials.
//! * [`sequences`]: Fibonacci numbers and polynomials, binomials,
//!   Fibonomials, family term functions.
//! * [`hankel`]: matrices, `R_n` construction, the elimination oracle, and
//!   the cleared polynomial identity check.
//! * [`closedform`]: the inverse-entry formulas.
//! * [`verifier`]: end-to-end checks, conjecture scans, certificate checks.

pub mod closedform;
pub mod error;
pub mod exact;
pub mod hankel;
pub mod sequences;
pub mod verifier;

pub use closedform::{assemble_inverse, AnyMatrix, MatrixSpec, SignVariant};
pub use error::{Error, Result};
pub use exact::{IntPoly, Integer, Rational};
pub use hankel::{bareiss_inverse, build_reciprocal_hankel, mat_mul, ExactMatrix, VerificationReport};
pub use sequences::FamilySpec;
