//! Exact verification of a q-Gaussian symmetrization identity and of its
//! formal delta-function counterpart.
//!
//! * [`laurent`]: sparse Laurent polynomials over the integers and the
//!   symmetric-group action on `z`-indices.
//! * [`qnum`]: symmetric q-integers, q-factorials and q-binomials.
//! * [`ident`]: the polynomial identity with its denominator cleared.
//! * [`dist`]: truncated bilateral series, delta calculus and the
//!   distribution identity, including the stage-by-stage rewriting.
//! * [`cli`]: the command-line harness.

pub mod cli;
pub mod dist;
pub mod error;
pub mod ident;
pub mod laurent;
pub mod modp;
pub mod qnum;
pub mod report;

pub use error::{Error, Result};
pub use laurent::{ExponentVector, LaurentPoly, Permutation, VarId};
pub use qnum::QScalar;
pub use report::{Verdict, VerifyReport};
