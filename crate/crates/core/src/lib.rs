//! Exact twisted period polynomials of the cusp forms `R_n` on Gamma_0(N) and
//! the trace of products of twisted and untwisted Hecke L-values over an
//! orthogonal basis.
//!
//! The production path evaluates closed forms in generalized Bernoulli
//! polynomials; [`period_formula::lemma_sum_polynomial`] recomputes the same
//! polynomials by summing the six matrix-class contributions residue by
//! residue, and serves as an independent oracle.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod eigenforms;
pub mod error;
pub mod exact_field;
pub mod numeric_verify;
pub mod period_formula;
pub mod trace_formula;

pub use error::{Error, Result};
pub use exact_field::{ExactNumber, ExactPolynomial, QuadSurd};
