//! Symmetrized twisted period polynomials of the kernel forms `R_n`.
//!
//! [`theorem1_polynomial`] evaluates the closed form;
//! [`lemma_sum_polynomial`] rebuilds the same polynomial from six per-residue
//! case contributions and serves as an independent oracle.

mod cases;
mod context;
mod quadruples;
mod theorem;

pub use cases::{case_contribution, lemma_sum_polynomial, per_h_symmetrized_period, per_h_symmetrized_periods, LemmaCase};
pub use context::{EpsilonFlags, PeriodContext};
pub use quadruples::{enumerate_quadruples, FareyQuadruple};
pub use theorem::{g_polynomial, two_i_power, period_from_polynomial, theorem1_polynomial, twisted_period};
