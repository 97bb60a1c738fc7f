//! Exact arithmetic: cyclotomic numbers, polynomials over them, and real
//! quadratic surds.

mod cyclotomic;
pub(crate) mod linalg;
mod number;
mod polynomial;
pub(crate) mod rational_poly;
pub mod pretty;
mod serial;
mod surd;

pub use cyclotomic::{cyclotomic_polynomial, field, CyclotomicField};
pub use number::{cyclotomic_embed, numeric_eval, root_of_unity, ExactNumber};
pub use polynomial::ExactPolynomial;
pub use surd::{decompose_over, parse_rational, recognize_surd, sqrt_integer, sqrt_natural, QuadSurd};
