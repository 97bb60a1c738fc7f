//! Cusp forms written as combinations of the `R_n`, Hecke-matrix
//! diagonalization, and ratios of twisted L-values of such forms.

mod combination;
mod factored;
mod fixtures;
mod matrix;
mod quadratic;

pub use combination::{
    twisted_lambda, twisted_lambda_ratio, twisted_period_of_combination, RnCombination,
};
pub use factored::parse_factored;
pub use fixtures::{
    load_fixtures, parse_fixtures, CentralValueFixture, CentralValueRow, FixtureRegistry, FormTable,
    MatrixFixture, Parity, RatioFixture, RatioRow, FIXTURE_JSON,
};
pub use matrix::{char_poly, eigen_decompose, Eigenpair, RationalMatrix};
pub use quadratic::QuadraticExtension;
