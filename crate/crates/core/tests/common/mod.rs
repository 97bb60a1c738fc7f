//! Grid construction and property checks shared by the property tests and
//! the acceptance target.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rayon::prelude::*;

use twisted_periods::arith::binomial;
use twisted_periods::bernoulli::{bernoulli_poly, generalized_by_binomial, generalized_by_shift};
use twisted_periods::characters::{bezout_completion, enumerate_primitive_characters, DirichletCharacter};
use twisted_periods::period_formula::{enumerate_quadruples, theorem1_polynomial, PeriodContext};
use twisted_periods::ExactNumber;

pub const GRID_LEVELS: [u64; 4] = [1, 2, 3, 4];
pub const GRID_MODULI: [u64; 6] = [3, 4, 5, 7, 8, 12];
pub const GRID_WEIGHTS: [i64; 3] = [10, 12, 14];

/// Every `(N, w, n, chi)` with `chi` primitive mod one of `moduli`.
pub fn grid(levels: &[u64], moduli: &[u64], ws: &[i64]) -> Vec<PeriodContext> {
    let mut out = Vec::new();
    for &d in moduli {
        let chars = enumerate_primitive_characters(d).expect("modulus in range");
        for &level in levels {
            for chi in &chars {
                for &w in ws {
                    for n in 1..w {
                        out.push(PeriodContext::new(level, w, n, chi.clone()).expect("valid context"));
                    }
                }
            }
        }
    }
    out
}

pub fn default_grid() -> Vec<PeriodContext> {
    grid(&GRID_LEVELS, &GRID_MODULI, &GRID_WEIGHTS)
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-5000i64..5000, 1i64..400).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

/// `B_k(a + x) = sum_j binom(k, j) B_j(a) x^(k-j)` as polynomials in `x`,
/// for every `k <= 12` and `cases` random rationals `a`.
pub fn bernoulli_addition(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&rational(), |a| {
            let shift = ExactNumber::rational(&a, 1);
            for k in 0..=12i64 {
                let lhs = bernoulli_poly(k).compose_affine(&ExactNumber::from_int(1), &shift);
                let mut coeffs = vec![ExactNumber::zero(1); k as usize + 1];
                for j in 0..=k {
                    let bj = bernoulli_poly(j).eval(&shift);
                    coeffs[(k - j) as usize] = &bj * &ExactNumber::from(binomial(k, j));
                }
                let rhs = twisted_periods::ExactPolynomial::from_ascending(coeffs);
                prop_assert_eq!(lhs, rhs, "k = {}, a = {}", k, a);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// The shifted-sum and binomial expansions of `B_{k,chi}(x)` agree for
/// every primitive character of modulus up to `max_modulus` and `k <= 12`.
pub fn generalized_bernoulli_definitions(max_modulus: u64) -> Result<usize, String> {
    let chars: Vec<DirichletCharacter> = (3..=max_modulus)
        .flat_map(|d| enumerate_primitive_characters(d).expect("modulus in range"))
        .collect();
    let checked: Vec<Result<usize, String>> = chars
        .par_iter()
        .map(|chi| {
            for k in 0..=12 {
                if generalized_by_shift(k, chi) != generalized_by_binomial(k, chi) {
                    return Err(format!("B_{k},chi differs for {chi}"));
                }
            }
            Ok(13)
        })
        .collect();
    checked.into_iter().sum()
}

/// `tau(chi) tau(chi-bar) = chi(-1) D` for every primitive character of
/// modulus up to `max_modulus`.
pub fn gauss_sum_product(max_modulus: u64) -> Result<usize, String> {
    let chars: Vec<DirichletCharacter> = (3..=max_modulus)
        .flat_map(|d| enumerate_primitive_characters(d).expect("modulus in range"))
        .collect();
    for chi in &chars {
        let product = &chi.gauss_sum() * &chi.conj().gauss_sum();
        let expected = ExactNumber::from_int(chi.parity() * chi.modulus() as i64);
        if product != expected {
            return Err(format!("tau(chi) tau(chi-bar) = {product} for {chi}"));
        }
    }
    Ok(chars.len())
}

fn characters_up_to_60() -> &'static Vec<DirichletCharacter> {
    static CHARS: OnceLock<Vec<DirichletCharacter>> = OnceLock::new();
    CHARS.get_or_init(|| {
        (3..=60)
            .flat_map(|d| enumerate_primitive_characters(d).expect("modulus in range"))
            .collect()
    })
}

/// `chi(a, c, k, l)` equals `chi(k b' + l d')` for every Bezout pair
/// `(b', d') = (b + t a, d + t c)`.
pub fn four_tuple_bezout_invariance(cases: u32) -> Result<(), String> {
    let strategy = (any::<prop::sample::Index>(), any::<prop::sample::Index>(), -10_000i64..10_000);
    runner(cases)
        .run(&strategy, |(ci, qi, t)| {
            let chi = ci.get(characters_up_to_60());
            let quads = enumerate_quadruples(1, chi.modulus());
            let q = qi.get(&quads);
            let (a, c, k, l) = (q.a, q.c, q.k, q.l);
            let (b, d) = bezout_completion(a, c).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(a * d - b * c, 1);
            let shifted = chi.value(k * (b + t * a) + l * (d + t * c));
            let value = chi.chi_four_tuple(a, c, k, l).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(value, shifted);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Coefficients of `X^{w-m}` in the period polynomial vanish whenever
/// `(-1)^{m+n+1} chi(-1) = -1`.
pub fn parity_vanishing(contexts: &[PeriodContext]) -> Result<usize, String> {
    let counts: Vec<Result<usize, String>> = contexts
        .par_iter()
        .map(|ctx| {
            let p = theorem1_polynomial(ctx).map_err(|e| e.to_string())?;
            let mut zeros = 0;
            for m in 0..=ctx.w() {
                if !ctx.parity_admits(m) {
                    if !p.coefficient((ctx.w() - m) as usize).is_zero() {
                        return Err(format!("nonzero X^{} coefficient for {ctx:?}", ctx.w() - m));
                    }
                    zeros += 1;
                }
            }
            Ok(zeros)
        })
        .collect();
    counts.into_iter().sum()
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
