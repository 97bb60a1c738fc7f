//! Floating-point checks for the discriminant function `Delta`: its
//! q-expansion, completed L-values, Petersson norm, twisted L-values from
//! numerically integrated periods, and agreement with exact traces.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{gcd, mod_inverse};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::trace_formula::{trace_direct, TraceQuery};

/// Values the numeric checks are compared against.
pub mod reference {
    /// `Lambda(Delta, 2)`.
    pub const LAMBDA_DELTA_2: f64 = 0.003707710464948;
    /// `1 / <Delta, Delta>`.
    pub const PETERSSON_INVERSE: f64 = 965845.709168185;
    /// `Lambda(Delta, chi, 2)` for `chi = (-3/.)`.
    pub const TWISTED_LAMBDA_2: f64 = -228.22304046813742;
    /// `Lambda(Delta, chi, 4)` for `chi = (-3/.)`.
    pub const TWISTED_LAMBDA_4: f64 = -14.263940029258589;
    /// `Lambda(Delta, chi, 2) Lambda(Delta, 2) / <Delta, Delta>`.
    pub const TRACE_PRODUCT: f64 = -817284.10841880;
}

/// Default number of q-expansion terms for the L-value sums.
pub const DEFAULT_TRUNCATION: usize = 80;

/// Exact Fourier coefficients `a(1..=M)` of a normalized form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<BigInt>,
    pub weight: u32,
    pub level: u64,
}

impl QExpansion {
    /// `a(n)` for `1 <= n <= len`.
    pub fn coefficient(&self, n: usize) -> &BigInt {
        &self.coeffs[n - 1]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn float(&self, n: usize) -> f64 {
        self.coeffs[n - 1].to_f64().expect("finite")
    }
}

/// `tau(1..=M)` from `Delta = q prod (1 - q^n)^24 = q (sum_k (-1)^k (2k+1) q^{k(k+1)/2})^8`.
///
/// The eighth power of the sparse cube series `f` uses the recurrence
/// `j g_j = sum_i (9i - j) f_i g_{j-i}` for `g = f^8`.
pub fn tau_coefficients(m: usize) -> Result<QExpansion> {
    if m == 0 || m > 1_000_000 {
        return Err(Error::OutOfRange(format!("truncation {m} not in 1..=10^6")));
    }
    let mut sparse: Vec<(usize, i64)> = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < m {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sparse.push((k * (k + 1) / 2, sign * (2 * k as i64 + 1)));
        k += 1;
    }
    let mut g: Vec<BigInt> = Vec::with_capacity(m);
    g.push(BigInt::from(1));
    for j in 1..m {
        let mut acc = BigInt::zero();
        for &(i, fi) in sparse.iter().skip(1) {
            if i > j {
                break;
            }
            acc += &g[j - i] * (fi * (9 * i as i64 - j as i64));
        }
        g.push(acc / j as i64);
    }
    Ok(QExpansion {
        coeffs: g,
        weight: 12,
        level: 1,
    })
}

/// `Gamma(k, x) = (k-1)! e^{-x} sum_{j<k} x^j / j!` for integer `k >= 1`.
pub fn upper_incomplete_gamma(k: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for j in 0..k {
        if j > 0 {
            term *= x / j as f64;
        }
        sum += term;
    }
    let fact: f64 = (1..k).map(f64::from).product();
    fact * (-x).exp() * sum
}

/// `Lambda(Delta, s) = sum tau(n) [Gamma(s, 2 pi n)/(2 pi n)^s + Gamma(12-s, 2 pi n)/(2 pi n)^{12-s}]`.
pub fn lambda_delta(s: u32, truncation: usize) -> Result<f64> {
    if !(1..=11).contains(&s) {
        return Err(Error::OutOfRange(format!("s = {s} not in 1..=11")));
    }
    let tau = tau_coefficients(truncation)?;
    let mut total = 0.0;
    for n in 1..=tau.len() {
        let x = 2.0 * PI * n as f64;
        let term = tau.float(n)
            * (upper_incomplete_gamma(s, x) / x.powi(s as i32)
                + upper_incomplete_gamma(12 - s, x) / x.powi(12 - s as i32));
        total += term;
        if term.abs() < 1e-18 * total.abs().max(1e-300) {
            break;
        }
    }
    Ok(total)
}

fn zeta_partial(s: i32, terms: usize) -> f64 {
    // summed smallest first
    (1..=terms).rev().map(|k| (k as f64).powi(-s)).sum()
}

/// `1/<Delta, Delta>` from
/// `sum tau(m)^2 / m^20 = (2/245) (4^20 pi^29 / 20!) (zeta(9)/zeta(18)) <Delta, Delta>`.
pub fn petersson_delta_inverse(truncation: usize) -> Result<f64> {
    if truncation < 100 {
        return Err(Error::OutOfRange(format!("truncation {truncation} < 100")));
    }
    let tau = tau_coefficients(truncation)?;
    let dirichlet: f64 = (1..=truncation)
        .rev()
        .map(|m| {
            let t = tau.float(m);
            t * t / (m as f64).powi(20)
        })
        .sum();
    let fact20: f64 = (1..=20).map(f64::from).product();
    let constant = 2.0 / 245.0 * 4f64.powi(20) * PI.powi(29) / fact20;
    let ratio = zeta_partial(9, truncation) / zeta_partial(18, truncation);
    Ok(constant * ratio / dirichlet)
}

/// `i^{m+1} sum tau(n) e^{2 pi i n s / D} Gamma(m+1, 2 pi n / D) / (2 pi n)^{m+1}`,
/// the integral of `Delta(z + s/D) z^m` from `i/D` to `i infinity`.
fn upper_segment(tau: &QExpansion, m: u32, s: i64, d: i64) -> Complex64 {
    let mut total = Complex64::zero();
    for n in 1..=tau.len() {
        let x = 2.0 * PI * n as f64;
        let phase = Complex64::from_polar(1.0, 2.0 * PI * ((n as i64 * s).rem_euclid(d)) as f64 / d as f64);
        let term = phase * (tau.float(n) * upper_incomplete_gamma(m + 1, x / d as f64) / x.powi(m as i32 + 1));
        total += term;
        if term.norm() < 1e-18 * total.norm().max(1e-300) && n > 5 {
            break;
        }
    }
    Complex64::i().powu(m + 1) * total
}

/// `r_{m,h/D}(Delta) = int_0^{i infinity} Delta(z + h/D) z^m dz`.
///
/// The path is split at `i/D`. The lower piece is moved to the upper one by
/// `(h b; D d)` with `hd - bD = 1`, which gives
/// `(-1)^{m+1} D^{10-2m} * upper(10 - m, -d)`.
pub fn numeric_twisted_period(m: u32, h: i64, d: i64, truncation: usize) -> Result<Complex64> {
    if m > 10 {
        return Err(Error::OutOfRange(format!("m = {m} exceeds 10")));
    }
    if d < 1 || gcd(h, d) != 1 {
        return Err(Error::NotCoprime(h, d));
    }
    let tau = tau_coefficients(truncation)?;
    let hinv = mod_inverse(h.rem_euclid(d), d).ok_or(Error::NotCoprime(h, d))?;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let lower = upper_segment(&tau, 10 - m, -hinv, d) * (sign * (d as f64).powi(10 - 2 * m as i32));
    Ok(upper_segment(&tau, m, h, d) + lower)
}

/// `Lambda(Delta, chi, m+1) = (-iD)^{m+1} (1/tau(chi-bar)) sum_h chi-bar(h) r_{m,h/D}(Delta)`.
pub fn twisted_lambda_delta(chi: &DirichletCharacter, m: u32, truncation: usize) -> Result<Complex64> {
    let d = chi.modulus() as i64;
    let chib = chi.conj();
    let mut sum = Complex64::zero();
    for h in 1..d {
        if gcd(h, d) == 1 {
            sum += chib.value(h).to_complex() * numeric_twisted_period(m, h, d, truncation)?;
        }
    }
    let tau_conj = chib.gauss_sum().to_complex();
    Ok((Complex64::new(0.0, -(d as f64))).powu(m + 1) * sum / tau_conj)
}

/// Comparison of an expected and a computed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericReport {
    pub expected: f64,
    pub computed: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
}

impl NumericReport {
    /// Passes when the absolute error is within `abs_tol` or the relative
    /// error within `rel_tol`.
    pub fn new(expected: f64, computed: f64, abs_tol: f64, rel_tol: f64) -> Self {
        let abs_err = (computed - expected).abs();
        let rel_err = if expected == 0.0 { abs_err } else { abs_err / expected.abs() };
        Self {
            expected,
            computed,
            abs_err,
            rel_err,
            pass: abs_err <= abs_tol || rel_err <= rel_tol,
        }
    }
}

/// Numeric `Lambda(Delta, chi, m+1) Lambda(Delta, n+1) / <Delta, Delta>`
/// against the exact trace. Only level 1, weight 12 qualifies, where the
/// space is spanned by `Delta`.
pub fn verify_trace_numeric(q: &TraceQuery, truncation: usize) -> Result<NumericReport> {
    let ctx = q.ctx();
    if ctx.level() != 1 || ctx.w() != 10 {
        return Err(Error::InvalidContext(
            "numeric trace check needs level 1 and weight 12".into(),
        ));
    }
    let twisted = twisted_lambda_delta(ctx.chi(), q.m(), truncation)?;
    let untwisted = lambda_delta(ctx.n() + 1, truncation)?;
    let inverse_norm = petersson_delta_inverse(truncation.max(1000))?;
    let computed = twisted * untwisted * inverse_norm;
    let exact = trace_direct(q)?.to_complex();
    let scale = exact.norm().max(computed.norm()).max(1.0);
    let mut report = NumericReport::new(exact.re, computed.re, 1e-5 * scale, 1e-5);
    let imag = (computed.im - exact.im).abs();
    report.pass &= imag <= 1e-5 * scale;
    Ok(report)
}
