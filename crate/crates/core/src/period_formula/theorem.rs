use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::context::PeriodContext;
use super::quadruples::enumerate_quadruples;
use crate::arith::{binomial, rat_pow};
use crate::bernoulli::generalized_bernoulli_poly;
use crate::characters::bezout_completion;
use crate::error::{Error, Result};
use crate::exact_field::rational_poly::{integer, linear_pow, mul, negate_variable, WeightedSum};
use crate::exact_field::{ExactNumber, ExactPolynomial};

/// `(2i)^{w+1}`.
pub fn two_i_power(w: u32) -> ExactNumber {
    let sign = if (w / 2) % 2 == 0 { 1 } else { -1 };
    let two = num_traits::pow(BigInt::from(2), w as usize + 1);
    &ExactNumber::i() * &ExactNumber::from(two * sign)
}

/// Multiplies the coefficient of `X^j` by `f(j)`.
fn scale_coefficients(p: &ExactPolynomial, f: impl Fn(usize) -> BigRational) -> ExactPolynomial {
    ExactPolynomial::from_ascending(
        p.coefficients_ascending()
            .iter()
            .enumerate()
            .map(|(j, c)| c * &ExactNumber::rational(&f(j), 1))
            .collect(),
    )
}

/// `X^w p(s / X)` scaled by `scale`.
fn reciprocal_scaled(p: &ExactPolynomial, w: usize, s: &BigRational, scale: &BigRational) -> ExactPolynomial {
    let sx = ExactNumber::rational(s, 1);
    p.reciprocal_substitute(w, &sx).scale(&ExactNumber::rational(scale, 1))
}

fn chi_sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `G_n(X) = sum chi-bar(a,c,k,l) (aX + l/D)^n (-cX + k/D)^{w-n}` plus, when
/// `symmetric_sign` is given, that multiple of `G_n(-X)`.
fn g_weighted(ctx: &PeriodContext, symmetric_sign: Option<&BigRational>) -> ExactPolynomial {
    let d = ctx.modulus() as i64;
    let chib = ctx.chi().conj();
    let mut sum = WeightedSum::new();
    for q in enumerate_quadruples(ctx.level(), ctx.modulus()) {
        let (b, dd) = bezout_completion(q.a, q.c).expect("quadruples are coprime");
        let u = q.k * b + q.l * dd;
        let Some(e) = chib.exponent(u) else { continue };
        let term = mul(
            &linear_pow(&integer(q.a), &BigRational::new(q.l.into(), d.into()), ctx.n()),
            &linear_pow(&integer(-q.c), &BigRational::new(q.k.into(), d.into()), ctx.n_tilde()),
        );
        sum.add(e, || chib.value(u), &term, &BigRational::one());
        if let Some(sign) = symmetric_sign {
            sum.add(e, || chib.value(u), &negate_variable(&term), sign);
        }
    }
    sum.finish(chib.value_level())
}

/// `G_n(X)`.
pub fn g_polynomial(ctx: &PeriodContext) -> ExactPolynomial {
    g_weighted(ctx, None)
}

/// `P_n(X) = r_chi(R_n)(X) + (-1)^{n-1} chi(-1) r_chi(R_n)(-X)` in closed form.
pub fn theorem1_polynomial(ctx: &PeriodContext) -> Result<ExactPolynomial> {
    let chi = ctx.chi();
    let chib = chi.conj();
    let (n, nt, w) = (ctx.n() as i64, ctx.n_tilde() as i64, ctx.w() as usize);
    let d = integer(ctx.modulus() as i64);
    let big_n = integer(ctx.level() as i64);
    let eps = ctx.epsilon();
    let parity = chi.parity();
    let mut inner = ExactPolynomial::zero();

    if eps.e1 {
        // (-D)^{-nt} B_{nt+1, chi-bar}(DX) / (nt+1)
        let p = generalized_bernoulli_poly(nt + 1, &chib)?;
        let c = rat_pow(&-&d, -nt) / integer(nt + 1);
        inner = &inner + &scale_coefficients(&p, |j| &c * rat_pow(&d, j as i64));
    }
    {
        // -D^{-n} B_{n+1, chi-bar}(DX) / (n+1)
        let p = generalized_bernoulli_poly(n + 1, &chib)?;
        let c = -rat_pow(&d, -n) / integer(n + 1);
        inner = &inner + &scale_coefficients(&p, |j| &c * rat_pow(&d, j as i64));
    }
    if eps.e2 {
        // (-1)^{n-1} chi(-N) N^nt D^n X^w B_{nt+1, chi}(-1/(DNX)) / (nt+1)
        let p = generalized_bernoulli_poly(nt + 1, chi)?;
        let c = integer(-chi_sign(n as u32)) * rat_pow(&big_n, nt) * rat_pow(&d, n) / integer(nt + 1);
        let s = -(&d * &big_n).recip();
        let term = reciprocal_scaled(&p, w, &s, &c).scale(&chi.value(-(ctx.level() as i64)));
        inner = &inner + &term;
    }
    if eps.e3 {
        // chi(-1) D^nt X^w B_{n+1, chi}(-1/(DX)) / (n+1)
        let p = generalized_bernoulli_poly(n + 1, chi)?;
        let c = integer(parity) * rat_pow(&d, nt) / integer(n + 1);
        inner = &inner + &reciprocal_scaled(&p, w, &-d.recip(), &c);
    }
    let sym = integer(-chi_sign(n as u32) * parity);
    inner = &inner + &g_weighted(ctx, Some(&sym));

    let prefactor = &two_i_power(ctx.w()) * &chi.conj_gauss_sum_inverse();
    inner.scale(&prefactor).lift(ctx.cyclotomic_level())
}

/// `coeff_{X^{w-m}}(p) / (2 (-1)^m binom(w, m))`.
pub fn period_from_polynomial(ctx: &PeriodContext, p: &ExactPolynomial, m: u32) -> Result<ExactNumber> {
    let w = ctx.w();
    if m > w {
        return Err(Error::OutOfRange(format!("m = {m} exceeds w = {w}")));
    }
    if !ctx.parity_admits(m) {
        return Err(Error::Parity { m, n: ctx.n() });
    }
    let denom = binomial(w as i64, m as i64) * BigInt::from(2 * chi_sign(m));
    let c = p.coefficient((w - m) as usize);
    Ok(&c * &ExactNumber::rational(&BigRational::new(BigInt::one(), denom), 1))
}

/// `r_{m,chi}(R_n)`, read off `P_n(X)`.
pub fn twisted_period(ctx: &PeriodContext, m: u32) -> Result<ExactNumber> {
    if m > ctx.w() {
        return Err(Error::OutOfRange(format!("m = {m} exceeds w = {}", ctx.w())));
    }
    if !ctx.parity_admits(m) {
        return Err(Error::Parity { m, n: ctx.n() });
    }
    period_from_polynomial(ctx, &theorem1_polynomial(ctx)?, m)
}
