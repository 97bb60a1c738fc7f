//! Traces of twisted times untwisted L-values over an orthogonal basis of
//! cusp forms, in closed form and through the period polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, rat_pow};
use crate::bernoulli::generalized_bernoulli_number;
use crate::characters::bezout_completion;
use crate::error::{Error, Result};
use crate::exact_field::rational_poly::{integer, WeightedSum};
use crate::exact_field::{recognize_surd, sqrt_natural, ExactNumber, QuadSurd};
use crate::period_formula::{enumerate_quadruples, twisted_period, PeriodContext};

/// A context together with the twist index `m`, satisfying
/// `0 <= m <= w` and `(-1)^{m+n+1} chi(-1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceQuery {
    ctx: PeriodContext,
    m: u32,
}

impl TraceQuery {
    pub fn new(ctx: PeriodContext, m: i64) -> Result<Self> {
        if m < 0 || m > ctx.w() as i64 {
            return Err(Error::OutOfRange(format!("m = {m} not in 0..={}", ctx.w())));
        }
        let m = m as u32;
        if !ctx.parity_admits(m) {
            return Err(Error::Parity { m, n: ctx.n() });
        }
        Ok(Self { ctx, m })
    }

    pub fn ctx(&self) -> &PeriodContext {
        &self.ctx
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `w - m`.
    pub fn m_tilde(&self) -> u32 {
        self.ctx.w() - self.m
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn i_power(e: i64) -> ExactNumber {
    ExactNumber::root_of_unity(4, e)
}

/// `N^{e/2}`.
fn level_half_power(level: u64, e: u32) -> Result<ExactNumber> {
    let whole = ExactNumber::from(num_traits::pow(BigInt::from(level), e as usize / 2));
    if e % 2 == 0 {
        Ok(whole)
    } else {
        Ok(&whole * &sqrt_natural(level)?)
    }
}

/// `binom(top, bottom) * B_{k,chi} / k`, treated as 0 whenever the binomial
/// vanishes. A vanishing denominator `k = 0` means `bottom = top + 1`, where
/// the binomial is already 0; negative `k` likewise forces `bottom > top`.
fn bernoulli_term(top: i64, bottom: i64, k: i64, chi: &crate::characters::DirichletCharacter) -> Result<ExactNumber> {
    let b = binomial(top, bottom);
    if b.is_zero() {
        return Ok(ExactNumber::zero(1));
    }
    debug_assert!(k > 0);
    let scale = BigRational::new(b, BigInt::from(k));
    Ok(&generalized_bernoulli_number(k, chi)? * &ExactNumber::rational(&scale, 1))
}

/// The closed-form right-hand side of the trace formula.
///
/// The level enters the prefactor as `N^{(m+n+2)/2}`, the power produced by
/// the completed L-values `Lambda(f, chi, m+1)` and `Lambda(f, n+1)`.
pub fn trace_direct(q: &TraceQuery) -> Result<ExactNumber> {
    let ctx = q.ctx();
    let chi = ctx.chi();
    let chib = chi.conj();
    let (w, n, nt, m, mt) = (
        ctx.w() as i64,
        ctx.n() as i64,
        ctx.n_tilde() as i64,
        q.m() as i64,
        q.m_tilde() as i64,
    );
    let d = ctx.modulus() as i64;
    let dr = integer(d);
    let nr = integer(ctx.level() as i64);
    let eps = ctx.epsilon();
    let rat = |x: BigRational| ExactNumber::rational(&x, 1);

    let mut inner = ExactNumber::zero(1);
    if eps.e1 {
        let t = bernoulli_term(nt, mt, nt - mt + 1, &chib)?;
        inner += &(&t * &rat(integer(-sign(n)) * rat_pow(&dr, n)));
    }
    {
        let t = bernoulli_term(n, mt, n - mt + 1, &chib)?;
        inner += &(&t * &rat(rat_pow(&dr, nt)));
    }
    if eps.e2 {
        let t = bernoulli_term(nt, m, nt - m + 1, chi)?;
        let c = integer(sign(n + m)) * rat_pow(&nr, nt - m) * rat_pow(&dr, n);
        inner += &(&(&t * &rat(c)) * &chi.value(-(ctx.level() as i64)));
    }
    if eps.e3 {
        let t = bernoulli_term(n, m, n - m + 1, chi)?;
        inner += &(&t * &rat(integer(sign(m + 1) * chi.parity()) * rat_pow(&dr, nt)));
    }

    let mut quad_sum = WeightedSum::new();
    for quad in enumerate_quadruples(ctx.level(), ctx.modulus()) {
        let (b, dd) = bezout_completion(quad.a, quad.c)?;
        let u = quad.k * b + quad.l * dd;
        let Some(e) = chib.exponent(u) else { continue };
        let mut s = BigInt::zero();
        for r in 0..=mt {
            let coeff = binomial(n, r) * binomial(nt, mt - r);
            if coeff.is_zero() {
                continue;
            }
            let mono = BigInt::from(quad.a).pow(r as u32)
                * BigInt::from(quad.c).pow((mt - r) as u32)
                * BigInt::from(quad.l).pow((n - r) as u32)
                * BigInt::from(quad.k).pow((nt - mt + r) as u32);
            s += coeff * mono * sign(r);
        }
        quad_sum.add(e, || chib.value(u), &[BigRational::from_integer(s)], &integer(2 * sign(m + 1)));
    }
    inner += &quad_sum.finish(1).coefficient(0);

    let prefactor = &(&(&crate::period_formula::two_i_power(ctx.w()) * &i_power(m + n + 2))
        * &level_half_power(ctx.level(), ctx.n() + q.m() + 2)?)
        * &(&chi.conj_gauss_sum_inverse()
            * &rat(BigRational::new(BigInt::from(d), BigInt::from(2) * binomial(w, m))));
    (&prefactor * &inner).lift(ctx.cyclotomic_level())
}

/// `(-D)^{m+1} (i sqrt(N))^{m+n+2} r_{m,chi}(R_n)`.
pub fn trace_via_theorem1(q: &TraceQuery) -> Result<ExactNumber> {
    let ctx = q.ctx();
    let (m, n) = (q.m() as i64, ctx.n() as i64);
    let d = integer(-(ctx.modulus() as i64));
    let root_n = sqrt_natural(ctx.level())?;
    let factor = &(&ExactNumber::rational(&rat_pow(&d, m + 1), 1) * &i_power(m + n + 2))
        * &root_n.pow(m + n + 2)?;
    (&factor * &twisted_period(ctx, q.m())?).lift(ctx.cyclotomic_level())
}

/// A trace value with its surd form and floating approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceValue {
    pub exact: ExactNumber,
    pub surd: Option<QuadSurd>,
    pub float: num_complex::Complex64,
}

impl TraceValue {
    pub fn new(exact: ExactNumber) -> Self {
        let surd = recognize_surd(&exact);
        let float = exact.to_complex();
        Self { exact, surd, float }
    }
}
