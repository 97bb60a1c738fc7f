//! The per-residue decomposition: for each `h` coprime to `D` the matrices
//! in the defining sum of `R_n` split into six families, each with an
//! explicit contribution to the symmetrized period polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::context::PeriodContext;
use super::quadruples::enumerate_quadruples;
use super::theorem::two_i_power;
use crate::arith::{binomial, frac, gcd, mod_inverse, prime_divisors, rat_pow};
use crate::bernoulli::{bernoulli_coefficients, bernoulli_number};
use crate::characters::bezout_completion;
use crate::error::{Error, Result};
use crate::exact_field::rational_poly::{
    add_scaled, integer, linear_pow, mul, reciprocal, RationalPoly, WeightedSum,
};
use crate::exact_field::{ExactNumber, ExactPolynomial};

/// Matrix families `(a b; c d)` of the decomposition at a residue `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaCase {
    /// `a = 0`, only at level 1.
    UpperLeftZero = 1,
    /// `c = 0`.
    LowerLeftZero = 2,
    /// `(a, b) = ±(D, -h)`, only when `gcd(N, D) = 1`.
    TopRowAtCusp = 3,
    /// `(c, d) = ±(D, -h)`, only when `N | D`.
    BottomRowAtCusp = 4,
    /// `ac(ah/D + b)(ch/D + d) < 0`.
    NegativeProduct = 5,
    /// `ac(ah/D + b)(ch/D + d) > 0`.
    PositiveProduct = 6,
}

impl LemmaCase {
    pub const ALL: [LemmaCase; 6] = [
        LemmaCase::UpperLeftZero,
        LemmaCase::LowerLeftZero,
        LemmaCase::TopRowAtCusp,
        LemmaCase::BottomRowAtCusp,
        LemmaCase::NegativeProduct,
        LemmaCase::PositiveProduct,
    ];

    pub fn from_index(j: u32) -> Result<Self> {
        Self::ALL
            .get((j as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::OutOfRange(format!("case index {j} not in 1..=6")))
    }

    pub fn index(self) -> u32 {
        self as u32
    }
}

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `B_k(a + X) = sum_j binom(k, j) B_j(a) X^{k-j}`.
fn bernoulli_shifted(k: i64, a: &BigRational) -> RationalPoly {
    let mut out = vec![BigRational::zero(); k as usize + 1];
    for j in 0..=k {
        let bj = bernoulli_coefficients(j)
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * a + c);
        out[(k - j) as usize] = integer(binomial(k, j)) * bj;
    }
    out
}

/// `prod_{p | N} (1 - p^{-e}) / (1 - p^{-w-2})`.
fn euler_factor(level: u64, e: i64, w: u32) -> BigRational {
    prime_divisors(level)
        .into_iter()
        .map(|p| {
            let p = integer(p as i64);
            (BigRational::one() - rat_pow(&p, -e)) / (BigRational::one() - rat_pow(&p, -(w as i64) - 2))
        })
        .product()
}

/// The contribution of one family at residue `h`, divided by `(2i)^{w+1}`.
fn case_rational(case: LemmaCase, h: i64, ctx: &PeriodContext) -> Result<RationalPoly> {
    let d = ctx.modulus() as i64;
    if gcd(h, d) != 1 {
        return Err(Error::NotCoprime(h, d));
    }
    let (n, nt, w) = (ctx.n() as i64, ctx.n_tilde() as i64, ctx.w());
    let big_n = ctx.level() as i64;
    let eps = ctx.epsilon();
    let dr = integer(d);
    let hd = frac(&BigRational::new(h.into(), d.into()));
    Ok(match case {
        LemmaCase::UpperLeftZero => {
            if !eps.e1 {
                return Ok(Vec::new());
            }
            let p = bernoulli_shifted(nt + 1, &hd);
            let mut out = Vec::new();
            add_scaled(&mut out, &p, &BigRational::new(sign(n as u32).into(), (nt + 1).into()));
            out
        }
        LemmaCase::LowerLeftZero => {
            let p = bernoulli_shifted(n + 1, &hd);
            let mut out = Vec::new();
            add_scaled(&mut out, &p, &BigRational::new((-1).into(), (n + 1).into()));
            out
        }
        LemmaCase::TopRowAtCusp => {
            if !eps.e2 {
                return Ok(Vec::new());
            }
            let nbar = mod_inverse(big_n, d).ok_or(Error::NotCoprime(big_n, d))?;
            let hbar = mod_inverse(h, d).ok_or(Error::NotCoprime(h, d))?;
            let shift = frac(&BigRational::new((-nbar * hbar).into(), d.into()));
            let p = bernoulli_shifted(nt + 1, &shift);
            let s = -(&dr * &dr * integer(big_n)).recip();
            let c = integer(-sign(n as u32)) * rat_pow(&integer(big_n), nt) * rat_pow(&dr, w as i64)
                / integer(nt + 1);
            let mut out = Vec::new();
            add_scaled(&mut out, &reciprocal(&p, w as usize, &s), &c);
            out
        }
        LemmaCase::BottomRowAtCusp => {
            if !eps.e3 {
                return Ok(Vec::new());
            }
            let hbar = mod_inverse(h, d).ok_or(Error::NotCoprime(h, d))?;
            let shift = frac(&BigRational::new((-hbar).into(), d.into()));
            let p = bernoulli_shifted(n + 1, &shift);
            let s = -(&dr * &dr).recip();
            let c = rat_pow(&dr, w as i64) / integer(n + 1);
            let mut out = Vec::new();
            add_scaled(&mut out, &reciprocal(&p, w as usize, &s), &c);
            out
        }
        LemmaCase::NegativeProduct => negative_product(h, ctx),
        LemmaCase::PositiveProduct => {
            let bn1 = bernoulli_number(n as usize + 1) / integer(n + 1);
            let bnt1 = bernoulli_number(nt as usize + 1) / integer(nt + 1);
            let c = integer(sign(n as u32) * (w as i64 + 2)) / bernoulli_number(w as usize + 2) * bn1 * bnt1;
            let nr = integer(big_n);
            let top = rat_pow(&dr, w as i64) / &nr * euler_factor(ctx.level(), n + 1, w);
            let bottom = -rat_pow(&nr, -(n + 1)) * euler_factor(ctx.level(), nt + 1, w);
            let mut out = vec![BigRational::zero(); w as usize + 1];
            out[w as usize] = &c * top;
            out[0] = &c * bottom;
            out
        }
    })
}

/// Family 5. Each quadruple `(a, c, k, l)` yields two matrix classes. In the
/// first, `ad - bc = 1`, the residue is `-(kb + ld)`; in the second,
/// `ad + bc = 1`, it is `-kb + ld`. Shifting the Bezout pair by `t(a, c)`
/// moves `kb + ld` by `tD`, so the residue mod `D` is fixed by the quadruple
/// and exactly one shift lands each class in the window belonging to `h`.
fn negative_product(h: i64, ctx: &PeriodContext) -> RationalPoly {
    let d = ctx.modulus() as i64;
    let (n, nt) = (ctx.n(), ctx.n_tilde());
    let mut out = Vec::new();
    for q in enumerate_quadruples(ctx.level(), ctx.modulus()) {
        let (b, dd) = bezout_completion(q.a, q.c).expect("quadruples are coprime");
        let u = q.k * b + q.l * dd;
        let l_over_d = BigRational::new(q.l.into(), d.into());
        let k_over_d = BigRational::new(q.k.into(), d.into());
        if (-u).rem_euclid(d) == h.rem_euclid(d) {
            let term = mul(
                &linear_pow(&integer(q.a), &-&l_over_d, n),
                &linear_pow(&integer(q.c), &k_over_d, nt),
            );
            add_scaled(&mut out, &term, &integer(-1));
        }
        // with b' = -b: a d + b' c = 1 and -k b' + l d = u
        if u.rem_euclid(d) == h.rem_euclid(d) {
            let term = mul(
                &linear_pow(&integer(q.a), &l_over_d, n),
                &linear_pow(&integer(-q.c), &k_over_d, nt),
            );
            add_scaled(&mut out, &term, &BigRational::one());
        }
    }
    out
}

/// `c_n^{-1} F_{j,h}(X)`, exactly; zero when the family is empty for `ctx`.
pub fn case_contribution(case: LemmaCase, h: i64, ctx: &PeriodContext) -> Result<ExactPolynomial> {
    let p = case_rational(case, h, ctx)?;
    Ok(ExactPolynomial::from_rationals(&p).scale(&two_i_power(ctx.w())))
}

fn residue_total(h: i64, ctx: &PeriodContext) -> Result<RationalPoly> {
    let mut total = Vec::new();
    for case in LemmaCase::ALL {
        add_scaled(&mut total, &case_rational(case, h, ctx)?, &BigRational::one());
    }
    Ok(total)
}

/// `(1/tau(chi-bar)) sum_h chi-bar(h) sum_j c_n^{-1} F_{j,h}(X)`.
pub fn lemma_sum_polynomial(ctx: &PeriodContext) -> Result<ExactPolynomial> {
    let chib = ctx.chi().conj();
    let d = ctx.modulus() as i64;
    let mut sum = WeightedSum::new();
    for h in 1..d {
        let Some(e) = chib.exponent(h) else { continue };
        sum.add(e, || chib.value(h), &residue_total(h, ctx)?, &BigRational::one());
    }
    let prefactor = &two_i_power(ctx.w()) * &ctx.chi().conj_gauss_sum_inverse();
    sum.finish(chib.value_level())
        .scale(&prefactor)
        .lift(ctx.cyclotomic_level())
}

/// `rho(m, n, h)` for every `m = 0..=w` at once.
pub fn per_h_symmetrized_periods(ctx: &PeriodContext, h: i64) -> Result<Vec<ExactNumber>> {
    let w = ctx.w();
    let total = residue_total(h, ctx)?;
    let scale = two_i_power(w);
    Ok((0..=w)
        .map(|m| {
            let c = total.get((w - m) as usize).cloned().unwrap_or_else(BigRational::zero);
            let denom = integer(binomial(w as i64, m as i64) * BigInt::from(sign(m)));
            &scale * &ExactNumber::rational(&(c / denom), 1)
        })
        .collect())
}

/// `rho(m, n, h) = sum_j c_n^{-1} I_{j,h,m}`, the coefficient of `X^{w-m}`
/// in the residue-`h` contributions divided by `(-1)^m binom(w, m)`.
pub fn per_h_symmetrized_period(ctx: &PeriodContext, m: u32, h: i64) -> Result<ExactNumber> {
    let w = ctx.w();
    if m > w {
        return Err(Error::OutOfRange(format!("m = {m} exceeds w = {w}")));
    }
    let total = residue_total(h, ctx)?;
    let c = total.get((w - m) as usize).cloned().unwrap_or_else(BigRational::zero);
    let denom = integer(binomial(w as i64, m as i64) * BigInt::from(sign(m)));
    Ok(&two_i_power(w) * &ExactNumber::rational(&(c / denom), 1))
}
