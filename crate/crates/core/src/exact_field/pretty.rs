//! Human-readable rendering: factored rationals and surds in text or LaTeX,
//! e.g. `-(2^18*3^2/5)*sqrt(3)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number::ExactNumber;
use super::polynomial::ExactPolynomial;
use super::surd::{recognize_surd, QuadSurd};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Factors by trial division below a fixed bound; a cofactor with no small
/// prime factor is returned as a single entry with exponent 1.
fn factor_big(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        out.push((rest, 1));
    }
    out
}

fn factored_integer(n: &BigInt) -> String {
    if n.abs().to_u64().is_some_and(|v| v <= 1) {
        return n.abs().to_string();
    }
    factor_big(n)
        .into_iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// `|q|` as a product of prime powers, parenthesized when compound.
fn factored_magnitude(q: &BigRational) -> String {
    let num = factored_integer(q.numer());
    let body = if q.denom().is_one() {
        num
    } else {
        let den = factored_integer(q.denom());
        if den.contains('*') {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    };
    if body.contains('*') || body.contains('/') {
        format!("({body})")
    } else {
        body
    }
}

pub fn pretty_rational(q: &BigRational) -> String {
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{}", factored_magnitude(q))
}

pub fn pretty_surd(s: &QuadSurd) -> String {
    let a = s.rational_part();
    let b = s.surd_part();
    if b.is_zero() {
        return pretty_rational(a);
    }
    let surd = if b.abs().is_one() {
        format!("sqrt({})", s.radicand())
    } else {
        format!("{}*sqrt({})", factored_magnitude(b), s.radicand())
    };
    if a.is_zero() {
        let sign = if b.is_negative() { "-" } else { "" };
        format!("{sign}{surd}")
    } else {
        let op = if b.is_negative() { "-" } else { "+" };
        format!("{} {op} {surd}", pretty_rational(a))
    }
}

/// Surd form when recognizable, raw coordinates otherwise.
pub fn pretty_number(x: &ExactNumber) -> String {
    match recognize_surd(x) {
        Some(s) => pretty_surd(&s),
        None => x.to_string(),
    }
}

fn latex_rational(q: &BigRational) -> String {
    let sign = if q.is_negative() { "-" } else { "" };
    if q.denom().is_one() {
        format!("{sign}{}", q.numer().abs())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    }
}

pub fn latex_number(x: &ExactNumber) -> String {
    match recognize_surd(x) {
        Some(s) if s.is_rational() => latex_rational(s.rational_part()),
        Some(s) if s.rational_part().is_zero() => {
            format!("{}\\sqrt{{{}}}", latex_rational(s.surd_part()), s.radicand())
        }
        Some(s) => format!(
            "\\left({} + {}\\sqrt{{{}}}\\right)",
            latex_rational(s.rational_part()),
            latex_rational(s.surd_part()),
            s.radicand()
        ),
        None => {
            let terms: Vec<String> = x
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| format!("{}\\zeta_{{{}}}^{{{j}}}", latex_rational(c), x.level()))
                .collect();
            format!("\\left({}\\right)", terms.join(" + "))
        }
    }
}

pub fn pretty_polynomial(p: &ExactPolynomial) -> String {
    render_poly(p, pretty_number, false)
}

pub fn latex_polynomial(p: &ExactPolynomial) -> String {
    render_poly(p, latex_number, true)
}

fn render_poly(p: &ExactPolynomial, f: fn(&ExactNumber) -> String, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coefficients_ascending().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "X".into(),
            _ if latex => format!("X^{{{i}}}"),
            _ => format!("X^{i}"),
        };
        let mut coeff = f(c);
        let compound = coeff.contains(" + ") || coeff.contains(" - ");
        let negative = !compound && coeff.starts_with('-');
        if negative {
            coeff.remove(0);
        }
        if compound {
            coeff = if latex { format!("\\left({coeff}\\right)") } else { format!("({coeff})") };
        }
        let sep = if latex { " " } else { "*" };
        let term = match (mono.is_empty(), coeff.as_str()) {
            (true, _) => coeff,
            (false, "1") => mono,
            (false, _) => format!("{coeff}{sep}{mono}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn factored_surds() {
        let s = QuadSurd::new(rat_int(0), rat(-2359296, 5), 3).unwrap();
        assert_eq!(pretty_surd(&s), "-(2^18*3^2/5)*sqrt(3)");
        let t = QuadSurd::new(rat_int(0), rat(147456, 5), 3).unwrap();
        assert_eq!(pretty_surd(&t), "(2^14*3^2/5)*sqrt(3)");
        assert_eq!(pretty_rational(&rat(-7, 1)), "-7");
        assert_eq!(pretty_rational(&rat_int(0)), "0");
        assert_eq!(pretty_rational(&rat(16, 1)), "2^4");
        assert_eq!(pretty_rational(&rat(1, 30)), "(1/(2*3*5))");
    }

    #[test]
    fn polynomial_signs() {
        let p = ExactPolynomial::from_rationals(&[rat_int(-3), rat_int(0), rat_int(-1), rat_int(1)]);
        assert_eq!(pretty_polynomial(&p), "X^3 - X^2 - 3");
    }
}
