//! Real quadratic surds `a + b*sqrt(d)`, square roots of integers inside
//! cyclotomic fields, and recognition of cyclotomic numbers as surds.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number::ExactNumber;
use crate::arith::{divisors, factor, is_squarefree, squarefree_part};
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `d` squarefree; `b = 0` forces `d = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadSurd {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: BigRational, b: BigRational, d: u64) -> Self {
        if d == 1 {
            return Self { a: a + b, b: BigRational::zero(), d: 1 };
        }
        if b.is_zero() {
            return Self { a, b, d: 1 };
        }
        Self { a, b, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `sqrt(n)` for any positive integer, pulling out square factors.
    pub fn sqrt_of(n: &BigInt) -> Self {
        let (s, d) = squarefree_part(n, 1_000_000);
        let d = d.to_u64().expect("radicand fits in u64");
        Self::normalized(BigRational::zero(), BigRational::from_integer(s), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(Self::normalized(c.a / &n, c.b / &n, self.d))
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// The surd as an element of its smallest cyclotomic field.
    pub fn to_exact(&self) -> ExactNumber {
        let a = ExactNumber::rational(&self.a, 1);
        if self.b.is_zero() {
            return a;
        }
        let root = sqrt_integer(self.d).expect("radicand is squarefree");
        &a + &(&root * &ExactNumber::rational(&self.b, 1))
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed radicands sqrt({d}) and sqrt({e})"),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Arithmetic requires equal radicands (or a rational operand) and panics
/// otherwise.
impl<'a> Add<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: &QuadSurd) -> QuadSurd {
        let d = self.common_radicand(rhs);
        QuadSurd::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: &QuadSurd) -> QuadSurd {
        self + &(-rhs)
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl<'a> Mul<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: &QuadSurd) -> QuadSurd {
        let d = self.common_radicand(rhs);
        let dq = BigRational::from_integer(d.into());
        QuadSurd::normalized(
            &self.a * &rhs.a + &self.b * &rhs.b * dq,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

/// Panics on division by zero.
impl<'a> Div<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn div(self, rhs: &QuadSurd) -> QuadSurd {
        self * &rhs.inv().expect("division by zero")
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadSurd({self})")
    }
}

/// `a + b*sqrt(d)`, or just `a` when rational; parsed back exactly by [`FromStr`].
impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl FromStr for QuadSurd {
    type Err = Error;

    /// Accepts sums of rational terms `p/q` and surd terms `[c*]sqrt(d)`, e.g.
    /// `7/2`, `1135193+19*sqrt(144169)`, `1/3 + -2*sqrt(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty surd".into()));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut d = 1u64;
        for term in split_terms(&compact) {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (sign, body) = match body.strip_prefix('-') {
                Some(rest) => (-sign, rest),
                None => (sign, body),
            };
            let signed = |q: BigRational| if sign < 0 { -q } else { q };
            if let Some(pos) = body.find("sqrt(") {
                let coef_str = body[..pos].trim_end_matches('*');
                let coef = if coef_str.is_empty() {
                    BigRational::one()
                } else if let Some(inner) = coef_str.strip_prefix('-') {
                    -parse_rational(inner)?
                } else {
                    parse_rational(coef_str)?
                };
                let rad = body[pos + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {s:?}")))?;
                let rad: u64 = rad
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
                if !is_squarefree(rad) {
                    return Err(Error::NotSquarefree(rad));
                }
                if rad == 1 {
                    a += signed(coef);
                    continue;
                }
                if d != 1 && d != rad {
                    return Err(Error::Parse(format!("mixed radicands in {s:?}")));
                }
                d = rad;
                b += signed(coef);
            } else {
                a += signed(parse_rational(body)?);
            }
        }
        Ok(Self::normalized(a, b, d))
    }
}

/// Splits at top-level `+`/`-` signs that start a new term.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start => {
                let prev = bytes[i - 1];
                if prev != b'+' && prev != b'-' && prev != b'*' && prev != b'/' {
                    out.push(&s[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Positive square root of a squarefree integer, as a cyclotomic number.
///
/// `sqrt(2) = zeta_8 + zeta_8^-1`; for an odd prime `p` the quadratic Gauss
/// sum `g_p` satisfies `g_p^2 = (-1)^((p-1)/2) p`, so `sqrt(p)` is `g_p` or
/// `i*g_p` up to sign. The sign is fixed numerically.
pub fn sqrt_integer(n: u64) -> Result<ExactNumber> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let mut acc = ExactNumber::from_int(1);
    for (p, _) in factor(n) {
        acc = &acc * &sqrt_prime(p);
    }
    if acc.to_complex().re < 0.0 {
        acc = -acc;
    }
    Ok(acc)
}

/// Positive square root of any positive integer, `s * sqrt(f)` for `n = s^2 f`.
pub fn sqrt_natural(n: u64) -> Result<ExactNumber> {
    if n == 0 {
        return Ok(ExactNumber::from_int(0));
    }
    let (s, f) = crate::arith::squarefree_part(&BigInt::from(n), n);
    let f = f.to_u64().expect("divides a u64");
    Ok(&ExactNumber::from(s) * &sqrt_integer(f)?)
}

fn sqrt_prime(p: u64) -> ExactNumber {
    let root = if p == 2 {
        &ExactNumber::root_of_unity(8, 1) + &ExactNumber::root_of_unity(8, -1)
    } else {
        let mut g = ExactNumber::zero(p);
        for h in 1..p {
            let z = ExactNumber::root_of_unity(p, h as i64);
            if legendre(h, p) == 1 {
                g += &z;
            } else {
                g -= &z;
            }
        }
        if p % 4 == 1 {
            g
        } else {
            &ExactNumber::i() * &g
        }
    };
    if root.to_complex().re < 0.0 {
        -root
    } else {
        root
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    match result {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Writes `x = a + b*s` for a fixed non-rational `s` of the same field, if
/// possible.
pub fn decompose_over(x: &ExactNumber, s: &ExactNumber) -> Option<(BigRational, BigRational)> {
    let level = crate::arith::lcm(x.level(), s.level());
    let x = x.lift(level).ok()?;
    let s = s.lift(level).ok()?;
    let xc = x.coords();
    let sc = s.coords();
    let j = (1..sc.len()).find(|&j| !sc[j].is_zero())?;
    let b = &xc[j] / &sc[j];
    let a = &xc[0] - &b * &sc[0];
    let candidate = &ExactNumber::rational(&a, 1) + &(&s * &ExactNumber::rational(&b, 1));
    (candidate == x).then_some((a, b))
}

/// Recognizes `x` as a real quadratic surd, searching radicands among the
/// squarefree divisors of the cyclotomic level.
pub fn recognize_surd(x: &ExactNumber) -> Option<QuadSurd> {
    if let Some(q) = x.as_rational() {
        return Some(QuadSurd::rational(q));
    }
    let m = x.level();
    for d in divisors(m) {
        if d == 1 || !is_squarefree(d) {
            continue;
        }
        let root = sqrt_integer(d).ok()?;
        if m % root.level() != 0 {
            continue;
        }
        if let Some((a, b)) = decompose_over(x, &root) {
            return Some(QuadSurd::normalized(a, b, d));
        }
    }
    None
}
