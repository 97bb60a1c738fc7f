use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact_field::{ExactNumber, QuadSurd};

/// `a + b sqrt(d)` with `a, b` cyclotomic and `sqrt(d)` adjoined formally.
/// Radicand 1 means `b = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticExtension {
    a: ExactNumber,
    b: ExactNumber,
    d: u64,
}

impl QuadraticExtension {
    pub fn new(a: ExactNumber, b: ExactNumber, d: u64) -> Self {
        if d == 1 || b.is_zero() {
            let a = if d == 1 { &a + &b } else { a };
            return Self { a, b: ExactNumber::zero(1), d: 1 };
        }
        Self { a, b, d }
    }

    pub fn from_number(a: ExactNumber) -> Self {
        Self::new(a, ExactNumber::zero(1), 1)
    }

    pub fn from_surd(s: &QuadSurd) -> Self {
        Self::new(
            ExactNumber::rational(s.rational_part(), 1),
            ExactNumber::rational(s.surd_part(), 1),
            s.radicand(),
        )
    }

    pub fn rational_part(&self) -> &ExactNumber {
        &self.a
    }

    pub fn surd_part(&self) -> &ExactNumber {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The other embedding, `sqrt(d) -> -sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.d)
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> ExactNumber {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &ExactNumber::from_int(self.d as i64))
    }

    pub fn scale(&self, c: &ExactNumber) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d)
    }

    /// Exact quotient by rationalizing the denominator.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let norm = rhs.norm();
        if norm.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let inv = norm.inv()?;
        Ok((self * &rhs.conjugate()).scale(&inv))
    }

    fn common_radicand(&self, rhs: &Self) -> u64 {
        match (self.d, rhs.d) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("radicands {d} and {e} differ"),
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        self.a.to_complex() + self.b.to_complex() * (self.d as f64).sqrt()
    }
}

impl<'a> Add<&'a QuadraticExtension> for &'a QuadraticExtension {
    type Output = QuadraticExtension;
    fn add(self, rhs: &QuadraticExtension) -> QuadraticExtension {
        let d = self.common_radicand(rhs);
        QuadraticExtension::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a QuadraticExtension> for &'a QuadraticExtension {
    type Output = QuadraticExtension;
    fn sub(self, rhs: &QuadraticExtension) -> QuadraticExtension {
        self + &(-rhs)
    }
}

impl Neg for &QuadraticExtension {
    type Output = QuadraticExtension;
    fn neg(self) -> QuadraticExtension {
        QuadraticExtension::new(-&self.a, -&self.b, self.d)
    }
}

impl<'a> Mul<&'a QuadraticExtension> for &'a QuadraticExtension {
    type Output = QuadraticExtension;
    fn mul(self, rhs: &QuadraticExtension) -> QuadraticExtension {
        let d = self.common_radicand(rhs);
        let dd = ExactNumber::from_int(d as i64);
        QuadraticExtension::new(
            &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &dd),
            &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
            d,
        )
    }
}

impl fmt::Debug for QuadraticExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticExtension({self})")
    }
}

impl fmt::Display for QuadraticExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}
