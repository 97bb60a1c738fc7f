//! Elements of Q(zeta_M).
//!
//! An [`ExactNumber`] stores integer numerators on the power basis
//! `1, zeta, ..., zeta^(phi(M)-1)` over one shared positive denominator, kept
//! in lowest terms. Binary operations between numbers of different levels
//! lift both operands to the least common level first.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::{field, CyclotomicField};
use super::linalg;
use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct ExactNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl ExactNumber {
    /// The rational `q` embedded in Q(zeta_level).
    pub fn rational(q: &BigRational, level: u64) -> Self {
        let f = field(level);
        let mut num = vec![BigInt::zero(); f.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(f, num, q.denom().clone())
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(&BigRational::from_integer(n.into()), 1)
    }

    pub fn zero(level: u64) -> Self {
        let f = field(level);
        let n = f.degree();
        Self {
            field: f,
            num: vec![BigInt::zero(); n],
            den: BigInt::one(),
        }
    }

    pub fn one(level: u64) -> Self {
        let mut z = Self::zero(level);
        z.num[0] = BigInt::one();
        z
    }

    /// `zeta_M^k`.
    pub fn root_of_unity(level: u64, k: i64) -> Self {
        let f = field(level);
        let num = f.power(k).iter().map(|&c| BigInt::from(c)).collect();
        Self {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// The imaginary unit in Q(zeta_4).
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// Builds a number from rational power-basis coordinates; missing trailing
    /// coordinates are zero.
    pub fn from_coords(level: u64, coords: &[BigRational]) -> Result<Self> {
        let f = field(level);
        if coords.len() > f.degree() {
            return Err(Error::FieldMismatch(format!(
                "{} coordinates for a field of degree {}",
                coords.len(),
                f.degree()
            )));
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); f.degree()];
        for (slot, c) in num.iter_mut().zip(coords) {
            *slot = c.numer() * (&den / c.denom());
        }
        Ok(Self::from_parts(f, num, den))
    }

    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Self { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn level(&self) -> u64 {
        self.field.level()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the number in Q(zeta_target); `level` must divide `target`.
    pub fn lift(&self, target: u64) -> Result<Self> {
        let m = self.level();
        if target % m != 0 {
            return Err(Error::FieldMismatch(format!(
                "cannot lift level {m} to level {target}"
            )));
        }
        if target == m {
            return Ok(self.clone());
        }
        let f = field(target);
        let step = (target / m) as i64;
        let mut num = vec![BigInt::zero(); f.degree()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                num[0] += c;
                continue;
            }
            for (slot, &t) in num.iter_mut().zip(f.power(j as i64 * step)) {
                if t != 0 {
                    *slot += c * t;
                }
            }
        }
        Ok(Self::from_parts(f, num, self.den.clone()))
    }

    /// Finds the representation of `self` inside the subfield Q(zeta_target),
    /// `target | level`, if the number lies there.
    pub fn descend(&self, target: u64) -> Option<Self> {
        let m = self.level();
        if m % target != 0 {
            return None;
        }
        if self.is_rational() {
            return Some(Self::rational(&self.as_rational().unwrap(), target));
        }
        let sub = field(target);
        let step = (m / target) as i64;
        let rows = self.degree();
        let cols = sub.degree();
        let mut matrix = vec![vec![BigRational::zero(); cols]; rows];
        for j in 0..cols {
            for (i, &t) in self.field.power(j as i64 * step).iter().enumerate() {
                matrix[i][j] = BigRational::from_integer(t.into());
            }
        }
        let sol = linalg::solve(matrix, self.coords())?;
        Self::from_coords(target, &sol).ok()
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&a.field, &b.field) {
            return (a.clone(), b.clone());
        }
        if let Some(q) = a.as_rational() {
            return (Self::rational(&q, b.level()), b.clone());
        }
        if let Some(q) = b.as_rational() {
            return (a.clone(), Self::rational(&q, a.level()));
        }
        let l = lcm(a.level(), b.level());
        (a.lift(l).unwrap(), b.lift(l).unwrap())
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
    }

    fn add_same(&self, other: &Self) -> Self {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Self::from_parts(Arc::clone(&self.field), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::from_parts(Arc::clone(&self.field), num, &self.den * &other.den)
    }

    fn scale_same(&self, q_num: &BigInt, q_den: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * q_num).collect();
        Self::from_parts(Arc::clone(&self.field), num, &self.den * q_den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale_same(&other.num[0], &other.den);
        }
        if self.is_rational() {
            return other.scale_same(&self.num[0], &self.den);
        }
        let phi = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod.drain(..phi).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &t) in num.iter_mut().zip(self.field.power((phi + k) as i64)) {
                if t != 0 {
                    *slot += &c * t;
                }
            }
        }
        Self::from_parts(Arc::clone(&self.field), num, &self.den * &other.den)
    }

    /// Multiplicative inverse, by solving the linear system for multiplication
    /// by `self` on the power basis.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::rational(&q.recip(), self.level()));
        }
        let phi = self.degree();
        let mut matrix = vec![vec![BigRational::zero(); phi]; phi];
        for j in 0..phi {
            let col = self * &Self::root_of_unity(self.level(), j as i64);
            for (i, c) in col.coords().into_iter().enumerate() {
                matrix[i][j] = c;
            }
        }
        let mut rhs = vec![BigRational::zero(); phi];
        rhs[0] = BigRational::one();
        let sol = linalg::solve(matrix, rhs).ok_or(Error::DivisionByZero)?;
        Self::from_coords(self.level(), &sol)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.level());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The automorphism `zeta -> zeta^a`, `gcd(a, M) = 1`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.level() as i64;
        if gcd(a, m) != 1 {
            return Err(Error::NotCoprime(a, m));
        }
        let mut num = vec![BigInt::zero(); self.degree()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &t) in num.iter_mut().zip(self.field.power(a * j as i64)) {
                if t != 0 {
                    *slot += c * t;
                }
            }
        }
        Ok(Self::from_parts(Arc::clone(&self.field), num, self.den.clone()))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(self.level() as i64 - 1)
            .expect("M-1 is a unit mod M")
    }

    /// Value under the embedding `zeta_M -> exp(2 pi i / M)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.level() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / m;
            acc += Complex64::from_polar(v, ang);
        }
        acc
    }
}

/// Floating evaluation of an exact number.
pub fn numeric_eval(x: &ExactNumber) -> Complex64 {
    x.to_complex()
}

/// `q` embedded in Q(zeta_level).
pub fn cyclotomic_embed(q: &BigRational, level: u64) -> ExactNumber {
    ExactNumber::rational(q, level)
}

/// `zeta_level^k`.
pub fn root_of_unity(level: u64, k: i64) -> ExactNumber {
    ExactNumber::root_of_unity(level, k)
}

impl PartialEq for ExactNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) || self.level() == other.level() {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() && other.is_rational() {
            return self.den == other.den && self.num[0] == other.num[0];
        }
        let (a, b) = Self::lift_pair(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for ExactNumber {}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactNumber({self})")
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let m = self.level();
        let mut first = true;
        for (j, c) in self.coords().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{m}")?,
                _ => write!(f, "({c})*z{m}^{j}")?,
            }
        }
        Ok(())
    }
}

impl From<BigRational> for ExactNumber {
    fn from(q: BigRational) -> Self {
        Self::rational(&q, 1)
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for ExactNumber {
    fn from(n: BigInt) -> Self {
        Self::rational(&BigRational::from_integer(n), 1)
    }
}

impl<'a> Add<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn add(self, rhs: &ExactNumber) -> ExactNumber {
        if self.same_field(rhs) {
            return self.add_same(rhs);
        }
        let (a, b) = ExactNumber::lift_pair(self, rhs);
        a.add_same(&b)
    }
}

impl<'a> Mul<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: &ExactNumber) -> ExactNumber {
        if self.same_field(rhs) {
            return self.mul_same(rhs);
        }
        // a rational factor never forces a lift of the other operand
        if rhs.is_rational() {
            return self.scale_same(&rhs.num[0], &rhs.den);
        }
        if self.is_rational() {
            return rhs.scale_same(&self.num[0], &self.den);
        }
        let (a, b) = ExactNumber::lift_pair(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl<'a> Sub<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: &ExactNumber) -> ExactNumber {
        self + &(-rhs)
    }
}

/// Panics on division by zero; use [`ExactNumber::checked_div`] to handle it.
impl<'a> Div<&'a ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn div(self, rhs: &ExactNumber) -> ExactNumber {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: ExactNumber) -> ExactNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: &ExactNumber) -> ExactNumber {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactNumber> for &'a ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: ExactNumber) -> ExactNumber {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactNumber> for ExactNumber {
    fn add_assign(&mut self, rhs: &ExactNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactNumber> for ExactNumber {
    fn sub_assign(&mut self, rhs: &ExactNumber) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactNumber> for ExactNumber {
    fn mul_assign(&mut self, rhs: &ExactNumber) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for ExactNumber {
    fn sum<I: Iterator<Item = ExactNumber>>(iter: I) -> Self {
        iter.fold(ExactNumber::zero(1), |acc, x| acc + x)
    }
}
