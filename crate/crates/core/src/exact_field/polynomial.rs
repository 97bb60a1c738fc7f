//! Univariate polynomials over [`ExactNumber`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::number::ExactNumber;

/// Polynomial in `X`. Coefficients are stored ascending (`coeffs[i]` belongs
/// to `X^i`) with no zero leading coefficient; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<ExactNumber>,
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactNumber) -> Self {
        Self::from_ascending(vec![c])
    }

    pub fn monomial(c: ExactNumber, degree: usize) -> Self {
        let mut coeffs = vec![ExactNumber::zero(1); degree];
        coeffs.push(c);
        Self::from_ascending(coeffs)
    }

    /// `X`.
    pub fn x() -> Self {
        Self::monomial(ExactNumber::from_int(1), 1)
    }

    /// `alpha X + beta`.
    pub fn linear(alpha: ExactNumber, beta: ExactNumber) -> Self {
        Self::from_ascending(vec![beta, alpha])
    }

    pub fn from_ascending(mut coeffs: Vec<ExactNumber>) -> Self {
        while coeffs.last().is_some_and(ExactNumber::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_descending(mut coeffs: Vec<ExactNumber>) -> Self {
        coeffs.reverse();
        Self::from_ascending(coeffs)
    }

    pub fn from_rationals(ascending: &[BigRational]) -> Self {
        Self::from_ascending(ascending.iter().map(|q| ExactNumber::rational(q, 1)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coefficient(&self, i: usize) -> ExactNumber {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| ExactNumber::zero(1))
    }

    pub fn coefficients_ascending(&self) -> &[ExactNumber] {
        &self.coeffs
    }

    /// Leading coefficient first.
    pub fn coefficients_descending(&self) -> Vec<ExactNumber> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn scale(&self, c: &ExactNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_ascending(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Lifts every coefficient to Q(zeta_level).
    pub fn lift(&self, level: u64) -> crate::Result<Self> {
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.lift(level))
                .collect::<crate::Result<_>>()?,
        })
    }

    pub fn eval(&self, x: &ExactNumber) -> ExactNumber {
        let mut acc = ExactNumber::zero(1);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `p(alpha X + beta)`.
    pub fn compose_affine(&self, alpha: &ExactNumber, beta: &ExactNumber) -> Self {
        let lin = Self::linear(alpha.clone(), beta.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// `p(-X)`.
    pub fn negate_variable(&self) -> Self {
        Self::from_ascending(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `X^w * p(s / X)` for `deg p <= w`, i.e. `sum_j p_j s^j X^(w-j)`.
    pub fn reciprocal_substitute(&self, w: usize, s: &ExactNumber) -> Self {
        let deg = self.degree().unwrap_or(0);
        assert!(deg <= w, "degree {deg} exceeds {w} in reciprocal substitution");
        let mut out = vec![ExactNumber::zero(1); w + 1];
        let mut sj = ExactNumber::from_int(1);
        for (j, c) in self.coeffs.iter().enumerate() {
            out[w - j] = c * &sj;
            sj = &sj * s;
        }
        Self::from_ascending(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(ExactNumber::from_int(1));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        ExactPolynomial::from_ascending(coeffs)
    }
}

impl<'a> Sub<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![ExactNumber::zero(1); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        ExactPolynomial::from_ascending(out)
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactPolynomial> for ExactPolynomial {
            type Output = ExactPolynomial;
            fn $m(self, rhs: ExactPolynomial) -> ExactPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPolynomial({self})")
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}
