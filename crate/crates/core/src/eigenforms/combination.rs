use std::fmt;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact_field::{sqrt_natural, ExactNumber, QuadSurd};
use crate::period_formula::{twisted_period, PeriodContext};

use super::quadratic::QuadraticExtension;

/// `sum_j c_j R_{n_j}` on `Gamma_0(N)` with coefficients in one real
/// quadratic field.
#[derive(Clone, PartialEq, Eq)]
pub struct RnCombination {
    level: u64,
    weight: u32,
    terms: Vec<(u32, QuadSurd)>,
}

impl RnCombination {
    /// `weight` is the modular weight `w + 2`.
    pub fn new(level: u64, weight: u32, terms: Vec<(u32, QuadSurd)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidContext("level must be positive".into()));
        }
        if weight < 4 || weight % 2 != 0 {
            return Err(Error::InvalidContext(format!("weight {weight} must be even and at least 4")));
        }
        if terms.is_empty() {
            return Err(Error::InvalidContext("combination has no terms".into()));
        }
        let w = weight - 2;
        let mut radicand = 1;
        for (i, (n, c)) in terms.iter().enumerate() {
            if *n == 0 || *n >= w {
                return Err(Error::InvalidContext(format!("index n = {n} outside 0 < n < {w}")));
            }
            if terms[..i].iter().any(|(k, _)| k == n) {
                return Err(Error::InvalidContext(format!("index n = {n} repeated")));
            }
            match (radicand, c.radicand()) {
                (_, 1) => {}
                (1, d) => radicand = d,
                (a, b) if a == b => {}
                (a, b) => {
                    return Err(Error::FieldMismatch(format!("coefficients in Q(sqrt {a}) and Q(sqrt {b})")));
                }
            }
        }
        Ok(Self { level, weight, terms })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn w(&self) -> u32 {
        self.weight - 2
    }

    pub fn terms(&self) -> &[(u32, QuadSurd)] {
        &self.terms
    }

    /// Squarefree `d` of the coefficient field, 1 when all are rational.
    pub fn radicand(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.radicand()).max().unwrap_or(1)
    }

    /// Galois conjugate combination.
    pub fn conjugate(&self) -> Self {
        Self { terms: self.terms.iter().map(|(n, c)| (*n, c.conjugate())).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &QuadSurd) -> Result<Self> {
        Self::new(self.level, self.weight, self.terms.iter().map(|(n, x)| (*n, x * c)).collect())
    }

    /// Coefficient vector on the given `R_n` indices.
    pub fn coordinates(&self, basis: &[u32]) -> Vec<QuadSurd> {
        basis
            .iter()
            .map(|b| self.terms.iter().find(|(n, _)| n == b).map_or(QuadSurd::from_int(0), |(_, c)| c.clone()))
            .collect()
    }
}

impl fmt::Debug for RnCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RnCombination(N={}, k={}: {self})", self.level, self.weight)
    }
}

impl fmt::Display for RnCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_rational() {
                write!(f, "{c}*R_{n}")?;
            } else {
                write!(f, "({c})*R_{n}")?;
            }
        }
        Ok(())
    }
}

/// `r_{m,chi}(f)` by linearity. Every constituent must admit extraction of
/// `m`.
pub fn twisted_period_of_combination(
    f: &RnCombination,
    chi: &DirichletCharacter,
    m: u32,
) -> Result<QuadraticExtension> {
    let mut acc = QuadraticExtension::from_number(ExactNumber::zero(1));
    for (n, c) in &f.terms {
        let ctx = PeriodContext::new(f.level, f.w() as i64, *n as i64, chi.clone())?;
        let r = twisted_period(&ctx, m)?;
        acc = &acc + &QuadraticExtension::from_surd(c).scale(&r);
    }
    Ok(acc)
}

/// `-i D sqrt(N)`: `Lambda(f, chi, m+1) = (-i D sqrt N)^(m+1) r_{m,chi}(f)`.
fn lambda_base(level: u64, chi: &DirichletCharacter) -> Result<ExactNumber> {
    let d = ExactNumber::from_int(chi.modulus() as i64);
    Ok(&(&(-&ExactNumber::i()) * &d) * &sqrt_natural(level)?)
}

/// Completed twisted L-value `Lambda(f, chi, m + 1)`.
pub fn twisted_lambda(f: &RnCombination, chi: &DirichletCharacter, m: u32) -> Result<QuadraticExtension> {
    let r = twisted_period_of_combination(f, chi, m)?;
    Ok(r.scale(&lambda_base(f.level, chi)?.pow(m as i64 + 1)?))
}

/// `Lambda(f, chi, m1 + 1) / Lambda(f, chi, m2 + 1)`, returned for `f` and
/// for its Galois conjugate.
pub fn twisted_lambda_ratio(
    f: &RnCombination,
    chi: &DirichletCharacter,
    m1: u32,
    m2: u32,
) -> Result<(QuadraticExtension, QuadraticExtension)> {
    let top = twisted_period_of_combination(f, chi, m1)?;
    let bottom = twisted_period_of_combination(f, chi, m2)?;
    let factor = lambda_base(f.level, chi)?.pow(m1 as i64 - m2 as i64)?;
    let ratio = top.checked_div(&bottom)?.scale(&factor);
    let conj = top.conjugate().checked_div(&bottom.conjugate())?.scale(&factor);
    Ok((ratio, conj))
}
