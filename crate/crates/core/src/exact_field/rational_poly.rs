//! Dense rational polynomials (ascending coefficient vectors) and sums of
//! them weighted by root-of-unity classes. Used to keep heavy expansions over
//! the rationals and touch the cyclotomic field once per coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactNumber, ExactPolynomial};
use crate::arith::binomial;

pub type RationalPoly = Vec<BigRational>;

/// `acc += scale * p`.
pub fn add_scaled(acc: &mut RationalPoly, p: &[BigRational], scale: &BigRational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        if !c.is_zero() {
            *a += c * scale;
        }
    }
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> RationalPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(alpha X + beta)^e`.
pub fn linear_pow(alpha: &BigRational, beta: &BigRational, e: u32) -> RationalPoly {
    (0..=e)
        .map(|t| {
            BigRational::from_integer(binomial(e as i64, t as i64))
                * num_traits::pow(alpha.clone(), t as usize)
                * num_traits::pow(beta.clone(), (e - t) as usize)
        })
        .collect()
}

/// `X^w p(s / X)` for `deg p <= w`.
pub fn reciprocal(p: &[BigRational], w: usize, s: &BigRational) -> RationalPoly {
    assert!(p.len() <= w + 1, "degree exceeds {w}");
    let mut out = vec![BigRational::zero(); w + 1];
    let mut sj = BigRational::one();
    for (j, c) in p.iter().enumerate() {
        out[w - j] = c * &sj;
        sj *= s;
    }
    out
}

pub fn negate_variable(p: &[BigRational]) -> RationalPoly {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `sum_e zeta^e * p_e`, keyed by the exponent of the weight.
#[derive(Default)]
pub struct WeightedSum {
    classes: BTreeMap<u64, (ExactNumber, RationalPoly)>,
}

impl WeightedSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight * scale * p` where `weight` is the root of unity labelled
    /// by `key`.
    pub fn add(&mut self, key: u64, weight: impl FnOnce() -> ExactNumber, p: &[BigRational], scale: &BigRational) {
        let entry = self.classes.entry(key).or_insert_with(|| (weight(), Vec::new()));
        add_scaled(&mut entry.1, p, scale);
    }

    pub fn finish(self, level: u64) -> ExactPolynomial {
        let len = self.classes.values().map(|(_, c)| c.len()).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|t| {
                let mut acc = ExactNumber::zero(level);
                for (root, c) in self.classes.values() {
                    if let Some(q) = c.get(t) {
                        if !q.is_zero() {
                            acc += &(root * &ExactNumber::rational(q, 1));
                        }
                    }
                }
                acc
            })
            .collect();
        ExactPolynomial::from_ascending(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn basic_ops() {
        let p = linear_pow(&rat_int(2), &rat(1, 2), 2);
        assert_eq!(p, vec![rat(1, 4), rat_int(2), rat_int(4)]);
        assert_eq!(mul(&[rat_int(1), rat_int(1)], &[rat_int(-1), rat_int(1)]), vec![rat_int(-1), rat_int(0), rat_int(1)]);
        assert_eq!(reciprocal(&[rat_int(1), rat_int(3)], 3, &rat_int(2)), vec![rat_int(0), rat_int(0), rat_int(6), rat_int(1)]);
        assert_eq!(negate_variable(&[rat_int(1), rat_int(1)]), vec![rat_int(1), rat_int(-1)]);
    }
}
