//! Bernoulli numbers, Bernoulli polynomials and their character-weighted
//! generalizations.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, frac, rat_pow};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact_field::rational_poly::{add_scaled, integer, linear_pow, RationalPoly, WeightedSum};
use crate::exact_field::{ExactNumber, ExactPolynomial};

/// Append-only memo of `B_0, B_1, ...` with `B_1 = -1/2`.
pub struct BernoulliTable {
    values: Mutex<Vec<BigRational>>,
}

impl BernoulliTable {
    fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable {
            values: Mutex::new(vec![BigRational::one()]),
        })
    }

    /// `B_k`, extending the table with `sum_{j<=k} binom(k+1, j) B_j = 0`.
    pub fn get(&self, k: usize) -> BigRational {
        let mut values = self.values.lock().expect("bernoulli table poisoned");
        while values.len() <= k {
            let m = values.len();
            let s: BigRational = values
                .iter()
                .enumerate()
                .map(|(j, b)| b * BigRational::from_integer(binomial(m as i64 + 1, j as i64)))
                .sum();
            values.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        values[k].clone()
    }
}

pub fn bernoulli_number(k: usize) -> BigRational {
    BernoulliTable::global().get(k)
}

/// Ascending rational coefficients of `B_k(x)`; empty for `k < 0`.
pub fn bernoulli_coefficients(k: i64) -> Vec<BigRational> {
    if k < 0 {
        return Vec::new();
    }
    (0..=k)
        .map(|i| BigRational::from_integer(binomial(k, i)) * bernoulli_number((k - i) as usize))
        .collect()
}

/// `B_k(x)`; the zero polynomial for negative `k`.
pub fn bernoulli_poly(k: i64) -> ExactPolynomial {
    ExactPolynomial::from_rationals(&bernoulli_coefficients(k))
}

fn eval_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `B_k({x})`, with `B_1({x}) = 0` at integers.
pub fn bernoulli_frac(k: i64, x: &BigRational) -> Result<BigRational> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("bernoulli_frac needs k >= 1, got {k}")));
    }
    if k == 1 && x.is_integer() {
        return Ok(BigRational::zero());
    }
    Ok(eval_rational(&bernoulli_coefficients(k), &frac(x)))
}

/// `B_{k,chi}(x)` as `D^{k-1} sum_h chi(h) B_k((x + h)/D)`, expanded over the rationals
/// separately for each value class of the character.
pub fn generalized_by_shift(k: i64, chi: &DirichletCharacter) -> ExactPolynomial {
    let d = chi.modulus() as i64;
    let bk = bernoulli_coefficients(k);
    let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
    let dk1 = rat_pow(&integer(d), k - 1);
    let mut sum = WeightedSum::new();
    for h in 0..d {
        let Some(e) = chi.exponent(h) else { continue };
        // B_k((x+h)/D) = sum_i b_i ((x+h)/D)^i
        let mut shifted = RationalPoly::new();
        for (i, b) in bk.iter().enumerate() {
            if !b.is_zero() {
                add_scaled(&mut shifted, &linear_pow(&inv_d, &(integer(h) * &inv_d), i as u32), b);
            }
        }
        sum.add(e, || chi.value(h), &shifted, &dk1);
    }
    sum.finish(chi.value_level())
}

/// `B_{j,chi}` for `j = 0..=k`, from
/// `B_{j,chi} = sum_h chi(h) sum_i binom(j,i) B_i D^{i-1} h^{j-i}`.
fn generalized_numbers(k: i64, chi: &DirichletCharacter) -> Vec<ExactNumber> {
    let d = chi.modulus() as i64;
    let mut sum = WeightedSum::new();
    for h in 0..d {
        let Some(e) = chi.exponent(h) else { continue };
        let nums: RationalPoly = (0..=k)
            .map(|j| {
                (0..=j)
                    .filter(|&i| !bernoulli_number(i as usize).is_zero())
                    .map(|i| {
                        bernoulli_number(i as usize)
                            * integer(binomial(j, i) * BigInt::from(h).pow((j - i) as u32))
                            * rat_pow(&integer(d), i - 1)
                    })
                    .sum()
            })
            .collect();
        sum.add(e, || chi.value(h), &nums, &BigRational::one());
    }
    let p = sum.finish(chi.value_level());
    (0..=k as usize).map(|j| p.coefficient(j)).collect()
}

/// `B_{k,chi}(x)` as `sum_j binom(k,j) B_{j,chi} x^{k-j}`; no caching.
pub fn generalized_by_binomial(k: i64, chi: &DirichletCharacter) -> ExactPolynomial {
    let nums = generalized_numbers(k, chi);
    let mut coeffs = vec![ExactNumber::zero(1); k as usize + 1];
    for j in 0..=k {
        coeffs[(k - j) as usize] = &nums[j as usize] * &ExactNumber::from(binomial(k, j));
    }
    ExactPolynomial::from_ascending(coeffs)
}

fn cache() -> &'static Mutex<HashMap<(i64, DirichletCharacter), ExactPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, DirichletCharacter), ExactPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `B_{k,chi}(x)`, zero for `k < 0`. Both defining expressions are evaluated
/// and compared; a mismatch is reported as [`Error::SelfCheck`].
pub fn generalized_bernoulli_poly(k: i64, chi: &DirichletCharacter) -> Result<ExactPolynomial> {
    if k < 0 {
        return Ok(ExactPolynomial::zero());
    }
    let key = (k, chi.clone());
    if let Some(p) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(p.clone());
    }
    let shifted = generalized_by_shift(k, chi);
    let expanded = generalized_by_binomial(k, chi);
    if shifted != expanded {
        return Err(Error::SelfCheck(format!(
            "generalized Bernoulli polynomial B_{k} disagrees between definitions for {chi}"
        )));
    }
    cache().lock().expect("cache poisoned").insert(key, shifted.clone());
    Ok(shifted)
}

/// `B_{k,chi} = B_{k,chi}(0)`.
pub fn generalized_bernoulli_number(k: i64, chi: &DirichletCharacter) -> Result<ExactNumber> {
    Ok(generalized_bernoulli_poly(k, chi)?.coefficient(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn chi3() -> DirichletCharacter {
        DirichletCharacter::kronecker(-3).unwrap()
    }

    #[test]
    fn numbers() {
        assert_eq!(bernoulli_number(0), rat_int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat_int(0));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn polynomials() {
        assert_eq!(
            bernoulli_poly(2),
            ExactPolynomial::from_rationals(&[rat(1, 6), rat_int(-1), rat_int(1)])
        );
        assert!(bernoulli_poly(-1).is_zero());
        assert_eq!(bernoulli_poly(0), ExactPolynomial::from_rationals(&[rat_int(1)]));
    }

    #[test]
    fn fractional_values() {
        assert_eq!(bernoulli_frac(1, &rat(7, 3)).unwrap(), rat(-1, 6));
        assert_eq!(bernoulli_frac(1, &rat_int(5)).unwrap(), rat_int(0));
        assert_eq!(bernoulli_frac(2, &rat(-1, 3)).unwrap(), rat(-1, 18));
        assert!(bernoulli_frac(0, &rat_int(1)).is_err());
    }

    #[test]
    fn generalized_mod_three() {
        let chi = chi3();
        assert_eq!(generalized_bernoulli_number(1, &chi).unwrap(), ExactNumber::rational(&rat(-1, 3), 1));
        assert_eq!(
            generalized_bernoulli_poly(2, &chi).unwrap(),
            ExactPolynomial::from_rationals(&[rat_int(0), rat(-2, 3)])
        );
        assert_eq!(generalized_bernoulli_number(5, &chi).unwrap(), ExactNumber::rational(&rat(-10, 3), 1));
        assert_eq!(generalized_bernoulli_number(9, &chi).unwrap(), ExactNumber::rational(&rat(-1618, 3), 1));
        assert!(generalized_bernoulli_number(2, &chi).unwrap().is_zero());
        assert!(generalized_bernoulli_number(0, &chi).unwrap().is_zero());
        assert!(generalized_bernoulli_poly(-2, &chi).unwrap().is_zero());
    }

    #[test]
    fn printed_polynomials_mod_three() {
        // the linear coefficient of B_10 is binom(10, 9) B_9 = -16180/3
        let chi = chi3();
        let check = |k: i64, odd: &[(usize, BigRational)]| {
            let mut coeffs = vec![rat_int(0); k as usize + 1];
            for (i, c) in odd {
                coeffs[*i] = c.clone();
            }
            assert_eq!(generalized_bernoulli_poly(k, &chi).unwrap(), ExactPolynomial::from_rationals(&coeffs));
        };
        check(4, &[(3, rat(-4, 3)), (1, rat(8, 3))]);
        check(6, &[(5, rat_int(-2)), (3, rat(40, 3)), (1, rat_int(-20))]);
        check(8, &[(7, rat(-8, 3)), (5, rat(112, 3)), (3, rat(-560, 3)), (1, rat(784, 3))]);
        check(
            10,
            &[(9, rat(-10, 3)), (7, rat_int(80)), (5, rat_int(-840)), (3, rat_int(3920)), (1, rat(-16180, 3))],
        );
        assert_eq!(generalized_bernoulli_number(3, &chi).unwrap(), ExactNumber::rational(&rat(2, 3), 1));
        assert_eq!(generalized_bernoulli_number(7, &chi).unwrap(), ExactNumber::rational(&rat(98, 3), 1));
    }

    #[test]
    fn quartic_character_parity() {
        for chi in crate::characters::enumerate_primitive_characters(5).unwrap() {
            for k in 0..8 {
                let b = generalized_bernoulli_number(k, &chi).unwrap();
                if chi.parity() != if k % 2 == 0 { 1 } else { -1 } {
                    assert!(b.is_zero(), "k={k} chi={chi}");
                }
            }
        }
    }
}
