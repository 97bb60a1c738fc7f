//! Cyclotomic fields Q(zeta_M) with a precomputed reduction table.
//!
//! Fields are interned per level: the first request for a level computes the
//! cyclotomic polynomial and the table of reduced powers `zeta^e`, `0 <= e < M`,
//! and every later request shares the same read-only data.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{divisors, euler_phi, mobius};

#[derive(Debug)]
pub struct CyclotomicField {
    level: u64,
    phi: usize,
    /// Monic Phi_M, ascending coefficients.
    modulus: Vec<i64>,
    /// `powers[e]` is `zeta_M^e` on the power basis.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.modulus
    }

    /// Coordinates of `zeta_M^e`, for any integer exponent.
    pub fn power(&self, e: i64) -> &[i64] {
        &self.powers[e.rem_euclid(self.level as i64) as usize]
    }

    fn build(level: u64) -> Self {
        assert!(level >= 1, "cyclotomic level must be positive");
        let modulus = cyclotomic_polynomial(level);
        let phi = euler_phi(level) as usize;
        debug_assert_eq!(modulus.len(), phi + 1);

        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x, folding x^phi back with -(Phi - x^phi)
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] = cur[j]
                        .checked_sub(top.checked_mul(modulus[j]).expect("overflow"))
                        .expect("overflow in cyclotomic reduction table");
                }
            }
        }
        Self {
            level,
            phi,
            modulus,
            powers,
        }
    }
}

/// Interned field for level `m`.
pub fn field(m: u64) -> Arc<CyclotomicField> {
    static REGISTRY: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = registry.lock().unwrap().get(&m) {
        return Arc::clone(f);
    }
    // build outside the lock; a racing builder produces an identical field
    let built = Arc::new(CyclotomicField::build(m));
    let mut guard = registry.lock().unwrap();
    Arc::clone(guard.entry(m).or_insert(built))
}

/// Phi_m via the Moebius product of `x^d - 1`, dividing exactly.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = mul_xd_minus_one(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        num = div_xd_minus_one(&num, d);
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

fn mul_xd_minus_one(p: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_xd_minus_one(p: &[i128], d: usize) -> Vec<i128> {
    // p = q * (x^d - 1): q_i = q_{i-d} - p_i, read top-down as q_{i} = p_{i+d} + q_{i+d}
    let qlen = p.len() - d;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let above = if i + d < qlen { q[i + d] } else { 0 };
        q[i] = p[i + d] + above;
    }
    debug_assert!((0..d).all(|i| {
        let hi = if i < qlen { q[i] } else { 0 };
        -hi == p[i] || (i >= qlen && p[i] == 0)
    }));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        // first cyclotomic polynomial with a coefficient outside {-1,0,1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn power_table_cycles() {
        let f = field(12);
        assert_eq!(f.degree(), 4);
        assert_eq!(f.power(0), &[1, 0, 0, 0]);
        assert_eq!(f.power(12), f.power(0));
        // zeta_12^6 = -1
        assert_eq!(f.power(6), &[-1, 0, 0, 0]);
    }

    #[test]
    fn interned() {
        assert!(Arc::ptr_eq(&field(20), &field(20)));
    }
}
