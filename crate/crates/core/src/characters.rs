//! Dirichlet characters stored as full value tables.
//!
//! A character mod `D` of order `r` is kept as the exponent table
//! `h -> e(h)` with `chi(h) = zeta_r^e(h)` (no entry when `gcd(h, D) > 1`).
//! Construction validates complete multiplicativity and records the conductor.

use std::fmt;
use std::str::FromStr;

use crate::arith::{egcd, euler_phi, factor, gcd, lcm};
use crate::error::{Error, Result};
use crate::exact_field::ExactNumber;

/// Largest modulus accepted by [`enumerate_primitive_characters`].
pub const DEFAULT_MODULUS_BOUND: u64 = 100;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
    conductor: u64,
}

impl DirichletCharacter {
    /// Builds a character from exponents of `zeta_order`. The order is reduced
    /// to the true order of the character.
    pub fn from_exponents(modulus: u64, order: u64, exps: Vec<Option<u64>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCharacter(msg));
        if modulus < 1 || order < 1 {
            return bad("modulus and order must be positive".into());
        }
        if exps.len() != modulus as usize {
            return bad(format!("table has {} entries, expected {modulus}", exps.len()));
        }
        for (h, e) in exps.iter().enumerate() {
            let unit = gcd(h as i64, modulus as i64) == 1;
            if unit != e.is_some() {
                return bad(format!("value at {h} must be {}", if unit { "nonzero" } else { "0" }));
            }
        }
        let exps: Vec<Option<u64>> = exps.into_iter().map(|e| e.map(|e| e % order)).collect();
        if modulus > 1 && exps[1] != Some(0) {
            return bad("chi(1) != 1".into());
        }
        for a in 0..modulus {
            let Some(ea) = exps[a as usize] else { continue };
            for b in a..modulus {
                let Some(eb) = exps[b as usize] else { continue };
                if exps[(a * b % modulus) as usize] != Some((ea + eb) % order) {
                    return bad(format!("not multiplicative at ({a}, {b})"));
                }
            }
        }
        let g = exps.iter().flatten().fold(order, |g, &e| gcd(g as i64, e as i64) as u64);
        let true_order = order / g;
        let exps = exps.into_iter().map(|e| e.map(|e| e / g)).collect();
        let mut chi = Self {
            modulus,
            order: true_order,
            exps,
            conductor: modulus,
        };
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    /// Smallest `d | D` such that `chi(a) = 1` for every unit `a = 1 (mod d)`.
    fn compute_conductor(&self) -> u64 {
        let m = self.modulus;
        crate::arith::divisors(m)
            .into_iter()
            .find(|&d| {
                (1..m).all(|a| {
                    a % d != 1 % d || gcd(a as i64, m as i64) != 1 || self.exps[a as usize] == Some(0)
                })
            })
            .unwrap_or(m)
    }

    /// The Kronecker symbol `(d/.)` as a primitive character mod `|d|`.
    pub fn kronecker(d: i64) -> Result<Self> {
        let m = d.unsigned_abs();
        if m < 2 {
            return Err(Error::InvalidCharacter(format!("kronecker:{d} has modulus < 2")));
        }
        // (d/.) always has period dividing 4|d|
        for h in m as i64..4 * m as i64 {
            if kronecker_symbol(d, h) != kronecker_symbol(d, h % m as i64) {
                return Err(Error::InvalidCharacter(format!(
                    "({d}/.) is not periodic mod {m}"
                )));
            }
        }
        let mut exps = Vec::with_capacity(m as usize);
        for h in 0..m as i64 {
            let v = kronecker_symbol(d, h);
            exps.push(match v {
                0 => None,
                1 => Some(0),
                _ => Some(1),
            });
        }
        let chi = Self::from_exponents(m, 2, exps)?;
        chi.require_primitive()?;
        Ok(chi)
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive {
                modulus: self.modulus,
                conductor: self.conductor,
            })
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// Smallest cyclotomic level containing every value.
    pub fn value_level(&self) -> u64 {
        if self.order <= 2 {
            1
        } else {
            self.order
        }
    }

    /// Exponent `e` with `chi(h) = zeta_order^e`, or `None` when `chi(h) = 0`.
    pub fn exponent(&self, h: i64) -> Option<u64> {
        self.exps[h.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, h: i64) -> ExactNumber {
        match self.exponent(h) {
            None => ExactNumber::zero(1),
            Some(0) => ExactNumber::from_int(1),
            Some(e) if 2 * e == self.order => ExactNumber::from_int(-1),
            Some(e) => ExactNumber::root_of_unity(self.order, e as i64),
        }
    }

    /// The full table `chi(0), ..., chi(D-1)`.
    pub fn values(&self) -> Vec<ExactNumber> {
        (0..self.modulus as i64).map(|h| self.value(h)).collect()
    }

    /// `chi(-1)`, as `+1` or `-1`.
    pub fn parity(&self) -> i64 {
        match self.exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conj(&self) -> Self {
        Self {
            modulus: self.modulus,
            order: self.order,
            exps: self
                .exps
                .iter()
                .map(|e| e.map(|e| (self.order - e) % self.order))
                .collect(),
            conductor: self.conductor,
        }
    }

    /// `tau(chi) = sum_h chi(h) zeta_D^h`.
    pub fn gauss_sum(&self) -> ExactNumber {
        let level = lcm(self.value_level(), self.modulus);
        let mut acc = ExactNumber::zero(level);
        for h in 0..self.modulus as i64 {
            if self.exponent(h).is_some() {
                acc += &(&self.value(h) * &ExactNumber::root_of_unity(self.modulus, h));
            }
        }
        acc
    }

    /// `1 / tau(conj chi) = tau(chi) / (chi(-1) D)`, avoiding a field inversion.
    pub fn conj_gauss_sum_inverse(&self) -> ExactNumber {
        let denom = ExactNumber::from_int(self.parity() * self.modulus as i64);
        &self.gauss_sum() * &denom.inv().expect("nonzero rational")
    }

    /// `chi(a, c, k, l) = chi(k b + l d)` for any `b, d` with `ad - bc = 1`.
    pub fn chi_four_tuple(&self, a: i64, c: i64, k: i64, l: i64) -> Result<ExactNumber> {
        if a <= 0 || c <= 0 || k <= 0 || l <= 0 {
            return Err(Error::InvalidQuadruple(format!("({a},{c},{k},{l}) not positive")));
        }
        if k * a + l * c != self.modulus as i64 {
            return Err(Error::InvalidQuadruple(format!(
                "k a + l c = {} != {}",
                k * a + l * c,
                self.modulus
            )));
        }
        let (b, d) = bezout_completion(a, c)?;
        Ok(self.value(k * b + l * d))
    }

    /// Parses `kronecker:D` or `table:D:v0,v1,...,v(D-1)` with values `0`,
    /// `1`, `-1`, `zeta[M]^k` or `zeta[M]`. The character must be primitive.
    pub fn parse(spec: &str) -> Result<Self> {
        spec.parse()
    }
}

/// `(b, d)` with `a d - b c = 1`.
pub fn bezout_completion(a: i64, c: i64) -> Result<(i64, i64)> {
    let (g, x, y) = egcd(a, c);
    if g != 1 {
        return Err(Error::NotCoprime(a, c));
    }
    // a x + c y = 1  =>  d = x, b = -y
    Ok((-y, x))
}

impl FromStr for DirichletCharacter {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad character specifier {spec:?}"));
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("kronecker:") {
            let d: i64 = rest.trim().parse().map_err(|_| bad())?;
            return Self::kronecker(d);
        }
        let rest = spec.strip_prefix("table:").ok_or_else(bad)?;
        let (m, values) = rest.split_once(':').ok_or_else(bad)?;
        let modulus: u64 = m.trim().parse().map_err(|_| bad())?;
        let mut parsed: Vec<Option<(u64, i64)>> = Vec::new();
        for v in values.split(',') {
            let v = v.trim();
            parsed.push(match v {
                "0" => None,
                "1" => Some((1, 0)),
                "-1" => Some((2, 1)),
                _ => {
                    let body = v.strip_prefix("zeta[").ok_or_else(bad)?;
                    let (level, tail) = body.split_once(']').ok_or_else(bad)?;
                    let level: u64 = level.parse().map_err(|_| bad())?;
                    let k: i64 = match tail.strip_prefix('^') {
                        Some(k) => k.parse().map_err(|_| bad())?,
                        None if tail.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    if level == 0 {
                        return Err(bad());
                    }
                    Some((level, k))
                }
            });
        }
        let order = parsed.iter().flatten().fold(1u64, |acc, &(l, _)| lcm(acc, l));
        let exps = parsed
            .into_iter()
            .map(|v| v.map(|(l, k)| (k * (order / l) as i64).rem_euclid(order as i64) as u64))
            .collect();
        let chi = Self::from_exponents(modulus, order, exps)?;
        chi.require_primitive()?;
        Ok(chi)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletCharacter({self})")
    }
}

/// Renders the `table:` specifier, which parses back to the same character.
impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .exps
            .iter()
            .map(|e| match e {
                None => "0".into(),
                Some(0) => "1".into(),
                Some(e) if 2 * e == self.order => "-1".into(),
                Some(e) => format!("zeta[{}]^{e}", self.order),
            })
            .collect();
        write!(f, "table:{}:{}", self.modulus, vals.join(","))
    }
}

/// Kronecker symbol `(a/n)` for `n >= 0`.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    assert!(n >= 0);
    if n == 0 {
        return i32::from(a.abs() == 1);
    }
    let mut n = n;
    let mut result = 1;
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= v;
    }
    result * jacobi(a.rem_euclid(n), n)
}

fn jacobi(mut a: i64, mut n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut result = 1;
    a %= n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Cyclic decomposition of `(Z/D)^*`: generators (lifted to residues mod `D`)
/// with their orders.
fn unit_group_generators(modulus: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, e) in factor(modulus) {
        let pe = p.pow(e);
        let local: Vec<(u64, u64)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pe - 1, 2), (5, pe / 4)],
            }
        } else {
            let phi = euler_phi(pe);
            let g = (2..pe)
                .find(|&g| multiplicative_order(g, pe) == Some(phi))
                .expect("odd prime powers have primitive roots");
            vec![(g, phi)]
        };
        let other = modulus / pe;
        for (g, ord) in local {
            // g mod p^e, 1 mod the cofactor
            let lifted = crt(g, pe, 1, other);
            gens.push((lifted, ord));
        }
    }
    gens
}

fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    let (_, x, _) = egcd(m as i64, n as i64);
    // solution = a + m * ((b - a) * m^-1 mod n)
    let t = ((b as i64 - a as i64) * x).rem_euclid(n as i64) as u64;
    (a + m * t) % (m * n)
}

fn multiplicative_order(g: u64, m: u64) -> Option<u64> {
    if gcd(g as i64, m as i64) != 1 {
        return None;
    }
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * g % m;
        k += 1;
    }
    Some(k)
}

/// Every primitive character mod `modulus`, each once, in lexicographic order
/// of their exponent vectors on the CRT generators.
pub fn enumerate_primitive_characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    if modulus < 2 || modulus > DEFAULT_MODULUS_BOUND {
        return Err(Error::OutOfRange(format!(
            "modulus {modulus} outside 2..={DEFAULT_MODULUS_BOUND}"
        )));
    }
    let gens = unit_group_generators(modulus);
    let exponent = gens.iter().fold(1u64, |acc, &(_, o)| lcm(acc, o));

    // discrete logs: unit -> exponent vector
    let mut logs: Vec<Option<Vec<u64>>> = vec![None; modulus as usize];
    let mut idx = vec![0u64; gens.len()];
    loop {
        let unit = gens
            .iter()
            .zip(&idx)
            .fold(1 % modulus, |acc, (&(g, _), &e)| acc * pow_mod(g, e, modulus) % modulus);
        logs[unit as usize] = Some(idx.clone());
        if !advance(&mut idx, gens.iter().map(|&(_, o)| o)) {
            break;
        }
    }

    let mut out = Vec::new();
    let mut params = vec![0u64; gens.len()];
    loop {
        let exps = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|v| {
                    v.iter()
                        .zip(&params)
                        .zip(&gens)
                        .map(|((&e, &j), &(_, o))| e * j * (exponent / o))
                        .sum::<u64>()
                        % exponent
                })
            })
            .collect();
        let chi = DirichletCharacter::from_exponents(modulus, exponent, exps)?;
        if chi.is_primitive() {
            out.push(chi);
        }
        if !advance(&mut params, gens.iter().map(|&(_, o)| o)) {
            break;
        }
    }
    Ok(out)
}

fn advance(idx: &mut [u64], bounds: impl Iterator<Item = u64>) -> bool {
    let bounds: Vec<u64> = bounds.collect();
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < bounds[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        let chi = DirichletCharacter::kronecker(-3).unwrap();
        assert_eq!(chi.value(1), ExactNumber::from_int(1));
        assert_eq!(chi.value(2), ExactNumber::from_int(-1));
        assert!(!chi.is_even());

        let chi = DirichletCharacter::kronecker(5).unwrap();
        assert_eq!(chi.value(2), ExactNumber::from_int(-1));
        assert_eq!(chi.value(4), ExactNumber::from_int(1));
        assert!(chi.is_even());

        let chi = DirichletCharacter::kronecker(8).unwrap();
        assert!(chi.is_even());
        assert_eq!(chi.value(3), ExactNumber::from_int(-1));
        assert_eq!(chi.value(5), ExactNumber::from_int(-1));
        assert_eq!(chi.value(7), ExactNumber::from_int(1));
    }

    #[test]
    fn kronecker_rejects_imprimitive() {
        assert_eq!(
            DirichletCharacter::kronecker(9),
            Err(Error::NotPrimitive { modulus: 9, conductor: 1 })
        );
        assert!(matches!(
            DirichletCharacter::kronecker(3),
            Err(Error::InvalidCharacter(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_primitive_characters(3).unwrap().len(), 1);
        let five = enumerate_primitive_characters(5).unwrap();
        assert_eq!(five.len(), 3);
        let mut orders: Vec<u64> = five.iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 4, 4]);
        let four = enumerate_primitive_characters(4).unwrap();
        assert_eq!(four.len(), 1);
        assert!(!four[0].is_even());
        assert_eq!(enumerate_primitive_characters(7).unwrap().len(), 5);
        assert_eq!(enumerate_primitive_characters(8).unwrap().len(), 2);
        assert_eq!(enumerate_primitive_characters(12).unwrap().len(), 1);
        assert!(enumerate_primitive_characters(6).unwrap().is_empty());
    }

    #[test]
    fn gauss_sum_mod_three() {
        let chi = DirichletCharacter::kronecker(-3).unwrap();
        let tau = chi.gauss_sum();
        let expected = &ExactNumber::root_of_unity(3, 1) - &ExactNumber::root_of_unity(3, 2);
        assert_eq!(tau, expected);
        assert_eq!(&tau * &tau, ExactNumber::from_int(-3));
        for chi in enumerate_primitive_characters(5).unwrap() {
            assert!((&chi.conj_gauss_sum_inverse() * &chi.conj().gauss_sum()).is_one());
        }
    }

    #[test]
    fn imprimitive_gauss_sum_vanishes() {
        // the principal character mod 4 is imprimitive
        let chi = DirichletCharacter::from_exponents(4, 1, vec![None, Some(0), None, Some(0)]).unwrap();
        assert!(!chi.is_primitive());
        assert!(chi.gauss_sum().is_zero());
    }

    #[test]
    fn four_tuple_examples() {
        let chi = DirichletCharacter::kronecker(-3).unwrap();
        assert_eq!(chi.chi_four_tuple(1, 1, 1, 2).unwrap(), ExactNumber::from_int(-1));
        assert_eq!(chi.chi_four_tuple(1, 1, 2, 1).unwrap(), ExactNumber::from_int(1));
        assert_eq!(chi.chi_four_tuple(1, 2, 1, 1).unwrap(), ExactNumber::from_int(1));
        assert_eq!(chi.chi_four_tuple(2, 1, 1, 1).unwrap(), ExactNumber::from_int(-1));
        assert!(chi.chi_four_tuple(2, 2, 1, 1).is_err());
        assert!(chi.chi_four_tuple(1, 1, 1, 1).is_err());
    }

    #[test]
    fn spec_round_trip() {
        for chi in enumerate_primitive_characters(7).unwrap() {
            let back: DirichletCharacter = chi.to_string().parse().unwrap();
            assert_eq!(back, chi);
        }
        let chi: DirichletCharacter = "table:5:0,1,zeta[4]^1,zeta[4]^3,-1".parse().unwrap();
        assert_eq!(chi.order(), 4);
        assert!(matches!(
            "table:4:0,1,0,1".parse::<DirichletCharacter>(),
            Err(Error::NotPrimitive { .. })
        ));
        assert!("kronecker:x".parse::<DirichletCharacter>().is_err());
    }
}
