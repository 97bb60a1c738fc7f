use crate::arith::{gcd, lcm};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// `(N, w, n, chi)`: level, weight minus two, index of `R_n`, and a primitive
/// character mod `D > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodContext {
    level: u64,
    w: u32,
    n: u32,
    chi: DirichletCharacter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonFlags {
    /// `N = 1`
    pub e1: bool,
    /// `gcd(N, D) = 1`
    pub e2: bool,
    /// `N | D`
    pub e3: bool,
}

impl PeriodContext {
    pub fn new(level: u64, w: i64, n: i64, chi: DirichletCharacter) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidContext(msg));
        if level < 1 {
            return bad("level must be positive".into());
        }
        if w <= 0 || w % 2 != 0 {
            return bad(format!("w = {w} must be even and positive"));
        }
        if n <= 0 || n >= w {
            return bad(format!("need 0 < n < w, got n = {n}, w = {w}"));
        }
        if chi.modulus() < 2 {
            return bad("character modulus must exceed 1".into());
        }
        if !chi.is_primitive() {
            return Err(Error::NotPrimitive {
                modulus: chi.modulus(),
                conductor: chi.conductor(),
            });
        }
        Ok(Self {
            level,
            w: w as u32,
            n: n as u32,
            chi,
        })
    }

    /// Same level, weight and character with another `n`.
    pub fn with_n(&self, n: i64) -> Result<Self> {
        Self::new(self.level, self.w as i64, n, self.chi.clone())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    /// The modular weight `w + 2`.
    pub fn weight(&self) -> u32 {
        self.w + 2
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `w - n`.
    pub fn n_tilde(&self) -> u32 {
        self.w - self.n
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// `D`, the modulus of the character.
    pub fn modulus(&self) -> u64 {
        self.chi.modulus()
    }

    /// Cyclotomic level holding `i`, the character values, `tau(chi)` and `sqrt(N)`.
    pub fn cyclotomic_level(&self) -> u64 {
        lcm(lcm(4, self.modulus()), lcm(4 * self.level, self.chi.order()))
    }

    pub fn epsilon(&self) -> EpsilonFlags {
        let (n, d) = (self.level, self.modulus());
        EpsilonFlags {
            e1: n == 1,
            e2: gcd(n as i64, d as i64) == 1,
            e3: d % n == 0,
        }
    }

    /// Whether `r_{m,chi}` survives symmetrization: `(-1)^{m+n+1} chi(-1) = 1`.
    pub fn parity_admits(&self, m: u32) -> bool {
        let sign = if (m + self.n + 1) % 2 == 0 { 1 } else { -1 };
        sign * self.chi.parity() == 1
    }
}
