use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_field::{parse_rational, ExactPolynomial, QuadSurd};

/// Square rational matrix of dimension at most 3.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

pub const MAX_DIMENSION: usize = 3;

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::OutOfRange(format!("matrix dimension {n} not in 1..=3")));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix is not square".into()));
        }
        Ok(Self { rows })
    }

    /// Rows of `"p/q"` or integer strings.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Self { rows: (0..n).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    /// `v^T M` for a row vector over `Q(sqrt d)`.
    pub fn left_apply(&self, v: &[QuadSurd]) -> Vec<QuadSurd> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                (0..n).fold(QuadSurd::from_int(0), |acc, i| {
                    &acc + &(&v[i] * &QuadSurd::rational(self.rows[i][j].clone()))
                })
            })
            .collect()
    }

    /// `M v` for a column vector over `Q(sqrt d)`.
    pub fn apply(&self, v: &[QuadSurd]) -> Vec<QuadSurd> {
        self.transpose().left_apply(v)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix{:?}", self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

/// Monic `det(xI - M)` as ascending rational coefficients.
fn char_poly_rational(m: &RationalMatrix) -> Vec<BigRational> {
    let a = &m.rows;
    match m.dim() {
        1 => vec![-a[0][0].clone(), BigRational::one()],
        2 => {
            let tr = &a[0][0] + &a[1][1];
            let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
            vec![det, -tr, BigRational::one()]
        }
        _ => {
            let tr = &a[0][0] + &a[1][1] + &a[2][2];
            let minor = |i: usize, j: usize| &a[i][i] * &a[j][j] - &a[i][j] * &a[j][i];
            let minors = minor(0, 1) + minor(0, 2) + minor(1, 2);
            let det = &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
                - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
                + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
            vec![-det, minors, -tr, BigRational::one()]
        }
    }
}

pub fn char_poly(m: &RationalMatrix) -> ExactPolynomial {
    ExactPolynomial::from_rationals(&char_poly_rational(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenpair {
    pub eigenvalue: QuadSurd,
    /// Multiplicity as a root of the characteristic polynomial.
    pub multiplicity: usize,
    /// Left eigenvector: `v^T M = lambda v^T`. The coefficient vector of a
    /// Hecke eigenform in the `R_n` basis transforms this way.
    pub vector: Vec<QuadSurd>,
}

/// Eigenvalues with left eigenvectors, one entry per basis vector of each
/// eigenspace. Vectors are scaled to integral coordinates with no common
/// factor and a positive first nonzero coordinate.
pub fn eigen_decompose(m: &RationalMatrix) -> Result<Vec<Eigenpair>> {
    let roots = roots_with_multiplicity(&char_poly_rational(m))?;
    let mt = m.transpose();
    let n = m.dim();
    let mut out = Vec::new();
    for (lambda, mult) in roots {
        let shifted: Vec<Vec<QuadSurd>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = QuadSurd::rational(mt.rows[i][j].clone());
                        if i == j {
                            &e - &lambda
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let basis = nullspace(shifted);
        if basis.is_empty() {
            return Err(Error::SelfCheck(format!("no eigenvector for eigenvalue {lambda}")));
        }
        for v in basis {
            out.push(Eigenpair { eigenvalue: lambda.clone(), multiplicity: mult, vector: normalize_integral(v) });
        }
    }
    Ok(out)
}

fn nullspace(mut a: Vec<Vec<QuadSurd>>) -> Vec<Vec<QuadSurd>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![QuadSurd::from_int(0); cols];
            v[free] = QuadSurd::from_int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}

fn normalize_integral(v: Vec<QuadSurd>) -> Vec<QuadSurd> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").clone();
    let lead_inv = lead.inv().expect("nonzero");
    let v: Vec<QuadSurd> = v.iter().map(|x| x * &lead_inv).collect();
    let parts = || v.iter().flat_map(|x| [x.rational_part().clone(), x.surd_part().clone()]);
    let den = parts().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num_gcd = parts()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, z| acc.gcd(&z));
    let scale = QuadSurd::rational(BigRational::new(den, num_gcd));
    v.iter().map(|x| x * &scale).collect()
}

/// Exact roots of a monic rational polynomial of degree at most 3, which
/// must split into rational linear factors and at most one real quadratic.
fn roots_with_multiplicity(p: &[BigRational]) -> Result<Vec<(QuadSurd, usize)>> {
    let mut p = p.to_vec();
    let mut rational = Vec::new();
    while p.len() > 3 {
        let Some(r) = find_rational_root(&p) else {
            return Err(Error::UnsupportedFactorization(format!(
                "irreducible cubic factor {}",
                show_poly(&p)
            )));
        };
        p = deflate(&p, &r);
        rational.push(r);
    }
    let mut roots: Vec<QuadSurd> = rational.into_iter().map(QuadSurd::rational).collect();
    match p.len() {
        2 => roots.push(QuadSurd::rational(-p[0].clone())),
        3 => {
            let (b, c) = (&p[1], &p[0]);
            let disc = b * b - BigRational::from_integer(4.into()) * c;
            if disc.is_negative() {
                return Err(Error::UnsupportedFactorization(format!(
                    "quadratic factor {} has no real roots",
                    show_poly(&p)
                )));
            }
            let root = QuadSurd::sqrt_of(&(disc.numer() * disc.denom()));
            let root = &root * &QuadSurd::rational(BigRational::new(BigInt::one(), disc.denom().clone()));
            let half = QuadSurd::rational(BigRational::new(BigInt::one(), BigInt::from(2)));
            let minus_b = QuadSurd::rational(-b.clone());
            roots.push(&(&minus_b - &root) * &half);
            roots.push(&(&minus_b + &root) * &half);
        }
        _ => {}
    }
    let mut grouped: Vec<(QuadSurd, usize)> = Vec::new();
    for r in roots {
        match grouped.iter_mut().find(|(x, _)| *x == r) {
            Some(entry) => entry.1 += 1,
            None => grouped.push((r, 1)),
        }
    }
    grouped.sort_by(|x, y| x.0.to_f64().total_cmp(&y.0.to_f64()));
    Ok(grouped)
}

fn show_poly(p: &[BigRational]) -> String {
    ExactPolynomial::from_rationals(p).to_string()
}

/// Synthetic division by `x - r`.
fn deflate(p: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let d = p.len() - 1;
    let mut q = vec![BigRational::zero(); d];
    let mut carry = BigRational::zero();
    for i in (0..d).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Rational roots of a monic polynomial are `y / L` with `y` an integer root
/// of the monic integer polynomial `L^d p(y / L)`, where `L` clears all
/// denominators. Candidates come from numerical roots and are then checked
/// exactly.
fn find_rational_root(p: &[BigRational]) -> Option<BigRational> {
    let d = p.len() - 1;
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(i, c)| (c * BigRational::from_integer(l.pow((d - i) as u32))).to_integer())
        .collect();
    let qf: Vec<f64> = q.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    for z in durand_kerner(&qf) {
        let centre = BigInt::from(z.re.round() as i128);
        for delta in -2..=2 {
            let y = &centre + delta;
            let x = BigRational::new(y, l.clone());
            if eval(p, &x).is_zero() {
                return Some(x);
            }
        }
    }
    None
}

fn durand_kerner(monic_ascending: &[f64]) -> Vec<Complex64> {
    let d = monic_ascending.len() - 1;
    let bound = 1.0 + monic_ascending[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * bound.min(1e6)).collect();
    let eval = |x: Complex64| monic_ascending.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let denom = (0..d).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-3, 1e-3);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hecke3() -> RationalMatrix {
        RationalMatrix::parse(&[
            vec!["154348", "2478080", "3784704"],
            vec!["-11648", "-186388", "-279552"],
            vec!["1456", "22880", "31596"],
        ])
        .unwrap()
    }

    #[test]
    fn char_poly_of_three_by_three() {
        let expected = ExactPolynomial::from_rationals(&[
            BigRational::from_integer((-3348i64 * 3348 * 6252).into()),
            BigRational::from_integer((3348i64 * 3348 - 2 * 3348 * 6252).into()),
            BigRational::from_integer((-(6252i64 - 2 * 3348)).into()),
            BigRational::one(),
        ]);
        assert_eq!(char_poly(&hecke3()), expected);
        let id = RationalMatrix::identity(2).unwrap();
        assert_eq!(
            char_poly(&id),
            ExactPolynomial::from_rationals(&[BigRational::one(), BigRational::from_integer((-2).into()), BigRational::one()])
        );
    }

    #[test]
    fn repeated_eigenvalue_gives_plane() {
        let pairs = eigen_decompose(&hecke3()).unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs.iter().filter(|p| p.eigenvalue == QuadSurd::from_int(-3348)).count(), 2);
        let top = pairs.iter().find(|p| p.eigenvalue == QuadSurd::from_int(6252)).unwrap();
        let v: Vec<QuadSurd> = [7, 110, 168].iter().map(|&x| QuadSurd::from_int(x)).collect();
        assert_eq!(top.vector, v);
        for p in &pairs {
            let lhs = hecke3().left_apply(&p.vector);
            let rhs: Vec<QuadSurd> = p.vector.iter().map(|x| x * &p.eigenvalue).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn diagonal_gives_standard_basis() {
        let m = RationalMatrix::parse(&[vec!["2", "0"], vec!["0", "-5/3"]]).unwrap();
        let pairs = eigen_decompose(&m).unwrap();
        assert_eq!(pairs[0].eigenvalue, QuadSurd::rational(BigRational::new((-5).into(), 3.into())));
        assert_eq!(pairs[0].vector, vec![QuadSurd::from_int(0), QuadSurd::from_int(1)]);
        assert_eq!(pairs[1].vector, vec![QuadSurd::from_int(1), QuadSurd::from_int(0)]);
    }

    #[test]
    fn irreducible_cubic_is_rejected() {
        let m = RationalMatrix::parse(&[vec!["0", "0", "2"], vec!["1", "0", "0"], vec!["0", "1", "0"]]).unwrap();
        assert!(matches!(eigen_decompose(&m), Err(Error::UnsupportedFactorization(_))));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(RationalMatrix::parse(&[vec!["1", "2"]]).is_err());
        assert!(RationalMatrix::parse(&[vec!["1/0"]]).is_err());
    }
}
