use crate::arith::gcd;

/// Positive `(a, c, k, l)` with `gcd(a, c) = 1`, `N | c` and `k a + l c = D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FareyQuadruple {
    pub a: i64,
    pub c: i64,
    pub k: i64,
    pub l: i64,
}

/// All quadruples for level `N` and modulus `D`, ordered by `(c, a, k)`.
pub fn enumerate_quadruples(level: u64, modulus: u64) -> Vec<FareyQuadruple> {
    let (n, d) = (level as i64, modulus as i64);
    let mut out = Vec::new();
    if n < 1 {
        return out;
    }
    for c in (n..d).step_by(n as usize) {
        for a in 1..d {
            if gcd(a, c) != 1 {
                continue;
            }
            let mut k = 1;
            while k * a < d {
                let rest = d - k * a;
                if rest % c == 0 {
                    out.push(FareyQuadruple { a, c, k, l: rest / c });
                }
                k += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, c: i64, k: i64, l: i64) -> FareyQuadruple {
        FareyQuadruple { a, c, k, l }
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            enumerate_quadruples(1, 3),
            vec![q(1, 1, 1, 2), q(1, 1, 2, 1), q(2, 1, 1, 1), q(1, 2, 1, 1)]
        );
        assert_eq!(enumerate_quadruples(1, 2), vec![q(1, 1, 1, 1)]);
        assert_eq!(enumerate_quadruples(2, 3), vec![q(1, 2, 1, 1)]);
        assert!(enumerate_quadruples(7, 3).is_empty());
    }
}
