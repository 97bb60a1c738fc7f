//! Dense exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// Solves `matrix * x = rhs` for a system with full column rank (possibly
/// overdetermined). Returns `None` when the system is inconsistent or the
/// columns are dependent.
pub fn solve(mut matrix: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = matrix[pivot_row][col].recip();
        for c in col..cols {
            matrix[pivot_row][c] *= &inv;
        }
        rhs[pivot_row] *= &inv;
        for r in 0..rows {
            if r == pivot_row || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..cols {
                let t = &factor * &matrix[pivot_row][c];
                matrix[r][c] -= t;
            }
            let t = &factor * &rhs[pivot_row];
            rhs[r] -= t;
        }
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    rhs.truncate(cols);
    Some(rhs)
}
