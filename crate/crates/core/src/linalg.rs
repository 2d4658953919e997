//! Dense exact linear algebra over Q.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigRational>>;

/// Row echelon reduction with full pivot search on columns. Returns the
/// determinant of a square matrix.
pub fn determinant(mut m: Matrix) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let (top, bottom) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(mut a: Matrix, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(piv, col);
        b.swap(piv, col);
        let pivot_row = a[col].clone();
        let pivot_rhs = b[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
            b[r] -= &factor * &pivot_rhs;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{int, rat};

    #[test]
    fn det_and_solve() {
        let m = vec![vec![int(2), int(1)], vec![int(4), int(3)]];
        assert_eq!(determinant(m.clone()), int(2));
        let x = solve(m, vec![int(3), int(7)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(s.clone()), int(0));
        assert_eq!(solve(s, vec![int(1), int(1)]), Err(Error::Singular));
        let p = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(p), int(-1));
        let h = vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 3)]];
        assert_eq!(determinant(h), rat(1, 6));
    }
}
