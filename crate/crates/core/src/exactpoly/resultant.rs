use num_traits::{One, Zero};

use super::UniPoly;
use crate::rational::{pow, Rational};

/// Determinant of the Sylvester matrix of `p` and `q`.
///
/// Constant arguments follow the usual conventions: `Res(p, c) = c^deg p`,
/// `Res(c, q) = c^deg q`; a zero argument gives zero.
pub fn sylvester_resultant(p: &UniPoly, q: &UniPoly) -> Rational {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Rational::zero();
    };
    if m == 0 {
        return pow(&p.leading(), n as u32);
    }
    if n == 0 {
        return pow(&q.leading(), m as u32);
    }
    determinant(sylvester_matrix(p, q))
}

pub fn sylvester_matrix(p: &UniPoly, q: &UniPoly) -> Vec<Vec<Rational>> {
    let m = p.deg();
    let n = q.deg();
    let size = m + n;
    let pd = p.descending();
    let qd = q.descending();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        row[i..i + m + 1].clone_from_slice(&pd);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        row[i..i + n + 1].clone_from_slice(&qd);
        rows.push(row);
    }
    rows
}

/// Gaussian elimination over the rationals.
pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}
