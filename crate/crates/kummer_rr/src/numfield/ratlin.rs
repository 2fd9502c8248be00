use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Solves `A·x = b` exactly for each right-hand side, where `A` is square
/// and given by its columns.
pub fn solve_rational(
    columns: &[Vec<BigRational>],
    rhs: &[Vec<BigRational>],
) -> Result<Vec<Vec<BigRational>>> {
    let n = columns.len();
    if columns.iter().any(|c| c.len() != n) || rhs.iter().any(|b| b.len() != n) {
        return Err(Error::InvalidInput(
            "rational system has inconsistent shape".into(),
        ));
    }
    let width = n + rhs.len();
    // Augmented matrix, row-major.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.extend(rhs.iter().map(|b| b[r].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .filter(|&r| !m[r][c].is_zero())
            .min_by_key(|&r| m[r][c].numer().bits() + m[r][c].denom().bits())
            .ok_or_else(|| Error::Arithmetic("singular rational system".into()))?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for j in c..width {
            m[c][j] = &m[c][j] * &inv;
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..width {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &f * &pivot_row[j];
                }
            }
        }
    }
    Ok((0..rhs.len())
        .map(|k| (0..n).map(|r| m[r][n + k].clone()).collect())
        .collect())
}
