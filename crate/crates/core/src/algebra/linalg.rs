//! Gaussian elimination over exact fields.

use super::traits::Coeff;
use crate::error::Result;

/// Rank of the matrix whose rows are `rows`.
///
/// Pivots must be invertible; over a ring with zero divisors the inversion
/// error is returned rather than a wrong rank.
pub fn rank<T: Coeff>(rows: &[Vec<T>]) -> Result<usize> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| col < m[i].len() && !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].try_inv()?;
        let pivot_row: Vec<T> = m[r].iter().map(|x| x.times(&inv)).collect();
        for i in r + 1..m.len() {
            if col >= m[i].len() || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..pivot_row.len().min(m[i].len()) {
                if !pivot_row[j].is_zero() {
                    m[i][j] = m[i][j].minus(&factor.times(&pivot_row[j]));
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    Ok(r)
}

/// Solves `a x = b` for square nonsingular `a`; `None` if `a` is singular.
pub fn solve<T: Coeff>(a: &[Vec<T>], b: &[T]) -> Result<Option<Vec<T>>> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(col, piv);
        let inv = m[col][col].try_inv()?;
        for j in col..=n {
            m[col][j] = m[col][j].times(&inv);
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..=n {
                if !m[col][j].is_zero() {
                    m[i][j] = m[i][j].minus(&factor.times(&m[col][j]));
                }
            }
        }
    }
    Ok(Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Poly, RatFunc};

    #[test]
    fn rank_and_solve_over_rational_functions() {
        let f = Field::new(3, 1).unwrap();
        let t = RatFunc::from_poly(Poly::theta(f));
        let one = RatFunc::one(f);
        let rows = vec![
            vec![one.clone(), t.clone()],
            vec![t.clone(), &t * &t],
            vec![one.clone(), one.clone()],
        ];
        assert_eq!(rank(&rows).unwrap(), 2);
        assert_eq!(rank(&rows[..2]).unwrap(), 1);
        let a = vec![rows[0].clone(), rows[2].clone()];
        let x = solve(&a, &[one.clone(), RatFunc::zero(f)]).unwrap().unwrap();
        assert_eq!(&x[0] + &(&t * &x[1]), one);
        assert!(x[0] == -&x[1]);
        assert!(solve(&rows[..2], &[one.clone(), one]).unwrap().is_none());
    }
}
