//! Gaussian elimination over a field (ℚ or ℚ(i)).

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Reduced row echelon form; returns the pivot columns.
fn rref<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in c..cols {
            let v = m.get(r, j).mul_ref(&inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j).sub_ref(&f.mul_ref(m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of the right nullspace `{x : M x = 0}` as column vectors.
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, f).neg_ref();
            }
            v
        })
        .collect()
}

/// Some solution of `M x = b` (any shape), or `None` if inconsistent.
pub fn solve_particular<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = Matrix::from_fn(rows, cols + 1, |r, c| {
        if c < cols {
            m.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, cols).clone();
    }
    Some(x)
}

/// Solves the row system `x · M = b` for square invertible `M`.
pub fn solve_left<T: Field>(m: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    m.ensure_square()?;
    // x M = b  <=>  Mᵀ xᵀ = bᵀ
    let n = m.rows();
    let aug = Matrix::from_fn(n, n + 1, |r, c| {
        if c < n {
            m.get(c, r).clone()
        } else {
            b[r].clone()
        }
    });
    let mut red = aug;
    let pivots = rref(&mut red);
    if pivots.len() < n || pivots.contains(&n) {
        return Err(Error::SingularMatrix);
    }
    Ok((0..n).map(|i| red.get(i, n).clone()).collect())
}

/// Inverse over a field.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>> {
    m.ensure_square()?;
    let n = m.rows();
    let mut aug = m.hstack(&Matrix::identity(n));
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.submatrix(0, n, n, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn nullspace_and_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn left_solve_and_inverse() {
        let m = q(&[&[2, 1], &[1, 3]]);
        let b = vec![Rational::from(1), Rational::from(0)];
        let x = solve_left(&m, &b).unwrap();
        assert_eq!(m.vec_mul(&x), b);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inverse(&q(&[&[1, 1], &[1, 1]])).is_err());
    }
}
