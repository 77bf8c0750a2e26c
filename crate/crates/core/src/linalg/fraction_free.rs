//! Fraction-free elimination over integral domains (ℤ and ℤ[i]).

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::ExactDiv;

/// Determinant by Bareiss elimination with first-nonzero row pivoting.
pub fn det<T: ExactDiv>(a: &Matrix<T>) -> Result<T> {
    a.ensure_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut m = a.clone();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            m.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let f = m.get(i, k).clone();
            for j in k + 1..n {
                let v = pivot
                    .mul_ref(m.get(i, j))
                    .sub_ref(&f.mul_ref(m.get(k, j)))
                    .div_exact_ref(&prev);
                m.set(i, j, v);
            }
            m.set(i, k, T::zero());
        }
        prev = pivot;
    }
    Ok(if negate { prev.neg_ref() } else { prev })
}

/// Leading principal minors `det(A[..k, ..k])` for k = 1..=n, stopping after the
/// first zero minor (later minors are not computed).
pub fn leading_principal_minors<T: ExactDiv>(a: &Matrix<T>) -> Result<Vec<T>> {
    a.ensure_square()?;
    let n = a.rows();
    let mut m = a.clone();
    let mut prev = T::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = m.get(k, k).clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            let f = m.get(i, k).clone();
            for j in k + 1..n {
                let v = pivot
                    .mul_ref(m.get(i, j))
                    .sub_ref(&f.mul_ref(m.get(k, j)))
                    .div_exact_ref(&prev);
                m.set(i, j, v);
            }
        }
        prev = pivot;
    }
    Ok(out)
}

/// Fraction-free Gauss–Jordan on `[A | I]`. Returns `(N, d)` with `A⁻¹ = N / d`
/// and `d = ±det A`.
pub fn inverse_parts<T: ExactDiv>(a: &Matrix<T>) -> Result<(Matrix<T>, T)> {
    a.ensure_square()?;
    let n = a.rows();
    let mut m = a.hstack(&Matrix::identity(n));
    let w = 2 * n;
    let mut prev = T::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !m.get(r, k).is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap_rows(p, k);
        let pivot = m.get(k, k).clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m.get(i, k).clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = pivot
                    .mul_ref(m.get(i, j))
                    .sub_ref(&f.mul_ref(m.get(k, j)))
                    .div_exact_ref(&prev);
                m.set(i, j, v);
            }
            m.set(i, k, T::zero());
        }
        prev = pivot;
    }
    // Rows 0..k-1 were scaled along with the rest, so the left block is prev·I.
    Ok((m.submatrix(0, n, n, n), prev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussInt, Integer, Ring};

    fn int(rows: &[&[i64]]) -> Matrix<Integer> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&int(&[&[2, 0], &[0, 4]])).unwrap(), 8);
        assert_eq!(det(&int(&[&[0, 1], &[1, 0]])).unwrap(), -1);
        assert_eq!(det(&int(&[&[1, 2], &[2, 4]])).unwrap(), 0);
        assert_eq!(det(&int(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).unwrap(), 4);
    }

    #[test]
    fn inverse_identity_check() {
        let a = int(&[&[0, 2, 1], &[3, -1, 4], &[1, 1, 1]]);
        let (nm, d) = inverse_parts(&a).unwrap();
        assert_eq!(a.mul(&nm).unwrap(), Matrix::identity(3).scale(&d));
        assert!(matches!(
            inverse_parts(&int(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn gaussian_inverse() {
        let g = |a, b| GaussInt::new(a, b);
        let a = Matrix::from_rows(vec![vec![g(1, 1), g(2, 0)], vec![g(0, -1), g(3, 2)]]).unwrap();
        let (nm, d) = inverse_parts(&a).unwrap();
        assert_eq!(a.mul(&nm).unwrap(), Matrix::identity(2).scale(&d));
        assert_eq!(d, det(&a).unwrap());
    }

    #[test]
    fn minors() {
        let a = int(&[&[2, 1], &[1, 2]]);
        let m = leading_principal_minors(&a).unwrap();
        assert_eq!(m, vec![Integer::from(2), Integer::from(3)]);
        let z = int(&[&[0, 1], &[1, 0]]);
        assert_eq!(leading_principal_minors(&z).unwrap(), vec![Integer::zero()]);
    }
}
