//! Exact dense linear algebra over ℤ, ℤ[i], ℚ and ℚ(i).

pub mod fraction_free;
mod field;
mod matrix;
mod rat;
pub mod sigma;

pub use field::{inverse as field_inverse, nullspace, rank, solve_left, solve_particular};
pub use matrix::Matrix;
pub use rat::{gauss_mul_dyadic, to_gauss, DyadicComplexMatrix, RatMatrix};

use crate::error::Result;
use crate::poly::Polynomial;
use crate::scalar::{ExactDiv, GaussInt, Integer, Modulus, Rational};

pub type IntMatrix = Matrix<Integer>;
pub type GaussMatrix = Matrix<GaussInt>;

/// Exact inverse of a rational matrix (alias kept for the operation name used in reports).
pub fn exact_inverse(a: &RatMatrix) -> Result<RatMatrix> {
    a.inverse()
}

/// `det(xI − A)` by Faddeev–LeVerrier; every division is exact over ℤ or ℤ[i].
pub fn char_poly<T: ExactDiv>(a: &Matrix<T>) -> Result<Polynomial<T>> {
    a.ensure_square()?;
    let n = a.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = a.mul(&m)?;
        for i in 0..n {
            let v = next.get(i, i).add_ref(&coeffs[n - k + 1]);
            next.set(i, i, v);
        }
        m = next;
        let t = a.mul(&m)?.trace();
        coeffs[n - k] = t.neg_ref().div_exact_ref(&T::from_i64(k as i64));
    }
    Ok(Polynomial::new(coeffs))
}

/// `‖M‖_max = max |m_ij|` as an exact modulus.
pub fn max_norm(m: &GaussMatrix) -> Modulus {
    let sq = m.iter().map(GaussInt::norm).max().unwrap_or_default();
    Modulus::from_sq(Rational::from(sq))
}

/// Certified `(lower, upper)` bounds on the operator 2-norm:
/// `‖M‖_max ≤ ‖M‖ ≤ √(rows·cols)·‖M‖_max` (that is, `n·‖M‖_max` for square `M`).
pub fn op_norm_bounds(m: &GaussMatrix) -> (Modulus, Modulus) {
    let lo = max_norm(m);
    let hi = Modulus::from_sq(Rational::from(&lo.sq * (m.rows() * m.cols()) as u64));
    (lo, hi)
}

/// `(lower, upper)` operator-norm bounds of a rational matrix.
pub fn op_norm_bounds_rat(m: &RatMatrix) -> (Modulus, Modulus) {
    let (lo, hi) = op_norm_bounds(&m.num);
    let d2 = Rational::from(m.den.square_ref());
    (
        Modulus::from_sq(Rational::from(&lo.sq / &d2)),
        Modulus::from_sq(Rational::from(&hi.sq / &d2)),
    )
}

/// Squared Frobenius norm.
pub fn frobenius_sq(m: &GaussMatrix) -> Integer {
    m.iter().map(GaussInt::norm).sum()
}

/// Largest column 2-norm, a certified lower bound on the operator norm.
pub fn max_column_norm(m: &GaussMatrix) -> Modulus {
    let best = (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| m.get(r, c).norm()).sum::<Integer>())
        .max()
        .unwrap_or_default();
    Modulus::from_sq(Rational::from(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    fn coeffs(p: &Polynomial<Integer>) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn char_poly_examples() {
        // column companion of x^2 - 3x + 2
        assert_eq!(coeffs(&char_poly(&int(&[&[0, -2], &[1, 3]])).unwrap()), vec![2, -3, 1]);
        assert_eq!(coeffs(&char_poly(&IntMatrix::zeros(3, 3)).unwrap()), vec![0, 0, 0, 1]);
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6, expanded by hand
        let d = int(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(coeffs(&char_poly(&d).unwrap()), vec![-6, 11, -6, 1]);
    }

    #[test]
    fn char_poly_gaussian() {
        let a = Matrix::from_rows(vec![
            vec![GaussInt::new(0, 1), GaussInt::zero()],
            vec![GaussInt::real(5), GaussInt::new(0, -1)],
        ])
        .unwrap();
        // (x - i)(x + i) = x^2 + 1
        let p = char_poly(&a).unwrap();
        assert_eq!(p.coeffs(), &[GaussInt::real(1), GaussInt::zero(), GaussInt::real(1)]);
    }

    #[test]
    fn norm_bounds() {
        let (lo, hi) = op_norm_bounds(&Matrix::identity(3));
        assert_eq!(lo.sq, 1);
        assert_eq!(hi.sq, 9);
        let (lo, hi) = op_norm_bounds(&GaussMatrix::zeros(2, 2));
        assert!(lo.is_zero() && hi.is_zero());
    }
}
