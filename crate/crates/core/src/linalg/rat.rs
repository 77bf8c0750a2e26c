use super::{fraction_free, GaussMatrix, IntMatrix, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{
    Conj, DyadicComplex, GaussInt, GaussRat, Integer, Modulus, Rational, Ring,
};

/// Gaussian-rational matrix `num / den` with one shared positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub num: GaussMatrix,
    pub den: Integer,
}

impl RatMatrix {
    pub fn new(num: GaussMatrix, den: Integer) -> Result<Self> {
        if den.cmp0().is_le() {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        Ok(RatMatrix { num, den }.reduced())
    }

    pub fn from_gauss(num: GaussMatrix) -> Self {
        RatMatrix {
            num,
            den: Integer::from(1),
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix::from_gauss(to_gauss(m))
    }

    /// Common-denominator form of a Gaussian-rational matrix.
    pub fn from_entries(m: &Matrix<GaussRat>) -> Self {
        let mut den = Integer::from(1);
        for x in m.iter() {
            den.lcm_mut(&x.denom_lcm());
        }
        let num = m.map(|x| x.numer_over(&den));
        RatMatrix { num, den }.reduced()
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_gauss(Matrix::identity(n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::from_gauss(Matrix::zeros(rows, cols))
    }

    pub fn rows(&self) -> usize {
        self.num.rows()
    }

    pub fn cols(&self) -> usize {
        self.num.cols()
    }

    pub fn get(&self, r: usize, c: usize) -> GaussRat {
        GaussRat::from_parts(self.num.get(r, c), &self.den)
    }

    pub fn to_entries(&self) -> Matrix<GaussRat> {
        self.num.map(|x| GaussRat::from_parts(x, &self.den))
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn is_real(&self) -> bool {
        self.num.iter().all(GaussInt::is_real)
    }

    /// Divides out the gcd of the denominator and all numerator parts.
    pub fn reduced(mut self) -> Self {
        let mut g = self.den.clone();
        for x in self.num.iter() {
            if g == 1 {
                break;
            }
            g.gcd_mut(&x.re);
            g.gcd_mut(&x.im);
        }
        if g != 1 {
            self.num = self.num.map(|x| x.div_exact_int(&g));
            self.den = self.den.div_exact(&g);
        }
        self
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(RatMatrix {
            num: self.num.mul(&o.num)?,
            den: Integer::from(&self.den * &o.den),
        }
        .reduced())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let den = Integer::from(self.den.lcm_ref(&o.den));
        let a = self.num.scale(&GaussInt::real(Integer::from(&den / &self.den)));
        let b = o.num.scale(&GaussInt::real(Integer::from(&den / &o.den)));
        Ok(RatMatrix { num: a.add(&b)?, den }.reduced())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatMatrix {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn adjoint(&self) -> Self {
        RatMatrix {
            num: self.num.adjoint(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, k: &GaussRat) -> Self {
        let kd = k.denom_lcm();
        let kn = k.numer_over(&kd);
        RatMatrix {
            num: self.num.scale(&kn),
            den: Integer::from(&self.den * &kd),
        }
        .reduced()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_square()
            && self.num == Matrix::identity(self.rows()).scale(&GaussInt::real(self.den.clone()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.num.is_hermitian()
    }

    /// Exact inverse by fraction-free elimination on the numerator.
    pub fn inverse(&self) -> Result<Self> {
        Ok(self.inverse_unreduced()?.reduced())
    }

    /// The exact inverse without cancelling common factors, which is much cheaper
    /// for large entries when the result is only going to be rounded.
    pub fn inverse_unreduced(&self) -> Result<Self> {
        let (adj, d) = fraction_free::inverse_parts(&self.num)?;
        // (num/den)⁻¹ = den·adj/d; make the denominator a positive rational integer.
        let dn = d.norm();
        let num = adj.scale(&d.conj().mul_int(&self.den));
        Ok(RatMatrix { num, den: dn })
    }

    pub fn max_bits(&self) -> u32 {
        self.num.max_bits().max(self.den.significant_bits())
    }

    /// `‖M‖_max` as an exact modulus.
    pub fn max_norm(&self) -> Modulus {
        let m = super::max_norm(&self.num);
        Modulus::from_sq(m.sq / Rational::from(self.den.square_ref()))
    }

    /// Rounds every entry to the dyadic grid `2^-c` (ties to even).
    pub fn round_to(&self, c: u32) -> DyadicComplexMatrix {
        let num = self.num.map(|x| {
            let s = x.shl(c);
            GaussInt {
                re: crate::scalar::round_div(&s.re, &self.den),
                im: crate::scalar::round_div(&s.im, &self.den),
            }
        });
        DyadicComplexMatrix { num, exp: c }
    }

    /// The exact dyadic matrix when the denominator is a power of two.
    pub fn to_dyadic(&self) -> Option<DyadicComplexMatrix> {
        if !self.den.is_power_of_two() {
            return None;
        }
        Some(DyadicComplexMatrix {
            num: self.num.clone(),
            exp: self.den.significant_bits() - 1,
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        RatMatrix {
            num: self.num.select_cols(cols),
            den: self.den.clone(),
        }
        .reduced()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        RatMatrix {
            num: self.num.submatrix(r0, c0, rows, cols),
            den: self.den.clone(),
        }
        .reduced()
    }
}

/// Gaussian-dyadic matrix `num / 2^exp` with one shared exponent.
#[derive(Clone, Debug)]
pub struct DyadicComplexMatrix {
    pub num: GaussMatrix,
    pub exp: u32,
}

impl PartialEq for DyadicComplexMatrix {
    fn eq(&self, o: &Self) -> bool {
        if self.num.rows() != o.num.rows() || self.num.cols() != o.num.cols() {
            return false;
        }
        let e = self.exp.max(o.exp);
        self.num_at(e) == o.num_at(e)
    }
}

impl Eq for DyadicComplexMatrix {}

impl DyadicComplexMatrix {
    pub fn from_gauss(num: GaussMatrix, exp: u32) -> Self {
        DyadicComplexMatrix { num, exp }
    }

    pub fn identity(n: usize) -> Self {
        DyadicComplexMatrix::from_gauss(Matrix::identity(n), 0)
    }

    /// Common-exponent form of arbitrary dyadic entries.
    pub fn from_entries(m: &Matrix<DyadicComplex>) -> Self {
        let exp = m.iter().map(|x| x.exp).max().unwrap_or(0);
        DyadicComplexMatrix {
            num: m.map(|x| x.num_at(exp)),
            exp,
        }
    }

    pub fn rows(&self) -> usize {
        self.num.rows()
    }

    pub fn cols(&self) -> usize {
        self.num.cols()
    }

    pub fn get(&self, r: usize, c: usize) -> DyadicComplex {
        DyadicComplex::from_gauss(self.num.get(r, c).clone(), self.exp)
    }

    pub fn to_entries(&self) -> Matrix<DyadicComplex> {
        self.num.map(|x| DyadicComplex::from_gauss(x.clone(), self.exp))
    }

    pub fn num_at(&self, exp: u32) -> GaussMatrix {
        assert!(exp >= self.exp);
        let k = exp - self.exp;
        if k == 0 {
            self.num.clone()
        } else {
            self.num.map(|x| x.shl(k))
        }
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            num: self.num.clone(),
            den: Integer::from(Integer::u_pow_u(2, self.exp)),
        }
        .reduced()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(DyadicComplexMatrix {
            num: self.num.mul(&o.num)?,
            exp: self.exp + o.exp,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let e = self.exp.max(o.exp);
        Ok(DyadicComplexMatrix {
            num: self.num_at(e).add(&o.num_at(e))?,
            exp: e,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let e = self.exp.max(o.exp);
        Ok(DyadicComplexMatrix {
            num: self.num_at(e).sub(&o.num_at(e))?,
            exp: e,
        })
    }

    pub fn neg(&self) -> Self {
        DyadicComplexMatrix {
            num: self.num.neg(),
            exp: self.exp,
        }
    }

    pub fn adjoint(&self) -> Self {
        DyadicComplexMatrix {
            num: self.num.adjoint(),
            exp: self.exp,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn round_to(&self, c: u32) -> Self {
        if c >= self.exp {
            return DyadicComplexMatrix {
                num: self.num_at(c),
                exp: c,
            };
        }
        let k = self.exp - c;
        DyadicComplexMatrix {
            num: self.num.map(|x| GaussInt {
                re: crate::scalar::round_shift(&x.re, k),
                im: crate::scalar::round_shift(&x.im, k),
            }),
            exp: c,
        }
    }

    /// Same values with the smallest exponent that keeps every numerator integral.
    pub fn canonical(&self) -> Self {
        let tz = |x: &Integer| x.find_one(0).unwrap_or(u32::MAX);
        let k = self
            .num
            .iter()
            .map(|x| tz(&x.re).min(tz(&x.im)))
            .min()
            .unwrap_or(0)
            .min(self.exp);
        DyadicComplexMatrix {
            num: self.num.map(|x| GaussInt {
                re: Integer::from(&x.re >> k),
                im: Integer::from(&x.im >> k),
            }),
            exp: self.exp - k,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        DyadicComplexMatrix {
            num: self.num.select_cols(cols),
            exp: self.exp,
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        DyadicComplexMatrix {
            num: self.num.submatrix(r0, c0, rows, cols),
            exp: self.exp,
        }
    }

    pub fn max_norm(&self) -> Modulus {
        super::max_norm(&self.num).scale_pow2(-(self.exp as i64))
    }

    pub fn max_bits(&self) -> u32 {
        self.num.max_bits()
    }

    /// Cheap upper bound on `log₂ ‖M‖₂` from `‖M‖₂ ≤ √(rows·cols)·‖M‖_max`;
    /// `−∞` for the zero matrix.
    pub fn op_norm_log2_upper(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let dims = ((self.rows() * self.cols()) as f64).log2() / 2.0;
        self.max_bits() as f64 + 0.5 - self.exp as f64 + dims
    }

    /// `X` with `‖X − M⁻¹‖₂ ≤ 2^{-bits}`: an inverse of a truncated copy of `M`,
    /// refined by Newton–Schulz steps `X ← X + X·(I − M·X)`. The final residual
    /// `E = I − M·X` is exact, which certifies `‖X − M⁻¹‖ ≤ ‖X‖‖E‖/(1 − ‖E‖)`.
    pub fn inverse_within(&self, bits: u32) -> Result<Self> {
        self.num.ensure_square()?;
        let n = self.rows();
        let id = DyadicComplexMatrix::identity(n);
        let v_log = self.op_norm_log2_upper().max(0.0).ceil() as u32;
        let mut p = 64u32;
        let mut x = loop {
            let exact = p >= self.exp;
            let vt = self.round_to(p.min(self.exp));
            match vt.to_rat().inverse_unreduced() {
                Ok(inv) => {
                    let x = inv.round_to(p);
                    if id.sub(&vt.mul(&x)?)?.op_norm_log2_upper() <= -2.0 {
                        break x;
                    }
                }
                Err(Error::SingularMatrix) if !exact => {}
                Err(e) => return Err(e),
            }
            p = p
                .checked_mul(2)
                .ok_or_else(|| Error::Internal("no usable starting inverse".into()))?;
        };
        for _ in 0..64 {
            let x_log = x.op_norm_log2_upper().max(0.0).ceil() as u32;
            let target = bits + x_log + v_log + 16;
            let vt = self.round_to((x.exp + x_log + v_log + 8).min(self.exp));
            let mut e = id.sub(&vt.mul(&x)?)?;
            let mut e_log = e.op_norm_log2_upper();
            let done = |e_log: f64| e_log == f64::NEG_INFINITY || (e_log <= -1.0 && x_log as f64 + e_log + 1.0 <= -(bits as f64));
            if done(e_log) {
                e = id.sub(&self.mul(&x)?)?;
                e_log = e.op_norm_log2_upper();
                if done(e_log) {
                    return Ok(x);
                }
            }
            let acc = (-e_log).max(1.0) as u32;
            let next = (2 * acc + x_log + v_log + 8).min(target).max(x.exp + 1);
            let e = e.round_to(next + x_log + 8);
            x = x.add(&x.mul(&e)?)?.round_to(next);
        }
        Err(Error::Internal("Newton–Schulz inverse refinement did not converge".into()))
    }
}

/// Embeds an integer matrix into ℤ[i].
pub fn to_gauss(m: &IntMatrix) -> GaussMatrix {
    m.map(|x| GaussInt::real(x.clone()))
}

/// Left multiplication of a dyadic matrix by a Gaussian-integer matrix.
pub fn gauss_mul_dyadic(a: &GaussMatrix, b: &DyadicComplexMatrix) -> Result<DyadicComplexMatrix> {
    Ok(DyadicComplexMatrix {
        num: a.mul(&b.num)?,
        exp: b.exp,
    })
}

impl Matrix<GaussInt> {
    pub fn is_real(&self) -> bool {
        self.iter().all(GaussInt::is_real)
    }
}

impl<T: Ring + Conj> Matrix<T> {
    pub fn conj_entries(&self) -> Self {
        self.map(|x| x.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(rows: &[&[i64]]) -> GaussMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussInt::real(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn diagonal_inverse_has_common_denominator() {
        let a = RatMatrix::from_gauss(gi(&[&[2, 0], &[0, 4]]));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.den, 4);
        assert_eq!(inv.num, gi(&[&[2, 0], &[0, 1]]));
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(RatMatrix::identity(3).inverse().unwrap().is_identity());
    }

    #[test]
    fn complex_inverse() {
        let a = RatMatrix::new(
            Matrix::from_rows(vec![
                vec![GaussInt::new(1, 2), GaussInt::new(0, 1)],
                vec![GaussInt::new(3, 0), GaussInt::new(-1, 1)],
            ])
            .unwrap(),
            Integer::from(3),
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn dyadic_rounding_and_exponents() {
        let m = DyadicComplexMatrix::from_gauss(gi(&[&[3, 5]]), 2);
        let p = m.mul(&m.adjoint()).unwrap();
        assert_eq!(p.exp, 4);
        assert_eq!(p.get(0, 0), DyadicComplex::new(34, 0, 4));
        let r = m.round_to(1);
        assert_eq!(r.num, gi(&[&[2, 2]]));
        assert_eq!(m.canonical().exp, 2);
        let q = RatMatrix::from_gauss(gi(&[&[1]])).scale(&GaussRat::real(Rational::from((1, 3))));
        assert_eq!(q.round_to(2).num, gi(&[&[1]]));
    }

    fn max_abs_error(x: &DyadicComplexMatrix, exact: &RatMatrix) -> Rational {
        let d = x.to_rat().sub(exact).unwrap();
        d.to_entries().iter().map(|z| Rational::from(z.re.abs_ref()).max(Rational::from(z.im.abs_ref()))).max().unwrap()
    }

    #[test]
    fn newton_schulz_inverse_meets_bound() {
        // Hilbert-like matrix scaled to a dyadic grid: badly conditioned
        let n = 5;
        let h = Matrix::from_fn(n, n, |r, c| GaussInt::real(Integer::from(1u32 << 20) / (r + c + 1) as u32 + (r == c) as u32));
        let m = DyadicComplexMatrix::from_gauss(h, 20);
        let exact = m.to_rat().inverse().unwrap();
        for bits in [10, 100, 1000] {
            let x = m.inverse_within(bits).unwrap();
            // the 2-norm bound implies the same entrywise bound
            assert!(max_abs_error(&x, &exact) <= Rational::from((1, Integer::from(1) << bits)));
        }
        let c = DyadicComplexMatrix::from_gauss(
            Matrix::from_rows(vec![
                vec![GaussInt::new(3, 1), GaussInt::new(0, -2)],
                vec![GaussInt::new(1, 1), GaussInt::new(5, 0)],
            ])
            .unwrap(),
            3,
        );
        let x = c.inverse_within(200).unwrap();
        assert!(max_abs_error(&x, &c.to_rat().inverse().unwrap()) <= Rational::from((1, Integer::from(1) << 200)));
    }

    #[test]
    fn newton_schulz_reports_singular() {
        let m = DyadicComplexMatrix::from_gauss(gi(&[&[1, 2], &[2, 4]]), 1);
        assert!(matches!(m.inverse_within(64), Err(Error::SingularMatrix)));
    }
}
