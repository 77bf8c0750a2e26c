use super::{round_shift, BitLength, Conj, GaussInt, GaussRat, Ring};
use rug::{Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// `num / 2^exp`. The exponent is kept as given; equality compares values.
#[derive(Clone, Debug, Default)]
pub struct Dyadic {
    pub num: Integer,
    pub exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<Integer>, exp: u32) -> Self {
        Dyadic {
            num: num.into(),
            exp,
        }
    }

    pub fn from_int(v: impl Into<Integer>) -> Self {
        Dyadic::new(v, 0)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from((self.num.clone(), Integer::from(Integer::u_pow_u(2, self.exp))))
    }

    /// Numerator at a larger exponent (exact).
    pub fn num_at(&self, exp: u32) -> Integer {
        assert!(exp >= self.exp);
        Integer::from(&self.num << (exp - self.exp))
    }

    /// Same value with an odd numerator (or zero numerator and exponent 0).
    pub fn canonical(&self) -> Self {
        if self.num.cmp0().is_eq() {
            return Dyadic::default();
        }
        let tz = self.num.find_one(0).unwrap_or(0).min(self.exp);
        Dyadic::new(Integer::from(&self.num >> tz), self.exp - tz)
    }

    /// Rounds to exponent `c` (ties to even); exact when `c >= exp`.
    pub fn round_to(&self, c: u32) -> Self {
        if c >= self.exp {
            Dyadic::new(self.num_at(c), c)
        } else {
            Dyadic::new(round_shift(&self.num, self.exp - c), c)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = self.exp.max(o.exp);
        Dyadic::new(self.num_at(e) + o.num_at(e), e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e = self.exp.max(o.exp);
        Dyadic::new(self.num_at(e) - o.num_at(e), e)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dyadic::new(Integer::from(&self.num * &o.num), self.exp + o.exp)
    }

    pub fn neg(&self) -> Self {
        Dyadic::new(Integer::from(-&self.num), self.exp)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let e = self.exp.max(o.exp);
        self.num_at(e).cmp(&o.num_at(e))
    }
}

impl BitLength for Dyadic {
    fn bit_length(&self) -> (u32, u32) {
        let c = self.canonical();
        (c.num.significant_bits(), c.exp + 1)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

/// `(re + i·im) / 2^exp`: a Gaussian dyadic with one shared exponent.
#[derive(Clone, Debug, Default)]
pub struct DyadicComplex {
    pub re: Integer,
    pub im: Integer,
    pub exp: u32,
}

impl DyadicComplex {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>, exp: u32) -> Self {
        DyadicComplex {
            re: re.into(),
            im: im.into(),
            exp,
        }
    }

    pub fn from_gauss(num: GaussInt, exp: u32) -> Self {
        DyadicComplex {
            re: num.re,
            im: num.im,
            exp,
        }
    }

    pub fn from_int(v: impl Into<Integer>) -> Self {
        DyadicComplex::new(v, 0, 0)
    }

    pub fn i() -> Self {
        DyadicComplex::new(0, 1, 0)
    }

    pub fn num(&self) -> GaussInt {
        GaussInt {
            re: self.re.clone(),
            im: self.im.clone(),
        }
    }

    pub fn re_part(&self) -> Dyadic {
        Dyadic::new(self.re.clone(), self.exp)
    }

    pub fn im_part(&self) -> Dyadic {
        Dyadic::new(self.im.clone(), self.exp)
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn to_gauss_rat(&self) -> GaussRat {
        GaussRat::from_parts(&self.num(), &Integer::from(Integer::u_pow_u(2, self.exp)))
    }

    /// Numerator at a larger exponent (exact).
    pub fn num_at(&self, exp: u32) -> GaussInt {
        assert!(exp >= self.exp, "cannot raise exponent {} to {}", self.exp, exp);
        self.num().shl(exp - self.exp)
    }

    /// Same value, exponent reduced as far as possible.
    pub fn canonical(&self) -> Self {
        if self.re.cmp0().is_eq() && self.im.cmp0().is_eq() {
            return DyadicComplex::default();
        }
        let tz = |x: &Integer| x.find_one(0).unwrap_or(u32::MAX);
        let k = tz(&self.re).min(tz(&self.im)).min(self.exp);
        DyadicComplex::new(
            Integer::from(&self.re >> k),
            Integer::from(&self.im >> k),
            self.exp - k,
        )
    }

    /// Rounds each part to exponent `c` (ties to even); exact when `c >= exp`.
    pub fn round_to(&self, c: u32) -> Self {
        if c >= self.exp {
            DyadicComplex::from_gauss(self.num_at(c), c)
        } else {
            let k = self.exp - c;
            DyadicComplex::new(round_shift(&self.re, k), round_shift(&self.im, k), c)
        }
    }

    /// `|z|²` as a dyadic with exponent `2·exp`.
    pub fn abs_squared(&self) -> Dyadic {
        Dyadic::new(self.num().norm(), 2 * self.exp)
    }

    /// Orders by real part, then imaginary part.
    pub fn cmp_re_im(&self, o: &Self) -> Ordering {
        let e = self.exp.max(o.exp);
        let a = self.num_at(e);
        let b = o.num_at(e);
        a.re.cmp(&b.re).then(a.im.cmp(&b.im))
    }

    pub fn bit_size(&self) -> u32 {
        self.re.significant_bits().max(self.im.significant_bits())
    }
}

impl PartialEq for DyadicComplex {
    fn eq(&self, o: &Self) -> bool {
        let e = self.exp.max(o.exp);
        self.num_at(e) == o.num_at(e)
    }
}

impl Eq for DyadicComplex {}

impl Ring for DyadicComplex {
    fn zero() -> Self {
        DyadicComplex::default()
    }
    fn one() -> Self {
        DyadicComplex::from_int(1)
    }
    fn from_i64(v: i64) -> Self {
        DyadicComplex::from_int(v)
    }
    fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }
    fn add_ref(&self, o: &Self) -> Self {
        let e = self.exp.max(o.exp);
        DyadicComplex::from_gauss(self.num_at(e).add_ref(&o.num_at(e)), e)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let e = self.exp.max(o.exp);
        DyadicComplex::from_gauss(self.num_at(e).sub_ref(&o.num_at(e)), e)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        DyadicComplex::from_gauss(self.num().mul_ref(&o.num()), self.exp + o.exp)
    }
    fn neg_ref(&self) -> Self {
        DyadicComplex::new(Integer::from(-&self.re), Integer::from(-&self.im), self.exp)
    }
}

impl Conj for DyadicComplex {
    fn conj(&self) -> Self {
        DyadicComplex::new(self.re.clone(), Integer::from(-&self.im), self.exp)
    }
}

impl BitLength for DyadicComplex {
    fn bit_length(&self) -> (u32, u32) {
        let c = self.canonical();
        (c.bit_size(), c.exp + 1)
    }
}

impl fmt::Display for DyadicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)/2^{}", self.re, self.im, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        let z = DyadicComplex::new(5, -3, 4);
        assert_eq!(DyadicComplex::one().mul_ref(&z), z);
        assert_eq!(z.conj().conj(), z);
        let i = DyadicComplex::i();
        assert_eq!(i.mul_ref(&i), DyadicComplex::from_int(-1));
    }

    #[test]
    fn exponent_bookkeeping() {
        let x = DyadicComplex::new(1, 1, 3);
        let y = DyadicComplex::new(3, 0, 5);
        assert_eq!(x.mul_ref(&y).exp, 8);
        assert_eq!(x.add_ref(&y).exp, 5);
        assert_eq!(x.add_ref(&y).sub_ref(&y), x);
    }

    #[test]
    fn canonical_preserves_value() {
        let x = DyadicComplex::new(12, -4, 5);
        let c = x.canonical();
        assert_eq!(c.exp, 3);
        assert_eq!((c.re.to_i64(), c.im.to_i64()), (Some(3), Some(-1)));
        assert_eq!(c, x);
        let d = Dyadic::new(8, 2).canonical();
        assert_eq!((d.num.to_i64(), d.exp), (Some(2), 0));
        assert_eq!(Dyadic::new(1, 10).bit_length(), (1, 11));
    }

    #[test]
    fn round_to_is_within_half_ulp() {
        let x = DyadicComplex::new(1000003, -777777, 20);
        let r = x.round_to(7);
        assert_eq!(r.exp, 7);
        let err = Rational::from(&x.to_gauss_rat().re - &r.to_gauss_rat().re).abs();
        assert!(err <= Rational::from((1, 256)));
        assert_eq!(x.round_to(30), x);
    }

    #[test]
    fn ordering() {
        let a = DyadicComplex::new(1, 5, 1);
        let b = DyadicComplex::new(1, -5, 0);
        assert_eq!(a.cmp_re_im(&b), Ordering::Less);
        assert_eq!(b.conj().cmp_re_im(&DyadicComplex::new(2, 10, 1)), Ordering::Equal);
    }
}
