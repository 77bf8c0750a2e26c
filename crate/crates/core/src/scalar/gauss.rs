use super::{BitLength, Conj, ExactDiv, Field, Ring};
use rug::{Integer, Rational};
use std::fmt;

/// Gaussian integer `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: Integer,
    pub im: Integer,
}

impl GaussInt {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Integer>) -> Self {
        GaussInt {
            re: re.into(),
            im: Integer::new(),
        }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Integer {
        Integer::from(self.re.square_ref()) + Integer::from(self.im.square_ref())
    }

    pub fn mul_int(&self, k: &Integer) -> Self {
        GaussInt {
            re: Integer::from(&self.re * k),
            im: Integer::from(&self.im * k),
        }
    }

    pub fn shl(&self, k: u32) -> Self {
        GaussInt {
            re: Integer::from(&self.re << k),
            im: Integer::from(&self.im << k),
        }
    }

    /// Exact division by a rational integer; panics in debug builds if inexact.
    pub fn div_exact_int(&self, k: &Integer) -> Self {
        debug_assert!(self.re.is_divisible(k) && self.im.is_divisible(k));
        GaussInt {
            re: Integer::from(self.re.div_exact_ref(k)),
            im: Integer::from(self.im.div_exact_ref(k)),
        }
    }

    /// Quotient if `other` divides `self` in ℤ[i].
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.cmp0().is_eq() {
            return None;
        }
        let p = self.mul_ref(&other.conj());
        if p.re.is_divisible(&n) && p.im.is_divisible(&n) {
            Some(p.div_exact_int(&n))
        } else {
            None
        }
    }

    /// gcd of the real and imaginary parts.
    pub fn int_content(&self) -> Integer {
        Integer::from(self.re.gcd_ref(&self.im))
    }

    pub fn to_rat(&self) -> GaussRat {
        GaussRat {
            re: Rational::from(self.re.clone()),
            im: Rational::from(self.im.clone()),
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{:+}i", self.re, self.im)
        }
    }
}

impl Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn one() -> Self {
        GaussInt::real(1)
    }
    fn from_i64(v: i64) -> Self {
        GaussInt::real(v)
    }
    fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussInt {
            re: Integer::from(&self.re + &o.re),
            im: Integer::from(&self.im + &o.im),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussInt {
            re: Integer::from(&self.re - &o.re),
            im: Integer::from(&self.im - &o.im),
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return GaussInt::real(Integer::from(&self.re * &o.re));
        }
        let rr = Integer::from(&self.re * &o.re);
        let ii = Integer::from(&self.im * &o.im);
        let ri = Integer::from(&self.re * &o.im);
        let ir = Integer::from(&self.im * &o.re);
        GaussInt {
            re: rr - ii,
            im: ri + ir,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussInt {
            re: Integer::from(-&self.re),
            im: Integer::from(-&self.im),
        }
    }
}

impl ExactDiv for GaussInt {
    fn div_exact_ref(&self, other: &Self) -> Self {
        if other.is_real() {
            return self.div_exact_int(&other.re);
        }
        let n = other.norm();
        assert!(n.cmp0().is_ne(), "division by zero");
        self.mul_ref(&other.conj()).div_exact_int(&n)
    }
}

impl Conj for GaussInt {
    fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: Integer::from(-&self.im),
        }
    }
}

impl BitLength for GaussInt {
    fn bit_length(&self) -> (u32, u32) {
        (self.re.significant_bits().max(self.im.significant_bits()), 1)
    }
}

/// Gaussian rational `re + i·im` with independent rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussRat {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        GaussRat {
            re: re.into(),
            im: Rational::new(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn norm(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }

    /// Least common denominator of both parts.
    pub fn denom_lcm(&self) -> Integer {
        Integer::from(self.re.denom().lcm_ref(self.im.denom()))
    }

    /// Numerator with respect to the given common denominator (which must be a multiple of
    /// both part denominators).
    pub fn numer_over(&self, den: &Integer) -> GaussInt {
        let part = |x: &Rational| Integer::from(den / x.denom()) * x.numer();
        GaussInt {
            re: part(&self.re),
            im: part(&self.im),
        }
    }

    pub fn from_parts(num: &GaussInt, den: &Integer) -> Self {
        GaussRat {
            re: Rational::from((num.re.clone(), den.clone())),
            im: Rational::from((num.im.clone(), den.clone())),
        }
    }

    pub fn mul_rat(&self, k: &Rational) -> Self {
        GaussRat {
            re: Rational::from(&self.re * k),
            im: Rational::from(&self.im * k),
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+({})i", self.re, self.im)
        }
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn one() -> Self {
        GaussRat::real(1)
    }
    fn from_i64(v: i64) -> Self {
        GaussRat::real(v)
    }
    fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: Rational::from(&self.re + &o.re),
            im: Rational::from(&self.im + &o.im),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: Rational::from(&self.re - &o.re),
            im: Rational::from(&self.im - &o.im),
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return GaussRat::real(Rational::from(&self.re * &o.re));
        }
        let rr = Rational::from(&self.re * &o.re);
        let ii = Rational::from(&self.im * &o.im);
        let ri = Rational::from(&self.re * &o.im);
        let ir = Rational::from(&self.im * &o.re);
        GaussRat {
            re: rr - ii,
            im: ri + ir,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat {
            re: Rational::from(-&self.re),
            im: Rational::from(-&self.im),
        }
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(GaussRat::real(Rational::from(self.re.recip_ref())));
        }
        let n = self.norm();
        Some(GaussRat {
            re: Rational::from(&self.re / &n),
            im: Rational::from(-&self.im) / &n,
        })
    }
}

impl Conj for GaussRat {
    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }
}

impl BitLength for GaussRat {
    fn bit_length(&self) -> (u32, u32) {
        let (a, b) = self.re.bit_length();
        let (c, d) = self.im.bit_length();
        (a.max(c), b.max(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussInt::i();
        assert_eq!(i.mul_ref(&i), GaussInt::real(-1));
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, -2);
        let p = a.mul_ref(&b);
        assert_eq!(p.div_exact_ref(&b), a);
        assert_eq!(p.checked_div(&a), Some(b));
        assert_eq!(GaussInt::new(1, 0).checked_div(&GaussInt::new(1, 1)), None);
    }

    #[test]
    fn rational_inverse() {
        let z = GaussRat::new(Rational::from((1, 2)), 3);
        let w = z.inv().unwrap();
        assert_eq!(z.mul_ref(&w), GaussRat::one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn common_denominator_round_trip() {
        let z = GaussRat::new(Rational::from((1, 6)), Rational::from((-3, 4)));
        let d = z.denom_lcm();
        assert_eq!(d, 12);
        let n = z.numer_over(&d);
        assert_eq!(GaussRat::from_parts(&n, &d), z);
    }
}
