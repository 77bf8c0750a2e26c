use super::{log2_lower, log2_upper, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// A nonnegative real known exactly through its square, e.g. `|z|` for a
/// Gaussian rational `z` or a max-norm of a complex matrix.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Modulus {
    pub sq: Rational,
}

impl Modulus {
    pub fn from_sq(sq: Rational) -> Self {
        assert!(sq.cmp0().is_ge(), "negative square");
        Modulus { sq }
    }

    pub fn from_rational(x: &Rational) -> Self {
        Modulus::from_sq(Rational::from(x.square_ref()))
    }

    pub fn is_zero(&self) -> bool {
        self.sq.cmp0().is_eq()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Modulus::from_sq(Rational::from(&self.sq * &o.sq))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.mul(&Modulus::from_rational(k))
    }

    /// Multiplies by `2^e`.
    pub fn scale_pow2(&self, e: i64) -> Self {
        let mut sq = self.sq.clone();
        if e >= 0 {
            sq <<= (2 * e) as u32;
        } else {
            sq >>= (-2 * e) as u32;
        }
        Modulus { sq }
    }

    pub fn max(self, o: Self) -> Self {
        if o.sq > self.sq {
            o
        } else {
            self
        }
    }

    /// Upper bound on `log2` of the value; `None` for zero.
    pub fn log2_upper(&self) -> Option<f64> {
        (!self.is_zero()).then(|| log2_upper(&self.sq) / 2.0)
    }

    pub fn log2_lower(&self) -> Option<f64> {
        (!self.is_zero()).then(|| log2_lower(&self.sq) / 2.0)
    }

    /// Rational interval `[lo, hi]` around the square root with `lo² ≤ value² ≤ hi²`,
    /// both multiples of `2^-bits`.
    pub fn sqrt_bounds(&self, bits: u32) -> (Rational, Rational) {
        let scaled = Rational::from(&self.sq << (2 * bits));
        let fl = Integer::from(scaled.numer() / scaled.denom());
        let s = fl.sqrt();
        let lo = s.clone();
        let mut hi = s;
        while Integer::from(hi.square_ref()) < scaled {
            hi += 1;
        }
        let den = Integer::from(Integer::u_pow_u(2, bits));
        (
            Rational::from((lo, den.clone())),
            Rational::from((hi, den)),
        )
    }
}

impl PartialOrd for Modulus {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Modulus {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sq.cmp(&o.sq)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log2_upper() {
            None => write!(f, "0"),
            Some(l) => write!(f, "2^{l:.3}"),
        }
    }
}
