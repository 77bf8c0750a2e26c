//! Exact scalar types: big integers and rationals (GMP via `rug`), Gaussian
//! integers and rationals, dyadic rationals, and the `round_c` primitive.

mod dyadic;
mod gauss;
mod modulus;

pub use dyadic::{Dyadic, DyadicComplex};
pub use gauss::{GaussInt, GaussRat};
pub use modulus::Modulus;
pub use rug::{Integer, Rational};

use std::fmt::Debug;

/// Commutative ring operations used by the generic matrix and polynomial code.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Integral domains where exact division (when it is known to be exact) is available.
/// Fraction-free elimination only needs this.
pub trait ExactDiv: Ring {
    /// Divides assuming the quotient is exact. Panics on a zero divisor.
    fn div_exact_ref(&self, other: &Self) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv().expect("division by zero"))
    }
}

/// Complex conjugation; the identity on real types.
pub trait Conj {
    fn conj(&self) -> Self;
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn add_ref(&self, other: &Self) -> Self {
        Integer::from(self + other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Integer::from(self - other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Integer::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Integer::from(-self)
    }
}

impl ExactDiv for Integer {
    fn div_exact_ref(&self, other: &Self) -> Self {
        Integer::from(self.div_exact_ref(other))
    }
}

impl Conj for Integer {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn add_ref(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }
}

impl Conj for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Bit lengths of the canonical numerator and denominator.
pub trait BitLength {
    fn bit_length(&self) -> (u32, u32);
}

impl BitLength for Integer {
    fn bit_length(&self) -> (u32, u32) {
        (self.significant_bits(), 1)
    }
}

impl BitLength for Rational {
    fn bit_length(&self) -> (u32, u32) {
        (self.numer().significant_bits(), self.denom().significant_bits())
    }
}

/// Nearest integer to `n / d` (d > 0), ties to the even integer.
pub fn round_div(n: &Integer, d: &Integer) -> Integer {
    debug_assert!(d.cmp0().is_gt());
    let (mut q, r) = n.clone().div_rem_floor(d.clone());
    let twice = Integer::from(&r << 1);
    match twice.cmp(d) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q += 1;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    q
}

/// Nearest integer to `n / 2^k`, ties to even.
pub fn round_shift(n: &Integer, k: u32) -> Integer {
    if k == 0 {
        return n.clone();
    }
    let q = Integer::from(n >> k);
    let r = Integer::from(n - &Integer::from(&q << k));
    let half = Integer::from(Integer::u_pow_u(2, k - 1));
    match r.cmp(&half) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
        std::cmp::Ordering::Less => q,
    }
}

/// `round_c(x)`: the multiple of `2^{-c}` nearest to `x`, ties to even numerator.
pub fn round_c(x: &Rational, c: u32) -> Dyadic {
    let scaled = Integer::from(x.numer() << c);
    Dyadic::new(round_div(&scaled, x.denom()), c)
}

/// `ceil(log2(n))` for n >= 1.
pub fn ceil_log2(n: u64) -> u64 {
    assert!(n >= 1);
    64 - (n - 1).leading_zeros() as u64
}

/// `floor(log2 |x|)` for a nonzero integer.
pub fn floor_log2(x: &Integer) -> i64 {
    x.significant_bits() as i64 - 1
}

/// Upper bound on `log2(x)` for a positive rational, accurate to ~1e-9.
pub fn log2_upper(x: &Rational) -> f64 {
    log2_approx(x) + 1e-9
}

/// Lower bound on `log2(x)` for a positive rational, accurate to ~1e-9.
pub fn log2_lower(x: &Rational) -> f64 {
    log2_approx(x) - 1e-9
}

fn log2_approx(x: &Rational) -> f64 {
    assert!(x.cmp0().is_gt(), "log2 of a non-positive number");
    fn top(v: &Integer) -> (f64, i64) {
        let bits = v.significant_bits() as i64;
        let shift = (bits - 60).max(0);
        let m = Integer::from(v >> shift as u32).to_f64();
        (m, shift)
    }
    let (mn, sn) = top(x.numer());
    let (md, sd) = top(x.denom());
    mn.log2() - md.log2() + (sn - sd) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::DivRounding;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn round_c_examples() {
        assert_eq!(round_c(&q(1, 3), 1).to_rational(), q(1, 2));
        assert_eq!(round_c(&q(1, 3), 2).to_rational(), q(1, 4));
        assert_eq!(round_c(&q(3, 8), 3).to_rational(), q(3, 8));
        assert_eq!(round_c(&q(3, 8), 3).exp, 3);
    }

    #[test]
    fn round_c_ties_to_even() {
        // 1/2 at c = 0 sits between 0 and 1
        assert_eq!(round_c(&q(1, 2), 0).num, 0);
        assert_eq!(round_c(&q(3, 2), 0).num, 2);
        assert_eq!(round_c(&q(-1, 2), 0).num, 0);
        assert_eq!(round_c(&q(-3, 2), 0).num, -2);
        assert_eq!(round_shift(&Integer::from(6), 2), 2);
        assert_eq!(round_shift(&Integer::from(-6), 2), -2);
        assert_eq!(round_shift(&Integer::from(-7), 2), -2);
        assert_eq!(round_shift(&Integer::from(-5), 2), -1);
    }

    /// Brute-force oracle: scan every multiple of 2^-c near x.
    fn nearest_oracle(x: &Rational, c: u32) -> Integer {
        let scale = Integer::from(Integer::u_pow_u(2, c));
        let center = Integer::from(x.numer() * &scale).div_floor(x.denom().clone());
        let mut best: Option<(Rational, Integer)> = None;
        for delta in -2i64..=2 {
            let cand = Integer::from(&center + delta);
            let v = Rational::from((cand.clone(), scale.clone()));
            let dist = Rational::from(x - &v).abs();
            best = match best {
                None => Some((dist, cand)),
                Some((bd, bc)) => {
                    if dist < bd || (dist == bd && cand.is_even()) {
                        Some((dist, cand))
                    } else {
                        Some((bd, bc))
                    }
                }
            };
        }
        best.unwrap().1
    }

    #[test]
    fn round_c_matches_exhaustive_oracle() {
        for n in -40..=40 {
            for d in 1..=12 {
                for c in 0..5 {
                    let x = q(n, d);
                    let r = round_c(&x, c);
                    assert_eq!(r.num, nearest_oracle(&x, c), "x={x} c={c}");
                    let err = Rational::from(&x - &r.to_rational()).abs();
                    assert!(err <= Rational::from((1, Integer::from(Integer::u_pow_u(2, c)))));
                }
            }
        }
    }

    #[test]
    fn bit_lengths() {
        assert_eq!(Integer::from(0).bit_length(), (0, 1));
        assert_eq!(Integer::from(255).bit_length(), (8, 1));
        assert_eq!(q(1, 1024).bit_length(), (1, 11));
        assert_eq!(Rational::new().bit_length(), (0, 1));
    }

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
        assert!((log2_upper(&q(1, 8)) + 3.0).abs() < 1e-6);
        let big = Rational::from(Integer::from(Integer::u_pow_u(2, 5000)));
        assert!((log2_lower(&big) - 5000.0).abs() < 1e-6);
    }
}
