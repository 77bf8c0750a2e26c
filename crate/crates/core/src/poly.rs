//! Dense univariate polynomials with exact coefficients (ascending order).

use crate::error::{Error, Result};
use crate::scalar::{BitLength, Conj, Field, GaussInt, GaussRat, Integer, Rational, Ring};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<Integer>;
pub type GaussPolynomial = Polynomial<GaussInt>;
pub type RatPolynomial = Polynomial<GaussRat>;

impl<T: fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Polynomial<T> {
    /// Builds from ascending coefficients, dropping zero leading terms.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Polynomial { coeffs: c }
    }

    /// `x − r`.
    pub fn linear_root(r: T) -> Self {
        Polynomial::new(vec![r.neg_ref(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&T::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Number of trailing zero coefficients (the multiplicity of the root 0).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k` (dropping the lowest k coefficients).
    pub fn shift_down(&self, k: usize) -> Self {
        Polynomial::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn product(polys: &[Self]) -> Self {
        polys.iter().fold(Polynomial::one(), |acc, p| acc.mul(p))
    }
}

impl<T: Ring + Conj> Polynomial<T> {
    /// Coefficient-wise conjugate.
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<T: Field> Polynomial<T> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient of an exact division.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero only if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(o);
        self.div_exact(&g).unwrap().mul(o).monic()
    }

    /// Yun's squarefree decomposition of a nonzero polynomial:
    /// monic `s_i` (pairwise coprime, squarefree) with `monic(f) = ∏ s_i^{m_i}`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).unwrap();
            let nc = d.div_exact(&a).unwrap();
            d = nc.sub(&nb.derivative());
            if a.deg() > 0 {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        let g = f.gcd(&f.derivative());
        f.div_exact(&g).unwrap()
    }

    /// Exponent of the largest power of `e` dividing `self` (e nonconstant, self nonzero).
    pub fn multiplicity_of(&self, e: &Self) -> usize {
        let mut k = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_rem(e);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }
}

/// Refines squarefree polynomials into pairwise coprime monic factors such that
/// each input is a product of some of them.
pub fn gcd_free_basis<T: Field>(polys: &[Polynomial<T>]) -> Vec<Polynomial<T>> {
    let mut basis: Vec<Polynomial<T>> = Vec::new();
    for p in polys {
        let mut f = p.monic();
        let mut next = Vec::with_capacity(basis.len() + 2);
        for g in basis {
            if f.deg() == 0 {
                next.push(g);
                continue;
            }
            let h = f.gcd(&g);
            if h.deg() == 0 {
                next.push(g);
                continue;
            }
            let rest = g.div_exact(&h).unwrap();
            if rest.deg() > 0 {
                next.push(rest);
            }
            f = f.div_exact(&h).unwrap();
            next.push(h);
        }
        if f.deg() > 0 {
            next.push(f);
        }
        basis = next;
    }
    basis
}

impl GaussPolynomial {
    pub fn to_field(&self) -> RatPolynomial {
        self.map(GaussInt::to_rat)
    }

    pub fn from_int(p: &IntPolynomial) -> Self {
        p.map(|c| GaussInt::real(c.clone()))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussInt::is_real)
    }

    /// Real-coefficient view, if all imaginary parts vanish.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        self.is_real().then(|| self.map(|c| c.re.clone()))
    }

    /// Max coefficient bit length.
    pub fn max_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.bit_length().0).max().unwrap_or(0)
    }

    /// Divides by the integer gcd of all coefficient parts and makes the leading
    /// coefficient's real part positive (or imaginary part, if the real part is 0).
    pub fn primitive(&self) -> Self {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(&c.re);
            g.gcd_mut(&c.im);
        }
        if g.cmp0().is_eq() {
            return self.clone();
        }
        let lc = self.leading().unwrap();
        let negative = lc.re.cmp0().is_lt() || (lc.re.cmp0().is_eq() && lc.im.cmp0().is_lt());
        if negative {
            g = -g;
        }
        self.map(|c| c.div_exact_int(&g))
    }

    /// `p(x)·p̄(x)`: an integer polynomial whose roots include the roots of `p`.
    pub fn norm_poly(&self) -> IntPolynomial {
        let prod = self.mul(&self.conj());
        debug_assert!(prod.is_real());
        prod.map(|c| c.re.clone())
    }
}

impl RatPolynomial {
    /// Clears denominators and content: a primitive Gaussian-integer multiple.
    pub fn to_primitive(&self) -> GaussPolynomial {
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            den.lcm_mut(&c.denom_lcm());
        }
        self.map(|c| c.numer_over(&den)).primitive()
    }

    /// Exact Gaussian-integer coefficients, if all coefficients are integral.
    pub fn to_gauss_int(&self) -> Option<GaussPolynomial> {
        if self
            .coeffs
            .iter()
            .all(|c| *c.re.denom() == 1 && *c.im.denom() == 1)
        {
            Some(self.map(|c| GaussInt::new(c.re.numer().clone(), c.im.numer().clone())))
        } else {
            None
        }
    }
}

impl IntPolynomial {
    pub fn max_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// `∏ (den·x − num)` over rational roots, scaled to a primitive integer polynomial.
    pub fn from_rational_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Polynomial::one(), |acc, r| {
            acc.mul(&Polynomial::new(vec![
                Integer::from(-r.numer()),
                r.denom().clone(),
            ]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = q(&[-1, 0, 1]);
        let (d, r) = p.div_rem(&q(&[-1, 1]));
        assert_eq!(d, q(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q(&[1, 1]).mul(&q(&[-1, 1])), p);
        assert_eq!(p.derivative(), q(&[0, 2]));
        assert_eq!(p.eval(&Rational::from(3)), 8);
        assert_eq!(q(&[0, 0, 5]).zero_root_multiplicity(), 2);
        assert_eq!(Polynomial::<Rational>::zero().degree(), None);
    }

    #[test]
    fn gcd_lcm() {
        let a = q(&[2, -3, 1]); // (x-1)(x-2)
        let b = q(&[-3, 4, -1]); // -(x-1)(x-3)
        assert_eq!(a.gcd(&b), q(&[-1, 1]));
        assert_eq!(a.lcm(&b), q(&[-6, 11, -6, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 x
        let f = q(&[-1, 1]).pow(3).mul(&q(&[2, 1]).pow(2)).mul(&q(&[0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (q(&[0, 1]), 1));
        assert_eq!(dec[1], (q(&[2, 1]), 2));
        assert_eq!(dec[2], (q(&[-1, 1]), 3));
        let g = q(&[2, 1]).pow(2);
        assert_eq!(g.squarefree_decomposition(), vec![(q(&[2, 1]), 2)]);
        assert_eq!(f.squarefree_part(), q(&[0, 2, 1]).mul(&q(&[-1, 1])));
    }

    #[test]
    fn basis_refinement() {
        let a = q(&[2, -3, 1]); // (x-1)(x-2)
        let b = q(&[-3, 4, -1]); // (x-1)(x-3)
        let basis = gcd_free_basis(&[a.clone(), b.clone()]);
        assert_eq!(basis.len(), 3);
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                assert_eq!(x.gcd(y).deg(), 0);
            }
        }
        for p in [a, b] {
            let prod = Polynomial::product(
                &basis.iter().filter(|e| e.divides(&p)).cloned().collect::<Vec<_>>(),
            );
            assert_eq!(prod, p.monic());
        }
        assert_eq!(q(&[-1, 1]).pow(3).mul(&q(&[1, 1])).multiplicity_of(&q(&[-1, 1])), 3);
    }

    #[test]
    fn gaussian_helpers() {
        let p = GaussPolynomial::new(vec![GaussInt::new(2, 4), GaussInt::new(0, 0), GaussInt::new(-2, 0)]);
        let pr = p.primitive();
        assert_eq!(pr.coeffs()[0], GaussInt::new(-1, -2));
        assert_eq!(pr.leading().unwrap(), &GaussInt::real(1));
        // (x - i)·(x + i)
        let xi = GaussPolynomial::new(vec![GaussInt::new(0, -1), GaussInt::real(1)]);
        assert_eq!(xi.norm_poly(), IntPolynomial::from_i64(&[1, 0, 1]));
        let r = IntPolynomial::from_rational_roots(&[Rational::from((1, 2)), Rational::from(3)]);
        assert_eq!(r, IntPolynomial::from_i64(&[3, -7, 2]));
    }
}
