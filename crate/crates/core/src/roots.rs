//! Certified polynomial roots and exact multiplicities.
//!
//! Roots of each squarefree factor are approximated with Aberth–Ehrlich
//! iteration in fixed-point big-integer arithmetic, with the precision doubled
//! until Weierstrass inclusion disks (radius `n·|p(z_i)| / |lc·∏(z_i − z_j)|`,
//! evaluated exactly) are pairwise disjoint and smaller than `2^{-b'-2}`.
//! Multiplicities come from the exact squarefree decomposition, so they never
//! depend on numerical clustering.

use crate::error::{Error, Result};
use crate::poly::{GaussPolynomial, IntPolynomial};
use crate::scalar::{ceil_log2, Conj, Dyadic, DyadicComplex, GaussInt, Integer, Rational, Ring};
use log::{debug, trace};
use rug::ops::{DivRounding, Pow};
use std::cmp::Ordering;

/// One distinct root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCluster {
    /// Approximation with exponent `b'`; `|value − z| < 2^{-b'}`.
    pub value: DyadicComplex,
    pub multiplicity: usize,
    /// Certified disk containing the true root and no other root.
    pub enclosure: RootDisk,
    /// The value is the root itself, not an approximation.
    pub exact: bool,
}

/// `{z : |z − center| ≤ radius}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDisk {
    pub center: DyadicComplex,
    pub radius: Dyadic,
}

impl RootDisk {
    fn point(z: DyadicComplex) -> Self {
        RootDisk {
            center: z,
            radius: Dyadic::default(),
        }
    }

    /// Certified lower bound on the distance between any point of `self` and any
    /// point of `other`; negative when the disks overlap.
    pub fn separation_lower(&self, other: &Self, bits: u32) -> Rational {
        let d = self.center.sub_ref(&other.center);
        let (lo, _) = crate::scalar::Modulus::from_sq(d.abs_squared().to_rational()).sqrt_bounds(bits);
        lo - self.radius.to_rational() - other.radius.to_rational()
    }
}

/// `2^{-(a·n + ⌈2n·log₂ n⌉)}`, a lower bound on the distance between distinct roots
/// of an integer polynomial of degree `n ≥ 2` with `a`-bit coefficients.
pub fn mahler_mingap_bound(p: &IntPolynomial) -> Result<Dyadic> {
    let n = p.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if n < 2 {
        return Err(Error::InvalidInput(
            "the minimum root gap needs degree at least 2".into(),
        ));
    }
    let a = p.max_bits().max(1) as u64;
    let e = a * n as u64 + ceil_2n_log2n(n as u64);
    Ok(Dyadic::new(1, u32::try_from(e).expect("exponent fits")))
}

fn ceil_2n_log2n(n: u64) -> u64 {
    ceil_n_log2n_times(n, 2)
}

/// `⌈k·n·log₂ n⌉`, computed from an upper bound on log₂ n by exact integer search.
fn ceil_n_log2n_times(n: u64, k: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    // smallest m with 2^m ≥ n^{k·n}
    let target = Integer::from(n).pow(u32::try_from(k * n).unwrap());
    let m = target.significant_bits() as u64;
    if target.is_power_of_two() {
        m - 1
    } else {
        m
    }
}

/// Cauchy-type bound `Σ|c_k| / |c_n|` on the modulus of every root.
pub fn root_bound(p: &IntPolynomial) -> Result<Rational> {
    let lc = p
        .leading()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let s: Integer = p.coeffs().iter().map(|c| Integer::from(c.abs_ref())).sum();
    Ok(Rational::from((s, Integer::from(lc.abs_ref()))))
}

/// Root bound for Gaussian coefficients: `Σ(|re|+|im|) / max(|re lc|, |im lc|)`.
pub fn root_bound_gauss(p: &GaussPolynomial) -> Result<Rational> {
    let lc = p
        .leading()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let s: Integer = p
        .coeffs()
        .iter()
        .map(|c| Integer::from(c.re.abs_ref()) + Integer::from(c.im.abs_ref()))
        .sum();
    let den = Integer::from(lc.re.abs_ref()).max(Integer::from(lc.im.abs_ref()));
    Ok(Rational::from((s, den)))
}

/// Working precision required for an integer polynomial: `a·n + ⌈4n·log₂ n⌉`.
pub fn required_bits(p: &IntPolynomial) -> u64 {
    let n = p.deg() as u64;
    if n < 2 {
        return 0;
    }
    p.max_bits().max(1) as u64 * n + ceil_n_log2n_times(n, 4)
}

/// Required precision for a Gaussian polynomial, measured on `p·p̄ ∈ ℤ[x]`
/// (whose distinct roots include those of `p`).
pub fn required_bits_gauss(p: &GaussPolynomial) -> u64 {
    if p.deg() < 2 {
        return 0;
    }
    match p.to_int() {
        Some(ip) => required_bits(&ip),
        None => required_bits(&p.norm_poly()),
    }
}

fn check_precondition(required: u64, b_prime: u32) -> Result<()> {
    if (b_prime as u64) < required {
        return Err(Error::Precondition(format!(
            "working precision b' = {b_prime} is below the required a·n + 4n·log n = {required}"
        )));
    }
    Ok(())
}

/// Certified roots with multiplicities of an integer polynomial (degree ≥ 1).
pub fn approx_roots_with_mults(p: &IntPolynomial, b_prime: u32) -> Result<Vec<RootCluster>> {
    approx_roots_with_mults_gauss(&GaussPolynomial::from_int(p), b_prime)
}

/// Certified roots with multiplicities of a Gaussian-integer polynomial.
pub fn approx_roots_with_mults_gauss(p: &GaussPolynomial, b_prime: u32) -> Result<Vec<RootCluster>> {
    let n = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if n == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    check_precondition(required_bits_gauss(p), b_prime)?;
    let mut out = Vec::new();
    let z = p.zero_root_multiplicity();
    if z > 0 {
        out.push(RootCluster {
            value: DyadicComplex::new(0, 0, b_prime),
            multiplicity: z,
            enclosure: RootDisk::point(DyadicComplex::default()),
            exact: true,
        });
    }
    let rest = p.shift_down(z);
    if rest.deg() > 0 {
        for (factor, mult) in rest.to_field().squarefree_decomposition() {
            let f = factor.to_primitive();
            for r in isolate_simple_roots(&f, b_prime)? {
                out.push(RootCluster {
                    value: r.value,
                    multiplicity: mult,
                    enclosure: r.disk,
                    exact: r.exact,
                });
            }
        }
    }
    out.sort_by(|a, b| a.value.cmp_re_im(&b.value));
    Ok(out)
}

/// A certified simple root.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub value: DyadicComplex,
    pub disk: RootDisk,
    pub exact: bool,
}

/// Roots of a squarefree Gaussian-integer polynomial to `2^{-b'}`, sorted by
/// (real, imaginary) part. Real-coefficient input yields exactly real values for
/// real roots and bit-identical conjugates for complex pairs.
pub fn isolate_simple_roots(f: &GaussPolynomial, b_prime: u32) -> Result<Vec<IsolatedRoot>> {
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![linear_root(f, b_prime)]);
    }
    let mut roots = AberthSolver::new(f, b_prime).solve()?;
    roots.sort_by(|a, b| a.value.cmp_re_im(&b.value));
    Ok(roots)
}

fn linear_root(f: &GaussPolynomial, b_prime: u32) -> IsolatedRoot {
    // root = −c0/c1
    let c0 = f.coeff(0).to_rat();
    let c1 = f.coeff(1).to_rat();
    let z = crate::scalar::Field::div_ref(&c0.neg_ref(), &c1);
    let den = z.denom_lcm();
    if den.is_power_of_two() {
        let e = den.significant_bits() - 1;
        let exact = DyadicComplex::from_gauss(z.numer_over(&den), e);
        return IsolatedRoot {
            value: exact.round_to(b_prime.max(e)).round_to(b_prime),
            disk: RootDisk::point(exact.clone()),
            exact: e <= b_prime,
        };
    }
    let fine = b_prime + 64;
    let center = round_gauss_rat(&z, fine);
    IsolatedRoot {
        value: round_gauss_rat(&z, b_prime),
        disk: RootDisk {
            center,
            radius: Dyadic::new(1, fine),
        },
        exact: false,
    }
}

fn round_gauss_rat(z: &crate::scalar::GaussRat, c: u32) -> DyadicComplex {
    let re = crate::scalar::round_c(&z.re, c);
    let im = crate::scalar::round_c(&z.im, c);
    DyadicComplex::new(re.num, im.num, c)
}

/// Complex fixed-point number `(re + i·im)·2^{-w}` at the solver's working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fix {
    re: Integer,
    im: Integer,
}

impl Fix {
    fn zero() -> Self {
        Fix {
            re: Integer::new(),
            im: Integer::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    fn add(&self, o: &Fix) -> Fix {
        Fix {
            re: Integer::from(&self.re + &o.re),
            im: Integer::from(&self.im + &o.im),
        }
    }

    fn sub(&self, o: &Fix) -> Fix {
        Fix {
            re: Integer::from(&self.re - &o.re),
            im: Integer::from(&self.im - &o.im),
        }
    }

    fn mul(&self, o: &Fix, w: u32) -> Fix {
        // three real products
        let rr = Integer::from(&self.re * &o.re);
        let ii = Integer::from(&self.im * &o.im);
        let cross = Integer::from(&self.re + &self.im) * Integer::from(&o.re + &o.im);
        let im = cross - &rr - &ii;
        Fix {
            re: (rr - ii) >> w,
            im: im >> w,
        }
    }

    /// `self / o`; `None` when `o` is zero.
    fn div(&self, o: &Fix, w: u32) -> Option<Fix> {
        let n = Integer::from(o.re.square_ref()) + Integer::from(o.im.square_ref());
        if n.cmp0().is_eq() {
            return None;
        }
        let re = Integer::from(&self.re * &o.re) + Integer::from(&self.im * &o.im);
        let im = Integer::from(&self.im * &o.re) - Integer::from(&self.re * &o.im);
        Some(Fix {
            re: (re << w).div_floor(n.clone()),
            im: (im << w).div_floor(n),
        })
    }

    fn bits(&self) -> u32 {
        self.re.significant_bits().max(self.im.significant_bits())
    }

    fn shr(&self, k: u32) -> Fix {
        Fix {
            re: Integer::from(&self.re >> k),
            im: Integer::from(&self.im >> k),
        }
    }

    fn shl(&self, k: u32) -> Fix {
        Fix {
            re: Integer::from(&self.re << k),
            im: Integer::from(&self.im << k),
        }
    }

    fn gauss(&self) -> GaussInt {
        GaussInt::new(self.re.clone(), self.im.clone())
    }
}

/// Perturbation applied when an Aberth step is undefined.
fn kick(w: u32) -> Fix {
    Fix {
        re: Integer::from(1) << (w / 2),
        im: Integer::from(1) << (w / 3),
    }
}

struct AberthSolver<'a> {
    f: &'a GaussPolynomial,
    df: GaussPolynomial,
    n: usize,
    b_prime: u32,
    real: bool,
}

struct Certificate {
    /// Upper bounds on the inclusion radii.
    radius: Vec<Dyadic>,
    /// `Some(true)` real root, `Some(false)` lower half of a conjugate pair (mirrors
    /// `partner`), `None` otherwise.
    kind: Vec<RootKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootKind {
    General,
    Real,
    /// Upper member of a conjugate pair, with the index of its partner.
    Upper(usize),
    Lower(usize),
}

impl<'a> AberthSolver<'a> {
    fn new(f: &'a GaussPolynomial, b_prime: u32) -> Self {
        AberthSolver {
            f,
            df: f.derivative(),
            n: f.deg(),
            b_prime,
            real: f.is_real(),
        }
    }

    fn solve(&self) -> Result<Vec<IsolatedRoot>> {
        let target = self.b_prime + 2 * ceil_log2(self.n as u64) as u32 + 24;
        let mut w = 64u32.min(target);
        let mut z = self.initial_points(w);
        let mut first = true;
        let max_w = target.saturating_mul(16).max(4096);
        loop {
            let cap = if first { 200 + 40 * self.n } else { 60 };
            // after a precision raise one sweep that halves the correction size is
            // enough; the next level or the strict retry below repairs the rest
            let relaxed = if first { w / 8 + 8 } else { w / 2 + 2 };
            first = false;
            self.iterate(&mut z, w, cap, relaxed);
            if w >= target {
                if let Some(cert) = self.certify(&z, w) {
                    return Ok(self.finish(&z, w, &cert));
                }
                self.iterate(&mut z, w, 60, w / 8 + 8);
                if let Some(cert) = self.certify(&z, w) {
                    return Ok(self.finish(&z, w, &cert));
                }
                debug!("certification failed at w = {w}; raising precision");
            }
            let next = if w < target {
                (w * 2).min(target)
            } else {
                w + w / 2
            };
            if next > max_w {
                return Err(Error::RootIsolation(format!(
                    "could not certify roots of a degree-{} polynomial below {} bits",
                    self.n, max_w
                )));
            }
            for zi in z.iter_mut() {
                *zi = zi.shl(next - w);
            }
            w = next;
        }
    }

    /// Points on a circle of radius ~2·(Fujiwara bound), rotated off the axes.
    fn initial_points(&self, w: u32) -> Vec<Fix> {
        let coeffs = self.f.coeffs();
        let lc = coeffs[self.n].norm();
        let lc_log = (lc.significant_bits() as f64) / 2.0;
        let mut r_log = f64::NEG_INFINITY;
        for (k, c) in coeffs.iter().enumerate().take(self.n) {
            if c.norm().cmp0().is_eq() {
                continue;
            }
            let cl = c.norm().significant_bits() as f64 / 2.0;
            r_log = r_log.max((cl - lc_log + 1.0) / (self.n - k) as f64);
        }
        if !r_log.is_finite() {
            r_log = 0.0;
        }
        let r_log = r_log + 1.0;
        // r = 2^r_log represented as m·2^{e} with a 30-bit mantissa
        let e = r_log.floor() as i64 - 30;
        let m = 2f64.powf(r_log - r_log.floor() + 30.0);
        (0..self.n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64 + 0.7;
                let re = (m * theta.cos()).round() as i64;
                let im = (m * theta.sin()).round() as i64;
                let shift = w as i64 + e;
                let conv = |v: i64| {
                    let v = Integer::from(v);
                    if shift >= 0 {
                        v << shift as u32
                    } else {
                        v >> (-shift) as u32
                    }
                };
                Fix {
                    re: conv(re),
                    im: conv(im),
                }
            })
            .collect()
    }

    fn eval_fix(&self, p: &GaussPolynomial, z: &Fix, w: u32) -> Fix {
        let mut acc = Fix::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z, w).add(&Fix {
                re: Integer::from(&c.re << w),
                im: Integer::from(&c.im << w),
            });
        }
        acc
    }

    /// `p'(z)` at scale `2^w`, evaluated only to the precision that a Newton
    /// quotient with numerator of `pv_bits` bits needs, unless `|p'(z)|` turns out
    /// to be small.
    fn eval_derivative(&self, z: &Fix, w: u32, pv_bits: u32) -> Fix {
        let zeta = (z.bits() as i64 - w as i64 + 1).max(0) as u32;
        let guard = zeta * self.n as u32 + 2 * ceil_log2(self.n as u64) as u32 + 64;
        let q = pv_bits.saturating_add(guard);
        if q < w {
            let drop = w - q;
            let dv = self.eval_fix(&self.df, &z.shr(drop), q);
            if dv.bits() > q.saturating_sub(16) {
                return dv.shl(drop);
            }
        }
        self.eval_fix(&self.df, z, w)
    }

    /// Smallest bit length of `z_i − z_j` over `j ≠ i` (0 on a collision).
    fn min_gap_bits(&self, z: &[Fix], i: usize) -> u32 {
        (0..self.n)
            .filter(|&j| j != i)
            .map(|j| z[i].sub(&z[j]).bits())
            .min()
            .unwrap_or(u32::MAX)
    }

    /// `Σ_{j≠i} 1/(z_i − z_j)`, each term only as precise as a Newton correction
    /// of `newton_bits` bits can use: the product with the correction must be
    /// accurate to `2^{-w}`, and `1/d` loses `2·lg(1/|d|)` bits to truncation of `d`.
    /// `None` when two approximations coincide.
    fn aberth_sum(&self, z: &[Fix], i: usize, w: u32, newton_bits: u32) -> Option<Fix> {
        let mut s = Fix::zero();
        for (j, zj) in z.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = z[i].sub(zj);
            let lost = 2 * w.saturating_sub(d.bits());
            let need = newton_bits.saturating_add(lost).saturating_add(32).min(w);
            let drop = w - need;
            let one = Fix {
                re: Integer::from(1) << need,
                im: Integer::new(),
            };
            let t = one.div(&d.shr(drop), need)?;
            s = s.add(&t.shl(drop));
        }
        Some(s)
    }

    /// Gauss–Seidel Aberth sweeps until corrections stall or drop to `floor_bits`.
    fn iterate(&self, z: &mut [Fix], w: u32, cap: usize, floor_bits: u32) {
        let mut best = u32::MAX;
        let mut stall = 0;
        let one = Fix {
            re: Integer::from(1) << w,
            im: Integer::new(),
        };
        for it in 0..cap {
            let mut worst = 0u32;
            for i in 0..self.n {
                let pv = self.eval_fix(self.f, &z[i], w);
                if pv.is_zero() {
                    continue;
                }
                let dv = self.eval_derivative(&z[i], w, pv.bits());
                let step = match pv.div(&dv, w) {
                    // near convergence |N·S| ≤ (n−1)·2^{bits(N) − bits(d_min) + 1} only
                    // moves the step by a few units of 2^{-w}; plain Newton is enough
                    Some(newton) if 2 * newton.bits() + ceil_log2(self.n as u64) as u32 + 2 <= self.min_gap_bits(z, i) + 16 => newton,
                    Some(newton) => match self.aberth_sum(z, i, w, newton.bits()) {
                        Some(s) => {
                            let denom = one.sub(&newton.mul(&s, w));
                            newton.div(&denom, w).unwrap_or(newton)
                        }
                        None => kick(w),
                    },
                    None => kick(w),
                };
                worst = worst.max(step.bits());
                z[i] = z[i].sub(&step);
            }
            trace!("aberth w={w} it={it} correction bits={worst}");
            if worst <= floor_bits {
                break;
            }
            if worst < best {
                best = worst;
                stall = 0;
            } else {
                stall += 1;
                if stall >= 4 {
                    break;
                }
            }
        }
    }

    /// Exact inclusion-disk check. `None` if the current approximations are not
    /// yet good enough.
    fn certify(&self, z: &[Fix], w: u32) -> Option<Certificate> {
        let n = self.n;
        let zs: Vec<GaussInt> = z.iter().map(Fix::gauss).collect();
        let lc_norm = self.f.coeffs()[n].norm();
        // separation threshold: |z_i − z_j|² > 2^{2w − 2b' − 2}
        let sep_exp = 2 * w as i64 - 2 * self.b_prime as i64 - 2;
        let sep = if sep_exp >= 0 {
            Integer::from(1) << sep_exp as u32
        } else {
            return None;
        };
        let mut diff_norm = vec![vec![Integer::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = zs[i].sub_ref(&zs[j]).norm();
                if d <= sep {
                    return None;
                }
                diff_norm[i][j] = d.clone();
                diff_norm[j][i] = d;
            }
        }
        // r_i ≤ 2^{-b'-2} ⟺ R_i ≤ 2^{w+6-b'} for R_i = r_i·2^{w+8}
        let limit = Integer::from(1) << (w + 6 - self.b_prime);
        let mut radius = Vec::with_capacity(n);
        for i in 0..n {
            let others = diff_norm[i].iter().enumerate().filter(|&(j, _)| j != i).map(|(_, d)| d);
            let r = self.radius_bound(&z[i], &lc_norm, others, w);
            if r > limit {
                return None;
            }
            radius.push(Dyadic::new(r, w + 8));
        }
        let mut kind = vec![RootKind::General; n];
        if self.real {
            for i in 0..n {
                let zc = zs[i].conj();
                let near: Vec<usize> = (0..n)
                    .filter(|&j| zc.sub_ref(&zs[j]).norm() <= sep)
                    .collect();
                match near.as_slice() {
                    [j] if *j == i => kind[i] = RootKind::Real,
                    [j] => {
                        kind[i] = if zs[i].im.cmp0().is_gt() {
                            RootKind::Upper(*j)
                        } else {
                            RootKind::Lower(*j)
                        }
                    }
                    _ => return None,
                }
            }
            for i in 0..n {
                match kind[i] {
                    RootKind::Upper(j) if kind[j] != RootKind::Lower(i) => return None,
                    RootKind::Lower(j) if kind[j] != RootKind::Upper(i) => return None,
                    _ => {}
                }
            }
        }
        Some(Certificate { radius, kind })
    }

    /// Integer `R` with `n·|p(z)|/(|lc|·∏_j |z − z_j|) ≤ R·2^{-(w+8)}`, given
    /// `N_j = 2^{2w}·|z − z_j|²`.
    ///
    /// `p(z)` is evaluated by Horner's rule in fixed point with `F = w + g`
    /// fractional bits. Each truncated product is off by less than `√2` units of
    /// `2^{-F}` and errors grow by at most `|z| ≤ 2^ζ` per step, so the total error is
    /// below `2n·2^{ζ(n−1)}` units. The guard `g` makes that error negligible
    /// next to `2^{-w}·|lc|·∏|z − z_j|`. The product of the `N_j` is kept as a
    /// truncated lower bound.
    fn radius_bound<'b>(
        &self,
        z: &Fix,
        lc_norm: &'b Integer,
        others: impl Iterator<Item = &'b Integer>,
        w: u32,
    ) -> Integer {
        let n = self.n as i64;
        let (m, e) = product_lower(std::iter::once(lc_norm).chain(others));
        // log₂ of the lower bound on |lc|·∏|z − z_j|
        let prod_log = (m.significant_bits() as i64 - 1 + e) / 2 - w as i64 * (n - 1);
        let deficit = (-prod_log).max(0) + 1;
        let zeta = (z.bits() as i64 - w as i64 + 1).max(0);
        let g = zeta * (n - 1) + ceil_log2(2 * n as u64) as i64 + 32 + deficit;
        let f = w + g as u32;
        let mut acc = Fix::zero();
        for c in self.f.coeffs().iter().rev() {
            acc = acc.mul(z, w).add(&Fix {
                re: Integer::from(&c.re << f),
                im: Integer::from(&c.im << f),
            });
        }
        let err = Integer::from(2 * n) << (zeta * (n - 1)) as u32;
        let p_upper = ceil_sqrt(&(Integer::from(acc.re.square_ref()) + Integer::from(acc.im.square_ref()))) + err;
        // (r·2^{w+8})² ≤ n²·P²·2^{2w(n−1) − 2F − e + 2w + 16} / m
        let num = Integer::from(n * n) * Integer::from(p_upper.square_ref());
        let sh = 2 * w as i64 * (n - 1) - 2 * f as i64 - e + 2 * w as i64 + 16;
        let t = if sh >= 0 {
            (num << sh as u32).div_ceil(m)
        } else {
            num.div_ceil(m << (-sh) as u32)
        };
        ceil_sqrt(&t)
    }

    fn finish(&self, z: &[Fix], w: u32, cert: &Certificate) -> Vec<IsolatedRoot> {
        let n = self.n;
        let lc_two_adic = self.f.coeffs()[n].norm().find_one(0).unwrap_or(0);
        let mut out: Vec<Option<IsolatedRoot>> = vec![None; n];
        for i in 0..n {
            if let RootKind::Lower(_) = cert.kind[i] {
                continue;
            }
            let center = DyadicComplex::from_gauss(z[i].gauss(), w);
            let radius = cert.radius[i].clone();
            let exact = self.snap_exact(&center, &radius, lc_two_adic);
            let mut value = match &exact {
                Some(x) => x.round_to(self.b_prime.max(x.exp)),
                None => center.round_to(self.b_prime),
            };
            if cert.kind[i] == RootKind::Real {
                value.im = Integer::new();
            }
            let value = value.round_to(self.b_prime);
            let exact_ok = exact.as_ref().is_some_and(|x| x.exp <= self.b_prime);
            let disk = match exact {
                Some(x) => RootDisk::point(x),
                None => RootDisk { center, radius },
            };
            out[i] = Some(IsolatedRoot {
                value,
                disk,
                exact: exact_ok,
            });
        }
        for i in 0..n {
            if let RootKind::Lower(j) = cert.kind[i] {
                let up = out[j].clone().expect("upper member processed");
                out[i] = Some(IsolatedRoot {
                    value: up.value.conj(),
                    disk: RootDisk {
                        center: up.disk.center.conj(),
                        radius: up.disk.radius.clone(),
                    },
                    exact: up.exact,
                });
            }
        }
        out.into_iter().map(|r| r.expect("all roots filled")).collect()
    }

    /// Looks for a Gaussian dyadic root inside the disk. A dyadic root of a
    /// primitive polynomial has a denominator dividing the leading coefficient,
    /// so only exponents up to `v₂(N(lc))` need to be tried.
    fn snap_exact(&self, center: &DyadicComplex, radius: &Dyadic, max_e: u32) -> Option<DyadicComplex> {
        let fr = self.f.to_field();
        let r_sq = radius.mul(radius);
        for e in 0..=max_e.min(center.exp) {
            let cand = center.round_to(e);
            let dist = cand.sub_ref(center).abs_squared();
            let at = dist.exp.max(r_sq.exp);
            if dist.num_at(at) > r_sq.num_at(at) {
                continue;
            }
            if fr.eval(&cand.to_gauss_rat()).is_zero() {
                return Some(cand.canonical());
            }
        }
        None
    }
}

/// Lower bound `m·2^e` on a product of positive integers with a mantissa of at
/// most 256 bits.
fn product_lower<'b>(xs: impl Iterator<Item = &'b Integer>) -> (Integer, i64) {
    let mut m = Integer::from(1);
    let mut e = 0i64;
    for x in xs {
        m *= x;
        let bits = m.significant_bits();
        if bits > 256 {
            m >>= bits - 256;
            e += (bits - 256) as i64;
        }
    }
    (m, e)
}

fn ceil_sqrt(x: &Integer) -> Integer {
    let mut r = Integer::from(x.sqrt_ref());
    if Integer::from(r.square_ref()) < *x {
        r += 1;
    }
    r
}

/// Minimum over pairs of certified distances between distinct clusters
/// (`None` when fewer than two clusters).
pub fn min_certified_gap(clusters: &[RootCluster], bits: u32) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let g = clusters[i].enclosure.separation_lower(&clusters[j].enclosure, bits);
            best = Some(match best {
                Some(b) if b.cmp(&g) == Ordering::Less => b,
                _ => g,
            });
        }
    }
    best
}
