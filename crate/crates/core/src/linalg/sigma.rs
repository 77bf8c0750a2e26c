//! Certified singular-value enclosures by exact bisection.
//!
//! `σ_min(G) > s` iff `G*G − s²I` is positive definite, and positive definiteness of
//! a Hermitian Gaussian-integer matrix is decided exactly by the signs of its
//! leading principal minors. Every interval returned here is therefore a proof,
//! not an estimate.

use super::{fraction_free, DyadicComplexMatrix, GaussMatrix, Matrix};
use crate::scalar::{floor_log2, log2_lower, log2_upper, GaussInt, Integer, Modulus, Rational, Ring};

/// `G* G`.
pub fn gram(g: &GaussMatrix) -> GaussMatrix {
    g.adjoint().mul(g).expect("conformable")
}

/// Exact positive-definiteness test for a Hermitian Gaussian-integer matrix.
pub fn is_positive_definite(h: &GaussMatrix) -> bool {
    let minors = fraction_free::leading_principal_minors(h).expect("square");
    minors.len() == h.rows() && minors.iter().all(|m| m.im.cmp0().is_eq() && m.re.cmp0().is_gt())
}

/// Is `H − t·I ≻ 0` (`sign = 1`) or `t·I − H ≻ 0` (`sign = -1`)?
fn shifted_pd(h: &GaussMatrix, t: &Rational, sign: i32) -> bool {
    let (p, q) = (t.numer(), t.denom());
    let qi = GaussInt::real(q.clone());
    let n = h.rows();
    let m = Matrix::from_fn(n, n, |r, c| {
        let mut v = h.get(r, c).mul_ref(&qi);
        if sign < 0 {
            v = v.neg_ref();
        }
        if r == c {
            if sign > 0 {
                v.re -= p;
            } else {
                v.re += p;
            }
        }
        v
    });
    is_positive_definite(&m)
}

fn pow2(k: i64) -> Rational {
    let one = Rational::from(1);
    if k >= 0 {
        one << k as u32
    } else {
        one >> (-k) as u32
    }
}

/// Enclosure `[lo, hi]` of `λ_min(H)` for Hermitian PSD `H` with
/// `hi − lo ≤ lo·2^{-rel_bits}`; `[0, 0]` when `H` is singular.
pub fn lambda_min_bounds(h: &GaussMatrix, rel_bits: u32) -> (Rational, Rational) {
    if h.rows() == 0 || !is_positive_definite(h) {
        return (Rational::new(), Rational::new());
    }
    let trace = h.trace().re;
    // 2^top > trace ≥ λ_min, so H − 2^top·I is not PD.
    let top = floor_log2(&trace) + 1;
    let mut hi_k = top;
    let mut step = 1i64;
    let mut lo_k = loop {
        let k = hi_k - step;
        if shifted_pd(h, &pow2(k), 1) {
            break k;
        }
        hi_k = k;
        step *= 2;
    };
    while hi_k - lo_k > 1 {
        let mid = lo_k + (hi_k - lo_k) / 2;
        if shifted_pd(h, &pow2(mid), 1) {
            lo_k = mid;
        } else {
            hi_k = mid;
        }
    }
    let mut lo = pow2(lo_k);
    let mut hi = pow2(hi_k);
    let tol = pow2(lo_k - rel_bits as i64);
    while Rational::from(&hi - &lo) > tol {
        let mid: Rational = Rational::from(&lo + &hi) / 2u32;
        if shifted_pd(h, &mid, 1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Enclosure `[lo, hi]` of `λ_max(H)` for Hermitian PSD `H` with relative width `2^{-rel_bits}`.
pub fn lambda_max_bounds(h: &GaussMatrix, rel_bits: u32) -> (Rational, Rational) {
    let trace = h.trace().re;
    if trace.cmp0().is_eq() {
        return (Rational::new(), Rational::new());
    }
    // λ_max ∈ [trace/n, trace]
    let mut lo: Rational = Rational::from(trace.clone()) / h.rows() as u32;
    let mut hi = Rational::from(trace);
    if shifted_pd(h, &lo, 1) {
        unreachable!("trace/n cannot exceed the largest eigenvalue");
    }
    let tol_bits = log2_lower(&lo).floor() as i64 - rel_bits as i64;
    let tol = pow2(tol_bits);
    while Rational::from(&hi - &lo) > tol {
        let mid: Rational = Rational::from(&lo + &hi) / 2u32;
        if shifted_pd(h, &mid, -1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Square-root bounds with enough grid resolution to keep `rel_bits` of relative accuracy.
fn sqrt_interval(lo: &Rational, hi: &Rational, rel_bits: u32) -> (Rational, Rational) {
    if hi.cmp0().is_eq() {
        return (Rational::new(), Rational::new());
    }
    let mag = if lo.cmp0().is_gt() { log2_lower(lo) } else { log2_lower(hi) };
    let bits = ((rel_bits as f64 + 4.0 - mag / 2.0).ceil()).max(0.0) as u32;
    let (l, _) = Modulus::from_sq(lo.clone()).sqrt_bounds(bits);
    let (_, h) = Modulus::from_sq(hi.clone()).sqrt_bounds(bits);
    (l, h)
}

/// Enclosure of the smallest singular value `σ_k(G)` of an `m×k` matrix (`m ≥ k`).
pub fn sigma_min_bounds(g: &GaussMatrix, rel_bits: u32) -> (Rational, Rational) {
    let (lo, hi) = lambda_min_bounds(&gram(g), rel_bits + 2);
    sqrt_interval(&lo, &hi, rel_bits)
}

/// Enclosure of the largest singular value `σ_1(G)`.
pub fn sigma_max_bounds(g: &GaussMatrix, rel_bits: u32) -> (Rational, Rational) {
    let (lo, hi) = lambda_max_bounds(&gram(g), rel_bits + 2);
    sqrt_interval(&lo, &hi, rel_bits)
}

/// Certified enclosure of `σ_min(M)` with absolute width at most `2^{-target_bits}`.
/// Returns `[0, 0]` for a singular matrix.
pub fn sigma_min_estimate(m: &DyadicComplexMatrix, target_bits: u32) -> (Rational, Rational) {
    let scale = pow2(-(m.exp as i64));
    let (_, hi_f) = sigma_max_bounds(&m.num, 4);
    // relative accuracy r on σ(G)·2^-exp ≤ σ_max gives absolute width ≤ 2^-target
    let mag = if hi_f.cmp0().is_gt() {
        log2_upper(&Rational::from(&hi_f * &scale)).ceil().max(0.0) as u32
    } else {
        0
    };
    let (lo, hi) = sigma_min_bounds(&m.num, target_bits + mag + 2);
    (lo * &scale, hi * &scale)
}

/// Certified condition-number data for a (possibly huge-precision) dyadic matrix.
#[derive(Clone, Debug)]
pub struct KappaEnclosure {
    pub sigma_min: (Rational, Rational),
    pub sigma_max: (Rational, Rational),
    /// `log2 κ` interval; `None` when the matrix is singular.
    pub log2: Option<(f64, f64)>,
    /// Bits of the rounded copy used for the enclosure (Weyl-corrected).
    pub rounded_bits: u32,
}

impl KappaEnclosure {
    pub fn log2_upper(&self) -> f64 {
        self.log2.map_or(f64::INFINITY, |(_, h)| h)
    }

    pub fn log2_lower(&self) -> f64 {
        self.log2.map_or(f64::INFINITY, |(l, _)| l)
    }
}

/// Enclosure of `κ(M) = σ_max/σ_min` for a square dyadic matrix.
///
/// Entries are first rounded to `k` fractional bits; by Weyl's inequality every
/// singular value moves by at most `‖M − M_k‖_F ≤ √(rows·cols/2)·2^{-k}`, which is
/// added to both ends of the enclosure. `k` grows until that correction is
/// negligible against `σ_min`.
pub fn kappa_enclosure(m: &DyadicComplexMatrix) -> KappaEnclosure {
    let rel = 24u32;
    let rc = (m.rows() * m.cols()) as u64;
    let slack_num = Integer::from(rc).sqrt() + 1u32;
    let mut k = 64u32.min(m.exp);
    loop {
        let exact = k >= m.exp;
        let mk = if exact { m.clone() } else { m.round_to(k) };
        let scale = pow2(-(mk.exp as i64));
        let delta = if exact {
            Rational::new()
        } else {
            Rational::from(slack_num.clone()) * pow2(-(k as i64))
        };
        let (slo, shi) = sigma_min_bounds(&mk.num, rel);
        let (slo, shi) = (slo * &scale, shi * &scale);
        if slo.cmp0().is_eq() {
            if exact {
                let (mlo, mhi) = sigma_max_bounds(&m.num, rel);
                return KappaEnclosure {
                    sigma_min: (Rational::new(), Rational::new()),
                    sigma_max: (mlo * &scale, mhi * &scale),
                    log2: None,
                    rounded_bits: k,
                };
            }
            k = (k.saturating_mul(2)).min(m.exp);
            continue;
        }
        // require delta ≤ σ_min·2^-rel
        let needed = &slo * pow2(-(rel as i64));
        if !exact && delta > needed {
            let gap = (log2_upper(&delta) - log2_lower(&needed)).ceil() as u32;
            k = (k + gap.max(16) + 8).min(m.exp);
            continue;
        }
        let (mlo, mhi) = sigma_max_bounds(&mk.num, rel);
        let sigma_min = (Rational::from(&slo - &delta), Rational::from(&shi + &delta));
        let sigma_max = (
            (mlo * &scale - &delta).max(Rational::new()),
            mhi * &scale + &delta,
        );
        let lo = if sigma_max.0.cmp0().is_gt() {
            log2_lower(&sigma_max.0) - log2_upper(&sigma_min.1)
        } else {
            0.0
        };
        let hi = log2_upper(&sigma_max.1) - log2_lower(&sigma_min.0);
        return KappaEnclosure {
            sigma_min,
            sigma_max,
            log2: Some((lo.max(0.0), hi)),
            rounded_bits: k,
        };
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
    fn identity_and_diagonal() {
        let (lo, hi) = sigma_min_estimate(&DyadicComplexMatrix::identity(3), 64);
        assert!(lo <= 1 && hi >= 1);
        assert!(Rational::from(&hi - &lo) <= pow2(-64));
        // diag(1, 1/2)
        let d = DyadicComplexMatrix::from_gauss(gi(&[&[2, 0], &[0, 1]]), 1);
        let (lo, hi) = sigma_min_estimate(&d, 64);
        let half = Rational::from((1, 2));
        assert!(lo <= half && hi >= half);
    }

    #[test]
    fn singular_gives_zero() {
        let s = DyadicComplexMatrix::from_gauss(gi(&[&[1, 2], &[2, 4]]), 0);
        assert_eq!(sigma_min_estimate(&s, 64), (Rational::new(), Rational::new()));
        assert!(kappa_enclosure(&s).log2.is_none());
    }

    #[test]
    fn two_by_two_against_quadratic_formula() {
        // [[1,1],[1,2]]: G*G = [[2,3],[3,5]], eigenvalues (7 ± √45)/2
        let g = gi(&[&[1, 1], &[1, 2]]);
        let (lo, hi) = lambda_min_bounds(&gram(&g), 40);
        // (7 - √45)/2 ≈ 0.145898033750315
        let approx = Rational::from_f64(0.145898033750315).unwrap();
        let eps = pow2(-30);
        assert!(Rational::from(&lo - &eps) <= approx && approx <= Rational::from(&hi + &eps));
        let kap = kappa_enclosure(&DyadicComplexMatrix::from_gauss(g, 0));
        let (l, h) = kap.log2.unwrap();
        // κ = √((7+√45)/(7−√45)) ≈ 6.8541; log2 ≈ 2.77697
        assert!(l <= 2.7770 && h >= 2.7769 && h - l < 1e-3, "{l} {h}");
    }

    #[test]
    fn tiny_sigma_with_rounding() {
        // [[1, 1], [1, 1 + 2^-300]] has σ_min ≈ 2^-301
        let mut num = gi(&[&[1, 1], &[1, 1]]);
        let one = Integer::from(1) << 300u32;
        for r in 0..2 {
            for c in 0..2 {
                let v = num.get(r, c).re.clone() * &one;
                num.set(r, c, GaussInt::real(v));
            }
        }
        let v = num.get(1, 1).re.clone() + 1;
        num.set(1, 1, GaussInt::real(v));
        let m = DyadicComplexMatrix::from_gauss(num, 300);
        let kap = kappa_enclosure(&m);
        let (l, h) = kap.log2.unwrap();
        assert!(l > 300.0 && h < 304.0, "{l} {h}");
    }
}
