//! Exact residuals and certified condition-number checks.

use crate::error::{Error, Result};
use crate::jnf::ApproxJnf;
use crate::linalg::fraction_free::det;
use crate::linalg::sigma::{gram, kappa_enclosure, lambda_min_bounds, KappaEnclosure};
use crate::linalg::{gauss_mul_dyadic, max_column_norm, DyadicComplexMatrix, GaussMatrix, Matrix};
use crate::scalar::{log2_lower, log2_upper, Integer, Modulus, Rational, Ring};
use crate::specfact::{adjoint_product, companion_norm_upper, MatrixPolynomial, SpectralFactor};
use rug::ops::Pow;
use std::collections::BTreeMap;

/// Default `C_κ` in the ceiling `log₂ κ(V̂) ≤ C_κ·a·n³·(1 + log₂ n)²`.
pub const DEFAULT_KAPPA_CONSTANT: u64 = 8;

/// `‖A·V̂ − V̂·Ĵ‖_max` exactly, where `A` is the integer matrix the JNF was
/// computed from and `Ĵ` carries the undivided eigenvalues.
pub fn jnf_residual(a: &GaussMatrix, jnf: &ApproxJnf) -> Result<Modulus> {
    let av = gauss_mul_dyadic(a, &jnf.v_hat)?;
    let vj = jnf.v_hat.mul(&jnf.jordan_matrix())?;
    Ok(av.sub(&vj)?.max_norm())
}

/// `2^{-bits}·n²·‖V̂‖_max·‖Ĵ‖_max`, the residual tolerance at `bits` bits.
pub fn jnf_residual_tolerance(jnf: &ApproxJnf, bits: u32) -> Modulus {
    let n = jnf.n() as u64;
    jnf.v_hat
        .max_norm()
        .mul(&jnf.jordan_matrix().max_norm())
        .scale(&Rational::from(n * n))
        .scale_pow2(-(bits as i64))
}

/// Coefficient-wise `‖P − Q̂*·Q̂‖_max`, exactly.
pub fn factor_residual(p: &MatrixPolynomial, q: &SpectralFactor) -> Result<Modulus> {
    factor_residual_coeffs(p, &q.full_coeffs())
}

/// [`factor_residual`] for `Q̂` given by all its coefficients, leading one last.
pub fn factor_residual_coeffs(p: &MatrixPolynomial, full: &[DyadicComplexMatrix]) -> Result<Modulus> {
    if full.is_empty() || 2 * (full.len() - 1) != p.degree {
        return Err(Error::DimensionMismatch(format!(
            "factor of degree {} cannot match a polynomial of degree {}",
            full.len() - 1,
            p.degree
        )));
    }
    let prod = adjoint_product(full)?;
    let mut worst = Modulus::default();
    for (pk, qk) in p.full_coeffs().iter().zip(&prod) {
        worst = worst.max(pk.sub(&qk.to_rat())?.max_norm());
    }
    Ok(worst)
}

/// Coefficient-wise `‖Q̂ − Q‖_max` against a known factor `Q_0 … Q_{d−1}` (monic).
pub fn factor_error(q_hat: &SpectralFactor, q: &[crate::linalg::RatMatrix]) -> Result<Modulus> {
    if q_hat.coeffs.len() != q.len() {
        return Err(Error::DimensionMismatch("factor degrees differ".into()));
    }
    let mut worst = Modulus::default();
    for (a, b) in q_hat.coeffs.iter().zip(q) {
        worst = worst.max(a.to_rat().sub(b)?.max_norm());
    }
    Ok(worst)
}

/// Outcome of the submatrix-conditioning inequality
/// `σ_D(W_D) ≥ σ_D(W_k) / (√k·(4‖K‖)^{D(k−D+1)})` for `W_j = [Y; YK; …; YK^{j−1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmatrixConditionReport {
    pub d: usize,
    pub k: usize,
    /// log₂ enclosures of σ_D(W_D)² and σ_D(W_k)² (lower, upper).
    pub lhs_sq_log2: Option<(f64, f64)>,
    pub rhs_sq_log2: Option<(f64, f64)>,
    /// `log₂(k·16^e·‖K‖_lo^{2e})`, the squared slack factor.
    pub factor_sq_log2: f64,
    pub holds: bool,
}

/// Certifies the inequality with exact enclosures. `‖K‖` is replaced by the
/// certified lower bound `max column norm`, which only strengthens the claim.
pub fn submatrix_condition_check(y: &GaussMatrix, kmat: &GaussMatrix, k: usize) -> Result<SubmatrixConditionReport> {
    kmat.ensure_square()?;
    let d = kmat.rows();
    if y.cols() != d {
        return Err(Error::DimensionMismatch("Y must have D columns".into()));
    }
    if k < d || d == 0 {
        return Err(Error::InvalidInput("need k ≥ D ≥ 1".into()));
    }
    let k_lo_sq = max_column_norm(kmat).sq;
    if k_lo_sq < 1 {
        return Err(Error::Precondition("‖K‖ ≥ 1 could not be certified".into()));
    }
    let stack = |j: usize| -> GaussMatrix {
        let mut rows = Vec::new();
        let mut blk = y.clone();
        for _ in 0..j {
            rows.extend(blk.to_rows());
            blk = blk.mul(kmat).expect("conformable");
        }
        Matrix::from_rows(rows).expect("rows share a length")
    };
    let g_d = gram(&stack(d));
    let g_k = gram(&stack(k));
    let e = (d * (k - d + 1)) as u32;
    let factor = Rational::from(Integer::from(k) * Integer::from(16).pow(e)) * k_lo_sq.pow(e as i32);
    let factor_sq_log2 = log2_lower(&factor);
    let mut rel = 16;
    loop {
        let (l_lo, l_hi) = lambda_min_bounds(&g_d, rel);
        let (r_lo, r_hi) = lambda_min_bounds(&g_k, rel);
        let enc = |lo: &Rational, hi: &Rational| {
            (hi.cmp0().is_gt()).then(|| (log2_lower(lo).max(f64::NEG_INFINITY), log2_upper(hi)))
        };
        let report = |holds| SubmatrixConditionReport {
            d,
            k,
            lhs_sq_log2: enc(&l_lo, &l_hi),
            rhs_sq_log2: enc(&r_lo, &r_hi),
            factor_sq_log2,
            holds,
        };
        if l_hi.cmp0().is_eq() {
            // W_D rank deficient: the inequality demands σ_D(W_k) = 0 exactly
            let singular = det(&g_k)?.is_zero();
            return Ok(report(singular));
        }
        if Rational::from(&l_lo * &factor) >= r_hi {
            return Ok(report(true));
        }
        if rel >= 1024 {
            return Ok(report(false));
        }
        rel *= 4;
    }
}

/// Measured-versus-ceiling pair for one condition bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Ceiling {
    pub measured_log2: f64,
    pub ceiling_log2: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagnosticsReport {
    /// log₂ of the exact residual (None when it is exactly zero).
    pub residual_log2: Option<f64>,
    pub residual_is_zero: bool,
    pub residual_tolerance_log2: Option<f64>,
    pub kappa_log2: BTreeMap<String, (f64, f64)>,
    pub ceilings: BTreeMap<String, Ceiling>,
    pub pass: bool,
}

impl DiagnosticsReport {
    /// Sets `pass` from the ceilings and the residual tolerance.
    pub fn finish(mut self) -> Self {
        self.pass = self.ceilings.values().all(|c| c.pass) && self.residual_ok();
        self
    }

    fn residual_ok(&self) -> bool {
        match (self.residual_log2, self.residual_tolerance_log2) {
            (None, _) => true,
            (Some(r), Some(t)) => r <= t,
            (Some(_), None) => false,
        }
    }
}

/// `log₂ κ(V̂) ≤ C_κ·a·n³·(1 + log₂ n)²`.
pub fn jnf_kappa_ceiling(a: u32, n: usize, constant: u64) -> f64 {
    let n = n as f64;
    let l = 1.0 + n.log2();
    constant as f64 * a.max(1) as f64 * n * n * n * l * l
}

/// Residual, κ(V̂) enclosure and its ceiling for a JNF of the integer matrix `a`.
pub fn jnf_diagnostics(a: &GaussMatrix, jnf: &ApproxJnf, kappa_constant: u64) -> Result<DiagnosticsReport> {
    let mut rep = DiagnosticsReport::default();
    let res = jnf_residual(a, jnf)?;
    rep.residual_is_zero = res.is_zero();
    rep.residual_log2 = res.log2_upper();
    rep.residual_tolerance_log2 = jnf_residual_tolerance(jnf, jnf.accuracy_bits).log2_lower();
    let kap = kappa_enclosure(&jnf.v_hat);
    record_kappa(&mut rep, "V_hat", &kap);
    let ceiling = jnf_kappa_ceiling(a.max_bits(), jnf.n(), kappa_constant);
    rep.ceilings.insert(
        "log2_kappa_V_hat".into(),
        Ceiling {
            measured_log2: kap.log2_upper(),
            ceiling_log2: ceiling,
            pass: kap.log2_upper() <= ceiling,
        },
    );
    Ok(rep.finish())
}

fn record_kappa(rep: &mut DiagnosticsReport, name: &str, k: &KappaEnclosure) {
    if let Some(iv) = k.log2 {
        rep.kappa_log2.insert(name.into(), iv);
    }
}

/// Factor residual against `2^{-bits}·n²·deg²·‖P‖_max`, without condition data.
pub fn factor_residual_report(p: &MatrixPolynomial, full: &[DyadicComplexMatrix], bits: u32) -> Result<DiagnosticsReport> {
    let mut rep = DiagnosticsReport::default();
    let res = factor_residual_coeffs(p, full)?;
    rep.residual_is_zero = res.is_zero();
    rep.residual_log2 = res.log2_upper();
    rep.residual_tolerance_log2 = p
        .max_norm()
        .scale_pow2(-(bits as i64))
        .scale(&Rational::from((p.n * p.n * p.degree * p.degree) as u64))
        .log2_lower();
    Ok(rep.finish())
}

/// `log₂` of `κ(V̂)·√(2dn)·(4 + 4‖C_P‖)^{dn(dn+1)}` from certified lower/upper data.
pub fn vge_kappa_ceiling(kappa_v_lower_log2: f64, dn: usize, companion_norm_upper_log2: f64) -> f64 {
    let dn = dn as f64;
    // log₂(4 + 4x) ≥ 2 + log₂(max(1, x))
    let growth = 2.0 + companion_norm_upper_log2.max(0.0);
    kappa_v_lower_log2 + 0.5 * (2.0 * dn).log2() + dn * (dn + 1.0) * growth
}

/// Factor residual plus `κ(V̂_{≥0})` against `κ(V̂)·√(2dn)·(4+4‖C_P‖)^{dn(dn+1)}`
/// and `κ(V̂)` against the JNF ceiling.
pub fn specfact_diagnostics(
    p: &MatrixPolynomial,
    f: &SpectralFactor,
    kappa_constant: u64,
) -> Result<DiagnosticsReport> {
    let mut rep = factor_residual_report(p, &f.full_coeffs(), f.accuracy_bits)?;
    let kv = kappa_enclosure(&f.companion_jnf.v_hat);
    let kge = kappa_enclosure(&f.v_ge);
    record_kappa(&mut rep, "V_hat", &kv);
    record_kappa(&mut rep, "V_ge", &kge);
    let dn = p.n * p.degree / 2;
    if !p.is_monic() {
        // the bounds concern the companion of the rescaled monic polynomial
        return Ok(rep.finish());
    }
    let monic = p;
    let cp_norm = companion_norm_upper(monic)?.log2_upper().unwrap_or(0.0);
    let ceiling = vge_kappa_ceiling(kv.log2_lower(), dn, cp_norm);
    rep.ceilings.insert(
        "log2_kappa_V_ge".into(),
        Ceiling {
            measured_log2: kge.log2_upper(),
            ceiling_log2: ceiling,
            pass: kge.log2_upper() <= ceiling,
        },
    );
    let jc = jnf_kappa_ceiling(companion_bits(monic), 2 * dn, kappa_constant);
    rep.ceilings.insert(
        "log2_kappa_V_hat".into(),
        Ceiling {
            measured_log2: kv.log2_upper(),
            ceiling_log2: jc,
            pass: kv.log2_upper() <= jc,
        },
    );
    Ok(rep.finish())
}

fn companion_bits(p: &MatrixPolynomial) -> u32 {
    crate::specfact::block_companion(p).map(|c| c.num.max_bits()).unwrap_or(1)
}

/// Certified `log₂ κ` of a dyadic matrix, `(lower, upper)`.
pub fn kappa_log2(m: &DyadicComplexMatrix) -> Option<(f64, f64)> {
    kappa_enclosure(m).log2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jnf::jnf;
    use crate::linalg::{to_gauss, IntMatrix};

    fn int(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn exact_pipelines_have_zero_residual() {
        let a = int(&[&[1, 0], &[0, 2]]);
        let j = jnf(&a, 32).unwrap();
        assert!(jnf_residual(&to_gauss(&a), &j).unwrap().is_zero());
    }

    #[test]
    fn sqrt2_residual_small() {
        let a = int(&[&[0, 2], &[1, 0]]);
        let j = jnf(&a, 64).unwrap();
        let r = jnf_residual(&to_gauss(&a), &j).unwrap();
        assert!(r.log2_upper().unwrap() <= -60.0);
        let d = jnf_diagnostics(&to_gauss(&a), &j, DEFAULT_KAPPA_CONSTANT).unwrap();
        assert!(d.pass, "{d:?}");
    }

    #[test]
    fn submatrix_inequality_examples() {
        let i2 = to_gauss(&IntMatrix::identity(2));
        assert!(submatrix_condition_check(&i2, &i2, 2).unwrap().holds);
        let y = to_gauss(&int(&[&[1, 2], &[3, -1]]));
        let k = to_gauss(&int(&[&[0, 1], &[-2, 1]]));
        assert!(submatrix_condition_check(&y, &k, 4).unwrap().holds);
        let jb = to_gauss(&int(&[&[1, 1], &[0, 1]]));
        assert!(submatrix_condition_check(&y, &jb, 5).unwrap().holds);
        let small = GaussMatrix::zeros(2, 2);
        assert!(matches!(
            submatrix_condition_check(&y, &small, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_kappa() {
        let a = IntMatrix::identity(3);
        let j = jnf(&a, 16).unwrap();
        let d = jnf_diagnostics(&to_gauss(&a), &j, DEFAULT_KAPPA_CONSTANT).unwrap();
        let (lo, hi) = d.kappa_log2["V_hat"];
        assert!(lo <= 1e-6 && (0.0..1e-3).contains(&hi));
    }
}
