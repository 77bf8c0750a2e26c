//! Built-in instances with known answers, run by `jordanforge selftest`.

use crate::certify::{factor_error, factor_residual, jnf_residual, jnf_residual_tolerance, submatrix_condition_check};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::instances::{
    adjoint_square, constructed_roots, monic_from_gauss, non_psd_quadratic, nonmonic_instance, random_int_matrix,
    similar_to_jordan, stream, RootFamily,
};
use crate::jnf::{jnf_gauss, jnf_rational};
use crate::linalg::{to_gauss, GaussMatrix, IntMatrix, Matrix, RatMatrix};
use crate::poly::IntPolynomial;
use crate::roots::approx_roots_with_mults;
use crate::scalar::{DyadicComplex, GaussInt, Integer, Modulus, Rational};
use crate::specfact::{nonmonic_spectral_factor, spectral_factor, MatrixPolynomial, SpecfactOutcome};
use rand::Rng;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Precondition(String),
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub name: String,
    pub status: Status,
    /// log₂ of the measured quantity; `None` when it is exactly zero or not numeric.
    pub measured_log2: Option<f64>,
    pub tolerance_log2: Option<f64>,
    pub exact_zero: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Pass)
    }

    pub fn precondition_failures(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r.status, Status::Precondition(_))).count()
    }

    /// Fixed-width text table; a pure function of the rows.
    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(8).max(8);
        let mut s = String::new();
        let _ = writeln!(s, "{:<width$}  {:>14}  {:>14}  status", "instance", "log2 measured", "log2 tolerance");
        for r in &self.rows {
            let measured = if r.exact_zero {
                "exact 0".to_string()
            } else {
                r.measured_log2.map_or("-".into(), |x| format!("{x:.3}"))
            };
            let tol = r.tolerance_log2.map_or("-".into(), |x| format!("{x:.3}"));
            let status = match &r.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Precondition(m) => format!("PRECONDITION: {m}"),
                Status::Error(m) => format!("ERROR: {m}"),
            };
            let _ = writeln!(s, "{:<width$}  {measured:>14}  {tol:>14}  {status}", r.name);
        }
        let passed = self.rows.iter().filter(|r| r.status == Status::Pass).count();
        let _ = writeln!(s, "{passed}/{} instances passed", self.rows.len());
        s
    }
}

/// A measured-vs-tolerance check, or a plain yes/no one.
struct Check {
    ok: bool,
    measured: Option<Modulus>,
    tolerance: Option<Modulus>,
}

impl Check {
    fn bound(measured: Modulus, tolerance: Modulus) -> Self {
        Check {
            ok: measured <= tolerance,
            measured: Some(measured),
            tolerance: Some(tolerance),
        }
    }

    fn zero(measured: Modulus) -> Self {
        Check {
            ok: measured.is_zero(),
            measured: Some(measured),
            tolerance: None,
        }
    }

    fn flag(ok: bool) -> Self {
        Check {
            ok,
            measured: None,
            tolerance: None,
        }
    }
}

fn row(name: String, check: Result<Check>) -> Row {
    match check {
        Ok(c) => Row {
            name,
            status: if c.ok { Status::Pass } else { Status::Fail },
            exact_zero: c.measured.as_ref().is_some_and(Modulus::is_zero),
            measured_log2: c.measured.as_ref().and_then(Modulus::log2_upper),
            tolerance_log2: c.tolerance.as_ref().and_then(Modulus::log2_lower),
        },
        Err(e) => Row {
            name,
            status: match e {
                Error::Precondition(m) => Status::Precondition(m),
                other => Status::Error(other.to_string()),
            },
            measured_log2: None,
            tolerance_log2: None,
            exact_zero: false,
        },
    }
}

fn int(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
        .expect("rectangular")
}

fn jnf_check(a: &IntMatrix, bits: u32, c: &Constants) -> Result<Check> {
    let g = to_gauss(a);
    let j = jnf_gauss(&g, bits, c.bprime)?;
    Ok(Check::bound(jnf_residual(&g, &j)?, jnf_residual_tolerance(&j, bits.saturating_sub(4))))
}

fn similar_check(rng: &mut impl Rng, n: usize, bits: u32, c: &Constants) -> Result<Check> {
    let inst = similar_to_jordan(rng, n);
    let j = jnf_rational(&to_gauss(&inst.scaled), &inst.denominator, bits, c.bprime)?;
    let delta = inst.denominator.to_i64().expect("small determinant");
    let mut want: Vec<(DyadicComplex, usize)> = inst
        .blocks
        .iter()
        .map(|&(lam, s)| (DyadicComplex::from_gauss(GaussInt::real(lam * delta), 0), s))
        .collect();
    let mut got: Vec<(DyadicComplex, usize)> = j.blocks.iter().map(|b| (b.eigenvalue.canonical(), b.size)).collect();
    let key = |x: &(DyadicComplex, usize)| (x.0.re.clone(), x.0.im.clone(), x.0.exp, x.1);
    want.sort_by_key(key);
    got.sort_by_key(key);
    Ok(Check::flag(want == got))
}

fn roots_check(rng: &mut impl Rng, bits: u32) -> Result<Check> {
    let inst = constructed_roots(rng, bits);
    let clusters = approx_roots_with_mults(&inst.poly, bits)?;
    let mut want: Vec<usize> = inst
        .families
        .iter()
        .flat_map(|(f, m)| match f {
            RootFamily::Rational { .. } => vec![*m],
            _ => vec![*m, *m],
        })
        .collect();
    let mut got: Vec<usize> = clusters.iter().map(|c| c.multiplicity).collect();
    want.sort_unstable();
    got.sort_unstable();
    let radius = clusters
        .iter()
        .map(|c| Modulus::from_rational(&c.enclosure.radius.to_rational()))
        .max()
        .unwrap_or_default();
    let mut check = Check::bound(radius, Modulus::from_rational(&Rational::from(1)).scale_pow2(-(bits as i64)));
    check.ok &= want == got;
    Ok(check)
}

fn gauss_max_norm(ms: &[GaussMatrix]) -> Modulus {
    ms.iter()
        .map(|m| RatMatrix::from_gauss(m.clone()).max_norm())
        .max()
        .unwrap_or_default()
}

fn factor_check(rng: &mut impl Rng, n: usize, d: usize, bits: u32, c: &Constants) -> Result<Check> {
    let q = crate::instances::upper_half_factor(rng, n, d);
    let p = monic_from_gauss(&adjoint_square(&q));
    let SpecfactOutcome::Factor(f) = spectral_factor(&p, bits, &c.specfact())? else {
        return Ok(Check::flag(false));
    };
    let q_rat: Vec<RatMatrix> = q[..d].iter().cloned().map(RatMatrix::from_gauss).collect();
    let tol = gauss_max_norm(&q).scale_pow2(-(bits as i64 - 4));
    Ok(Check::bound(factor_error(&f, &q_rat)?, tol))
}

fn scalar_poly(coeffs: &[i64]) -> MatrixPolynomial {
    let m = |x: i64| RatMatrix::from_int(&int(&[&[x]]));
    MatrixPolynomial::monic(coeffs.iter().map(|&x| m(x)).collect()).expect("1×1")
}

fn degenerate_check(p: &MatrixPolynomial, bits: u32, c: &Constants) -> Result<Check> {
    match spectral_factor(p, bits, &c.specfact())? {
        SpecfactOutcome::Factor(f) => Ok(Check::zero(factor_residual(p, &f)?)),
        SpecfactOutcome::NotPsd(_) => Ok(Check::flag(false)),
    }
}

fn not_psd_check(p: &MatrixPolynomial, bits: u32, c: &Constants) -> Result<Check> {
    Ok(Check::flag(matches!(spectral_factor(p, bits, &c.specfact())?, SpecfactOutcome::NotPsd(_))))
}

fn nonmonic_check(rng: &mut impl Rng, n: usize, bits: u32, c: &Constants) -> Result<Check> {
    let (p, v, _) = nonmonic_instance(rng, n, 1);
    let SpecfactOutcome::Factor(f) = nonmonic_spectral_factor(&p, &RatMatrix::from_int(&v), bits, &c.specfact())?
    else {
        return Ok(Check::flag(false));
    };
    let a = p.input_bits() as i64;
    let lg = (n as u64).next_power_of_two().trailing_zeros() as i64;
    let tol = p.max_norm().scale_pow2(-(bits as i64 - 16 * lg - a));
    Ok(Check::bound(factor_residual(&p, &f)?, tol))
}

fn submatrix_check(rng: &mut impl Rng) -> Result<Check> {
    let mut g = |r: usize, c: usize| {
        Matrix::from_vec(r, c, (0..r * c).map(|_| GaussInt::new(rng.random_range(-3..=3i64), rng.random_range(-3..=3i64))).collect())
    };
    let y = g(2, 2);
    let mut k = g(2, 2);
    *k.get_mut(0, 0) = GaussInt::real(4);
    Ok(Check::flag(submatrix_condition_check(&y, &k, 4)?.holds))
}

/// Runs every built-in instance at accuracy `bits` with constants `c`.
pub fn selftest(seed: u64, bits: u32, c: &Constants) -> Report {
    let mut rows = Vec::new();
    rows.push(row("jnf/diag(1,2)".into(), jnf_check(&int(&[&[1, 0], &[0, 2]]), bits, c)));
    rows.push(row("jnf/companion(x^2-2)".into(), jnf_check(&int(&[&[0, 2], &[1, 0]]), bits, c)));
    let mut rng = stream(seed, 1);
    for n in [3, 5] {
        let a = random_int_matrix(&mut rng, n, 8);
        rows.push(row(format!("jnf/random n={n}"), jnf_check(&a, bits, c)));
    }
    let mut rng = stream(seed, 2);
    for n in [4, 5] {
        rows.push(row(format!("jnf/similar n={n}"), similar_check(&mut rng, n, bits, c)));
    }
    let mut rng = stream(seed, 3);
    for k in 0..3 {
        rows.push(row(format!("roots/constructed #{k}"), roots_check(&mut rng, bits)));
    }
    let mut rng = stream(seed, 4);
    for (n, d) in [(1, 2), (2, 1)] {
        rows.push(row(format!("specfact/random n={n} d={d}"), factor_check(&mut rng, n, d, bits, c)));
    }
    let square = IntPolynomial::from_i64(&[-1, 0, 1]).pow(2);
    let sq: Vec<i64> = (0..4).map(|k| square.coeff(k).to_i64().expect("small")).collect();
    let x2_i2 = MatrixPolynomial::monic(vec![RatMatrix::zeros(2, 2), RatMatrix::zeros(2, 2)]).expect("2×2");
    for (name, p) in [
        ("specfact/x^2", scalar_poly(&[0, 0])),
        ("specfact/(x-1)^2(x+1)^2", scalar_poly(&sq)),
        ("specfact/x^2*I2", x2_i2),
    ] {
        rows.push(row(name.into(), degenerate_check(&p, bits, c)));
    }
    rows.push(row("specfact/x^2-1 not psd".into(), not_psd_check(&scalar_poly(&[-1, 0]), bits, c)));
    let mut rng = stream(seed, 5);
    let q = non_psd_quadratic(&mut rng, 2);
    rows.push(row("specfact/random not psd".into(), not_psd_check(&q, bits, c)));
    let mut rng = stream(seed, 6);
    rows.push(row("specfact/nonmonic n=2".into(), nonmonic_check(&mut rng, 2, bits, c)));
    let mut rng = stream(seed, 7);
    for k in 0..3 {
        rows.push(row(format!("certify/submatrix #{k}"), submatrix_check(&mut rng)));
    }
    Report { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bprime_constant_reports_preconditions() {
        let c = Constants {
            bprime: 0,
            ..Constants::default()
        };
        let r = selftest(3, 64, &c);
        assert!(r.precondition_failures() > 0, "{}", r.table());
        assert!(!r.all_pass());
    }
}
