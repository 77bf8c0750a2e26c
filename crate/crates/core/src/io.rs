//! JSON input and output formats.
//!
//! Every exact number is a decimal string: integers as `"-12"`, rationals as
//! `"3/4"`, complex entries as `[re, im]` pairs, Gaussian dyadics as
//! `{"re_num", "im_num", "exp"}` meaning `(re_num + i·im_num)/2^exp`. Sizes and
//! exponents are plain JSON integers. Diagnostic log₂ values are strings too.

use crate::certify::{Ceiling, DiagnosticsReport};
use crate::error::{Error, Result};
use crate::frobenius::{CompanionBlock, FrobeniusDecomposition};
use crate::jnf::{ApproxJnf, JordanBlockSpec};
use crate::linalg::{DyadicComplexMatrix, GaussMatrix, IntMatrix, Matrix, RatMatrix};
use crate::poly::GaussPolynomial;
use crate::roots::RootCluster;
use crate::scalar::{Dyadic, DyadicComplex, GaussInt, GaussRat, Integer, Rational};
use crate::specfact::{MatrixPolynomial, NotPsdCertificate, PsdSample, SpectralFactor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicJson {
    pub re_num: String,
    pub im_num: String,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealDyadicJson {
    pub num: String,
    pub exp: u32,
}

/// A real entry `"p/q"` or a complex entry `["p/q", "r/s"]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Real(String),
    Complex([String; 2]),
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    IntMatrix(IntMatrix),
    RatMatrix(RatMatrix),
    /// Coefficients may be Gaussian integers; lowest degree first.
    IntPolynomial(GaussPolynomial),
    MatrixPoly(MatrixPolynomial),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum InputDoc {
    IntMatrix {
        entries: Vec<Vec<String>>,
    },
    RatMatrix {
        entries: Vec<Vec<EntryJson>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        denominator: Option<String>,
    },
    IntPolynomial {
        coeffs: Vec<EntryJson>,
    },
    MatrixPoly {
        n: usize,
        degree: usize,
        /// `P_0 … P_{degree−1}`; the leading coefficient is `I` unless given.
        coeffs: Vec<Vec<Vec<EntryJson>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        monic: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        leading: Option<Vec<Vec<EntryJson>>>,
    },
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    s.parse::<Integer>()
        .map_err(|e| Error::Parse(format!("not an integer: {s:?} ({e})")))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        None => Ok(Rational::from(parse_integer(s)?)),
        Some((p, q)) => {
            let q = parse_integer(q)?;
            if q.cmp0().is_eq() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::from((parse_integer(p)?, q)))
        }
    }
}

pub fn rational_string(x: &Rational) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_entry(e: &EntryJson) -> Result<GaussRat> {
    match e {
        EntryJson::Real(s) => Ok(GaussRat::real(parse_rational(s)?)),
        EntryJson::Complex([re, im]) => Ok(GaussRat::new(parse_rational(re)?, parse_rational(im)?)),
    }
}

fn parse_gauss_int(e: &EntryJson) -> Result<GaussInt> {
    match e {
        EntryJson::Real(s) => Ok(GaussInt::real(parse_integer(s)?)),
        EntryJson::Complex([re, im]) => Ok(GaussInt::new(parse_integer(re)?, parse_integer(im)?)),
    }
}

fn entry_json(x: &GaussRat) -> EntryJson {
    EntryJson::Complex([rational_string(&x.re), rational_string(&x.im)])
}

fn gauss_json(x: &GaussInt) -> EntryJson {
    EntryJson::Complex([x.re.to_string(), x.im.to_string()])
}

fn rows_of<T, U: Clone>(rows: &[Vec<T>], f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() || parsed[0].is_empty() {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    Matrix::from_rows(parsed)
}

fn rat_matrix_of(rows: &[Vec<EntryJson>]) -> Result<RatMatrix> {
    Ok(RatMatrix::from_entries(&rows_of(rows, parse_entry)?))
}

fn rat_matrix_json(m: &RatMatrix) -> Vec<Vec<EntryJson>> {
    m.to_entries().to_rows().iter().map(|r| r.iter().map(entry_json).collect()).collect()
}

fn square_of(m: RatMatrix, n: usize, what: &str) -> Result<RatMatrix> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}×{}, expected {n}×{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

/// Parses an input document. Matrix polynomials are checked to be Hermitian of
/// even degree.
pub fn parse_input(text: &str) -> Result<Input> {
    let doc: InputDoc = serde_json::from_str(text)?;
    match doc {
        InputDoc::IntMatrix { entries } => Ok(Input::IntMatrix(rows_of(&entries, |s| parse_integer(s))?)),
        InputDoc::RatMatrix { entries, denominator } => {
            let mut m = rat_matrix_of(&entries)?;
            if let Some(d) = denominator {
                let d = parse_rational(&d)?;
                if d.cmp0().is_eq() {
                    return Err(Error::Parse("zero shared denominator".into()));
                }
                m = m.scale(&GaussRat::real(d.recip()));
            }
            Ok(Input::RatMatrix(m))
        }
        InputDoc::IntPolynomial { coeffs } => {
            let c = coeffs.iter().map(parse_gauss_int).collect::<Result<Vec<_>>>()?;
            let p = GaussPolynomial::new(c);
            if p.is_zero() {
                return Err(Error::InvalidInput("zero polynomial".into()));
            }
            Ok(Input::IntPolynomial(p))
        }
        InputDoc::MatrixPoly {
            n,
            degree,
            coeffs,
            monic,
            leading,
        } => {
            if coeffs.len() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "degree {degree} needs coefficients P_0 … P_{} ({degree} matrices), got {}",
                    degree.saturating_sub(1),
                    coeffs.len()
                )));
            }
            let cs = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| square_of(rat_matrix_of(c)?, n, &format!("P_{k}")))
                .collect::<Result<Vec<_>>>()?;
            let p = match (leading, monic) {
                (Some(_), Some(true)) => {
                    return Err(Error::InvalidInput("a monic polynomial cannot have a leading coefficient".into()))
                }
                (None, Some(false)) => {
                    return Err(Error::InvalidInput("non-monic input needs a \"leading\" coefficient".into()))
                }
                (Some(l), _) => MatrixPolynomial::with_leading(cs, square_of(rat_matrix_of(&l)?, n, "leading")?)?,
                (None, _) => MatrixPolynomial::monic(cs)?,
            };
            p.validate_hermitian()?;
            Ok(Input::MatrixPoly(p))
        }
    }
}

pub fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

/// The document `parse_input` reads back as `input`.
pub fn input_json(input: &Input) -> serde_json::Value {
    let doc = match input {
        Input::IntMatrix(m) => InputDoc::IntMatrix {
            entries: m.to_rows().iter().map(|r| r.iter().map(Integer::to_string).collect()).collect(),
        },
        Input::RatMatrix(m) => InputDoc::RatMatrix {
            entries: rat_matrix_json(m),
            denominator: None,
        },
        Input::IntPolynomial(p) => InputDoc::IntPolynomial {
            coeffs: p.coeffs().iter().map(gauss_json).collect(),
        },
        Input::MatrixPoly(p) => InputDoc::MatrixPoly {
            n: p.n,
            degree: p.degree,
            coeffs: p.coeffs.iter().map(rat_matrix_json).collect(),
            monic: None,
            leading: p.leading.as_ref().map(rat_matrix_json),
        },
    };
    serde_json::to_value(doc).expect("input documents serialize")
}

pub fn dyadic_json(x: &DyadicComplex) -> DyadicJson {
    let c = x.canonical();
    DyadicJson {
        re_num: c.re.to_string(),
        im_num: c.im.to_string(),
        exp: c.exp,
    }
}

pub fn parse_dyadic(j: &DyadicJson) -> Result<DyadicComplex> {
    Ok(DyadicComplex::new(parse_integer(&j.re_num)?, parse_integer(&j.im_num)?, j.exp))
}

fn real_dyadic_json(x: &Dyadic) -> RealDyadicJson {
    let c = x.canonical();
    RealDyadicJson {
        num: c.num.to_string(),
        exp: c.exp,
    }
}

fn parse_real_dyadic(j: &RealDyadicJson) -> Result<Dyadic> {
    Ok(Dyadic::new(parse_integer(&j.num)?, j.exp))
}

pub fn dyadic_matrix_json(m: &DyadicComplexMatrix) -> Vec<Vec<DyadicJson>> {
    m.to_entries().to_rows().iter().map(|r| r.iter().map(dyadic_json).collect()).collect()
}

pub fn parse_dyadic_matrix(rows: &[Vec<DyadicJson>]) -> Result<DyadicComplexMatrix> {
    Ok(DyadicComplexMatrix::from_entries(&rows_of(rows, parse_dyadic)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub eigenvalue: DyadicJson,
    pub size: usize,
    pub source_block: usize,
}

fn block_json(b: &JordanBlockSpec) -> BlockJson {
    BlockJson {
        eigenvalue: dyadic_json(&b.eigenvalue),
        size: b.size,
        source_block: b.source_block,
    }
}

fn parse_block(b: &BlockJson) -> Result<JordanBlockSpec> {
    Ok(JordanBlockSpec {
        eigenvalue: parse_dyadic(&b.eigenvalue)?,
        size: b.size,
        source_block: b.source_block,
    })
}

/// A Gaussian-integer matrix over a shared positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrixJson {
    pub entries: Vec<Vec<EntryJson>>,
    pub denominator: String,
}

fn rat_json(m: &RatMatrix) -> RatMatrixJson {
    RatMatrixJson {
        entries: m.num.to_rows().iter().map(|r| r.iter().map(gauss_json).collect()).collect(),
        denominator: m.den.to_string(),
    }
}

fn parse_rat_json(j: &RatMatrixJson) -> Result<RatMatrix> {
    let num: GaussMatrix = rows_of(&j.entries, parse_gauss_int)?;
    RatMatrix::new(num, parse_integer(&j.denominator)?)
}

/// Diagnostics with every log₂ value as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub residual_log2: Option<String>,
    pub residual_is_zero: bool,
    pub residual_tolerance_log2: Option<String>,
    pub kappa_log2: BTreeMap<String, [String; 2]>,
    pub ceilings: BTreeMap<String, CeilingJson>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeilingJson {
    pub measured_log2: String,
    pub ceiling_log2: String,
    pub pass: bool,
}

fn f64_string(x: f64) -> String {
    format!("{x}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|e| Error::Parse(format!("not a number: {s:?} ({e})")))
}

pub fn diagnostics_json(d: &DiagnosticsReport) -> DiagnosticsJson {
    DiagnosticsJson {
        residual_log2: d.residual_log2.map(f64_string),
        residual_is_zero: d.residual_is_zero,
        residual_tolerance_log2: d.residual_tolerance_log2.map(f64_string),
        kappa_log2: d
            .kappa_log2
            .iter()
            .map(|(k, (lo, hi))| (k.clone(), [f64_string(*lo), f64_string(*hi)]))
            .collect(),
        ceilings: d
            .ceilings
            .iter()
            .map(|(k, c)| {
                (
                    k.clone(),
                    CeilingJson {
                        measured_log2: f64_string(c.measured_log2),
                        ceiling_log2: f64_string(c.ceiling_log2),
                        pass: c.pass,
                    },
                )
            })
            .collect(),
        pass: d.pass,
    }
}

pub fn parse_diagnostics(j: &DiagnosticsJson) -> Result<DiagnosticsReport> {
    let opt = |s: &Option<String>| s.as_deref().map(parse_f64).transpose();
    let mut kappa = BTreeMap::new();
    for (k, [lo, hi]) in &j.kappa_log2 {
        kappa.insert(k.clone(), (parse_f64(lo)?, parse_f64(hi)?));
    }
    let mut ceilings = BTreeMap::new();
    for (k, c) in &j.ceilings {
        ceilings.insert(
            k.clone(),
            Ceiling {
                measured_log2: parse_f64(&c.measured_log2)?,
                ceiling_log2: parse_f64(&c.ceiling_log2)?,
                pass: c.pass,
            },
        );
    }
    Ok(DiagnosticsReport {
        residual_log2: opt(&j.residual_log2)?,
        residual_is_zero: j.residual_is_zero,
        residual_tolerance_log2: opt(&j.residual_tolerance_log2)?,
        kappa_log2: kappa,
        ceilings,
        pass: j.pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JnfDoc {
    pub accuracy_bits: u32,
    pub working_bits: u32,
    pub exact: bool,
    /// Eigenvalues of the input are `eigenvalue / eigen_divisor`.
    pub eigen_divisor: String,
    pub frobenius_block_count: usize,
    pub u_bits: u32,
    pub f_bits: u32,
    pub blocks: Vec<BlockJson>,
    pub v_hat: Vec<Vec<DyadicJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub value: DyadicJson,
    pub multiplicity: usize,
    pub exact: bool,
    pub center: DyadicJson,
    pub radius: RealDyadicJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsDoc {
    pub bits: u32,
    pub degree: usize,
    pub clusters: Vec<ClusterJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusDoc {
    /// Invariant factors, lowest degree coefficient first.
    pub blocks: Vec<Vec<EntryJson>>,
    pub u: RatMatrixJson,
    pub u_inv: RatMatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub n: usize,
    /// Degree `d` of `Q`.
    pub degree: usize,
    pub accuracy_bits: u32,
    pub bpp: u32,
    pub jnf_working_bits: u32,
    pub exact: bool,
    /// `Q̂_0 … Q̂_{d−1}`.
    pub coeffs: Vec<Vec<Vec<DyadicJson>>>,
    /// Leading coefficient of `Q̂`; `I` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<Vec<Vec<DyadicJson>>>,
    pub eigen_divisor: String,
    pub ge_blocks: Vec<BlockJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub x: String,
    pub value: RatMatrixJson,
    pub has_negative_eigenvalue: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotPsdDoc {
    pub real_eigenvalue: DyadicJson,
    pub block_size: usize,
    pub eigen_divisor: String,
    pub jordan_blocks: Vec<BlockJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

/// Every result the command-line tool writes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutputDoc {
    Jnf(JnfDoc),
    Roots(RootsDoc),
    Frobenius(FrobeniusDoc),
    SpectralFactor(FactorDoc),
    NotPsd(NotPsdDoc),
    Diagnostics(DiagnosticsJson),
}

pub fn jnf_doc(j: &ApproxJnf, diagnostics: Option<&DiagnosticsReport>) -> JnfDoc {
    JnfDoc {
        accuracy_bits: j.accuracy_bits,
        working_bits: j.working_bits,
        exact: j.exact,
        eigen_divisor: j.eigen_divisor.to_string(),
        frobenius_block_count: j.frobenius_block_count,
        u_bits: j.u_bits,
        f_bits: j.f_bits,
        blocks: j.blocks.iter().map(block_json).collect(),
        v_hat: dyadic_matrix_json(&j.v_hat),
        diagnostics: diagnostics.map(diagnostics_json),
    }
}

pub fn parse_jnf_doc(d: &JnfDoc) -> Result<ApproxJnf> {
    let blocks = d.blocks.iter().map(parse_block).collect::<Result<Vec<_>>>()?;
    let v_hat = parse_dyadic_matrix(&d.v_hat)?;
    if blocks.iter().map(|b| b.size).sum::<usize>() != v_hat.cols() || !v_hat.num.is_square() {
        return Err(Error::DimensionMismatch("Jordan blocks do not match V_hat".into()));
    }
    Ok(ApproxJnf {
        blocks,
        v_hat,
        eigen_divisor: parse_integer(&d.eigen_divisor)?,
        accuracy_bits: d.accuracy_bits,
        working_bits: d.working_bits,
        exact: d.exact,
        frobenius_block_count: d.frobenius_block_count,
        u_bits: d.u_bits,
        f_bits: d.f_bits,
    })
}

pub fn roots_doc(bits: u32, degree: usize, clusters: &[RootCluster]) -> RootsDoc {
    RootsDoc {
        bits,
        degree,
        clusters: clusters
            .iter()
            .map(|c| ClusterJson {
                value: dyadic_json(&c.value),
                multiplicity: c.multiplicity,
                exact: c.exact,
                center: dyadic_json(&c.enclosure.center),
                radius: real_dyadic_json(&c.enclosure.radius),
            })
            .collect(),
    }
}

pub fn parse_roots_doc(d: &RootsDoc) -> Result<Vec<RootCluster>> {
    d.clusters
        .iter()
        .map(|c| {
            Ok(RootCluster {
                value: parse_dyadic(&c.value)?,
                multiplicity: c.multiplicity,
                enclosure: crate::roots::RootDisk {
                    center: parse_dyadic(&c.center)?,
                    radius: parse_real_dyadic(&c.radius)?,
                },
                exact: c.exact,
            })
        })
        .collect()
}

pub fn frobenius_doc(f: &FrobeniusDecomposition) -> FrobeniusDoc {
    FrobeniusDoc {
        blocks: f.blocks.iter().map(|b| b.poly.coeffs().iter().map(gauss_json).collect()).collect(),
        u: rat_json(&f.u),
        u_inv: rat_json(&f.u_inv),
    }
}

pub fn parse_frobenius_doc(d: &FrobeniusDoc) -> Result<FrobeniusDecomposition> {
    let blocks = d
        .blocks
        .iter()
        .map(|b| {
            let poly = GaussPolynomial::new(b.iter().map(parse_gauss_int).collect::<Result<Vec<_>>>()?);
            if !poly.is_monic() || poly.deg() == 0 {
                return Err(Error::NotMonic);
            }
            Ok(CompanionBlock { poly })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrobeniusDecomposition {
        u: parse_rat_json(&d.u)?,
        u_inv: parse_rat_json(&d.u_inv)?,
        blocks,
    })
}

pub fn factor_doc(n: usize, f: &SpectralFactor, diagnostics: Option<&DiagnosticsReport>) -> FactorDoc {
    FactorDoc {
        n,
        degree: f.degree(),
        accuracy_bits: f.accuracy_bits,
        bpp: f.bpp,
        jnf_working_bits: f.jnf_working_bits,
        exact: f.exact,
        coeffs: f.coeffs.iter().map(dyadic_matrix_json).collect(),
        leading: f.leading.as_ref().map(dyadic_matrix_json),
        eigen_divisor: f.eigen_divisor.to_string(),
        ge_blocks: f.ge_blocks.iter().map(block_json).collect(),
        diagnostics: diagnostics.map(diagnostics_json),
    }
}

/// `Q̂_0 … Q̂_{d−1}` followed by the leading coefficient.
pub fn parse_factor_coeffs(d: &FactorDoc) -> Result<Vec<DyadicComplexMatrix>> {
    let mut out = d.coeffs.iter().map(|c| parse_dyadic_matrix(c)).collect::<Result<Vec<_>>>()?;
    out.push(match &d.leading {
        Some(l) => parse_dyadic_matrix(l)?,
        None => DyadicComplexMatrix::identity(d.n),
    });
    if out.iter().any(|m| m.rows() != d.n || m.cols() != d.n) || out.len() != d.degree + 1 {
        return Err(Error::DimensionMismatch("factor coefficients do not match n and degree".into()));
    }
    Ok(out)
}

fn witness_json(s: &PsdSample) -> WitnessJson {
    WitnessJson {
        x: rational_string(&s.x),
        value: rat_json(&s.value),
        has_negative_eigenvalue: s.has_negative_eigenvalue,
    }
}

pub fn not_psd_doc(c: &NotPsdCertificate) -> NotPsdDoc {
    NotPsdDoc {
        real_eigenvalue: dyadic_json(&c.real_eigenvalue),
        block_size: c.block_size,
        eigen_divisor: c.eigen_divisor.to_string(),
        jordan_blocks: c.jordan_blocks.iter().map(block_json).collect(),
        witness: c.witness.as_ref().map(witness_json),
    }
}

pub fn parse_not_psd_doc(d: &NotPsdDoc) -> Result<NotPsdCertificate> {
    Ok(NotPsdCertificate {
        real_eigenvalue: parse_dyadic(&d.real_eigenvalue)?,
        block_size: d.block_size,
        jordan_blocks: d.jordan_blocks.iter().map(parse_block).collect::<Result<Vec<_>>>()?,
        eigen_divisor: parse_integer(&d.eigen_divisor)?,
        witness: d
            .witness
            .as_ref()
            .map(|w| {
                Ok::<_, Error>(PsdSample {
                    x: parse_rational(&w.x)?,
                    value: parse_rat_json(&w.value)?,
                    has_negative_eigenvalue: w.has_negative_eigenvalue,
                })
            })
            .transpose()?,
    })
}

/// Pretty JSON with a trailing newline; the byte stream is a pure function of `doc`.
pub fn to_json_string(doc: &OutputDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("output documents serialize");
    s.push('\n');
    s
}

pub fn parse_output(text: &str) -> Result<OutputDoc> {
    Ok(serde_json::from_str(text)?)
}

/// Writes `doc` to `path`, or to stdout when `path` is `None`.
pub fn emit_output(doc: &OutputDoc, path: Option<&Path>) -> Result<()> {
    let s = to_json_string(doc);
    match path {
        Some(p) => std::fs::write(p, s)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(s.as_bytes())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use proptest::prelude::*;

    #[test]
    fn identity_matrix() {
        let i = parse_input(r#"{"kind":"int_matrix","entries":[["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(i, Input::IntMatrix(IntMatrix::identity(2)));
    }

    #[test]
    fn scalar_matrix_poly() {
        let i = parse_input(r#"{"kind":"matrix_poly","n":1,"degree":2,"coeffs":[[[["1","0"]]],[[["0","0"]]]]}"#).unwrap();
        let Input::MatrixPoly(p) = i else { panic!("wrong kind") };
        assert!(p.is_monic());
        assert_eq!(p.coeffs[0], RatMatrix::identity(1));
        assert!(p.coeffs[1].is_zero());
    }

    #[test]
    fn non_hermitian_names_entry() {
        let text = r#"{"kind":"matrix_poly","n":2,"degree":2,
            "coeffs":[[[["1","0"],["2","0"]],[["3","0"],["1","0"]]],
                      [[["0","0"],["0","0"]],[["0","0"],["0","0"]]]]}"#;
        let e = parse_input(text).unwrap_err().to_string();
        assert!(e.contains("[0][1]") || e.contains("[1][0]"), "{e}");
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            r#"{"kind":"int_matrix","entries":[["1","0"],["0"]]}"#,
            r#"{"kind":"int_matrix","entries":[["1.5"]]}"#,
            r#"{"kind":"int_matrix","entries":[[" 1"]]}"#,
            r#"{"kind":"rat_matrix","entries":[["1/0"]]}"#,
            r#"{"kind":"matrix_poly","n":1,"degree":3,"coeffs":[[["0"]],[["0"]],[["0"]]]}"#,
            r#"{"kind":"matrix_poly","n":2,"degree":2,"coeffs":[[["0"]],[["0"]]]}"#,
            r#"{"kind":"int_polynomial","coeffs":["0"]}"#,
            r#"{"kind":"spaceship"}"#,
            "[1,2",
        ] {
            assert!(parse_input(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rational_matrix_with_shared_denominator() {
        let i = parse_input(r#"{"kind":"rat_matrix","entries":[[["1","1/2"],"3"]],"denominator":"2"}"#).unwrap();
        let Input::RatMatrix(m) = i else { panic!("wrong kind") };
        assert_eq!(m.get(0, 0), GaussRat::new(Rational::from((1, 2)), Rational::from((1, 4))));
        assert_eq!(m.get(0, 1), GaussRat::real(Rational::from((3, 2))));
    }

    #[test]
    fn jordan_block_format() {
        let b = JordanBlockSpec {
            eigenvalue: DyadicComplex::new(4, 0, 2),
            size: 1,
            source_block: 0,
        };
        let v = serde_json::to_value(block_json(&b)).unwrap();
        assert_eq!(v["eigenvalue"], serde_json::json!({"re_num": "1", "im_num": "0", "exp": 0}));
        assert_eq!(v["size"], 1);
    }

    #[test]
    fn minus_i_factor_format() {
        let m = DyadicComplexMatrix::from_gauss(Matrix::from_rows(vec![vec![GaussInt::new(0, -1)]]).unwrap(), 0);
        let j = dyadic_matrix_json(&m);
        assert_eq!(j[0][0], DyadicJson { re_num: "0".into(), im_num: "-1".into(), exp: 0 });
    }

    fn gauss_strategy() -> impl Strategy<Value = GaussInt> {
        (any::<i64>(), -1000i64..1000).prop_map(|(a, b)| GaussInt::new(a, b))
    }

    fn dyadic_strategy() -> impl Strategy<Value = DyadicComplex> {
        (gauss_strategy(), 0u32..200).prop_map(|(g, e)| DyadicComplex::from_gauss(g, e))
    }

    fn rat_strategy() -> impl Strategy<Value = GaussRat> {
        (any::<i32>(), 1i32..1000, any::<i16>(), 1i16..50)
            .prop_map(|(a, b, c, d)| GaussRat::new(Rational::from((a, b)), Rational::from((c, d))))
    }

    proptest! {
        #[test]
        fn jnf_documents_round_trip(
            entries in proptest::collection::vec(dyadic_strategy(), 9),
            eigs in proptest::collection::vec(dyadic_strategy(), 3),
            exact in any::<bool>(),
        ) {
            let v_hat = DyadicComplexMatrix::from_entries(&Matrix::from_vec(3, 3, entries));
            let blocks: Vec<JordanBlockSpec> = eigs
                .into_iter()
                .enumerate()
                .map(|(k, e)| JordanBlockSpec { eigenvalue: e, size: 1, source_block: k })
                .collect();
            let j = ApproxJnf {
                blocks,
                v_hat,
                eigen_divisor: Integer::from(3),
                accuracy_bits: 64,
                working_bits: 200,
                exact,
                frobenius_block_count: 3,
                u_bits: 1,
                f_bits: 1,
            };
            let doc = OutputDoc::Jnf(jnf_doc(&j, None));
            let back = parse_output(&to_json_string(&doc)).unwrap();
            prop_assert_eq!(&back, &doc);
            let OutputDoc::Jnf(d) = back else { panic!("kind") };
            let parsed = parse_jnf_doc(&d).unwrap();
            prop_assert_eq!(parsed.blocks, j.blocks);
            prop_assert_eq!(parsed.v_hat, j.v_hat);
            prop_assert_eq!(parsed.exact, j.exact);
        }

        #[test]
        fn rational_inputs_round_trip(entries in proptest::collection::vec(rat_strategy(), 4)) {
            let m = RatMatrix::from_entries(&Matrix::from_vec(2, 2, entries));
            let input = Input::RatMatrix(m);
            let text = input_json(&input).to_string();
            prop_assert_eq!(parse_input(&text).unwrap(), input);
        }

        #[test]
        fn hermitian_polys_round_trip(a in rat_strategy(), b in rat_strategy(), c in rat_strategy(), r in any::<i32>()) {
            // [[r, a], [conj a, r]] and [[Re b, c], [conj c, Re b]] are Hermitian
            let h = |d: Rational, off: &GaussRat| RatMatrix::from_entries(&Matrix::from_rows(vec![
                vec![GaussRat::real(d.clone()), off.clone()],
                vec![crate::scalar::Conj::conj(off), GaussRat::real(d)],
            ]).unwrap());
            let p = MatrixPolynomial::monic(vec![h(Rational::from(r), &a), h(b.re.clone(), &c)]).unwrap();
            let input = Input::MatrixPoly(p);
            let text = input_json(&input).to_string();
            prop_assert_eq!(parse_input(&text).unwrap(), input);
        }

        #[test]
        fn polynomials_round_trip(cs in proptest::collection::vec(gauss_strategy(), 1..8)) {
            let mut cs = cs;
            cs.push(GaussInt::one());
            let input = Input::IntPolynomial(GaussPolynomial::new(cs));
            let text = input_json(&input).to_string();
            prop_assert_eq!(parse_input(&text).unwrap(), input);
        }
    }
}
