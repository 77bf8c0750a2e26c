//! Spectral factorization `P(x) = Q*(x)·Q(x)` of monic positive-semidefinite
//! Hermitian matrix polynomials through the Jordan form of the block companion
//! matrix, with a not-PSD certificate and the non-monic reduction.

use crate::error::{Error, Result};
use crate::jnf::{canonical_order, jnf_rational, jordan_matrix, ApproxJnf, JordanBlockSpec, DEFAULT_BPRIME_CONSTANT};
use crate::linalg::{char_poly, op_norm_bounds_rat, DyadicComplexMatrix, GaussMatrix, Matrix, RatMatrix};
use crate::scalar::{round_c, Conj, DyadicComplex, GaussInt, GaussRat, Integer, Modulus, Rational, Ring};
use log::debug;
use std::time::Instant;

/// Default `C_{b''}` in `b'' = C_{b''}·a·(dn)³·⌈log₂(dn+1)⌉ + b`.
pub const DEFAULT_BPP_CONSTANT: u64 = 8;
/// Default `C_real` in the real-eigenvalue threshold `τ = 2^{-C_real·a·(nd)²}`.
pub const DEFAULT_REAL_THRESHOLD_CONSTANT: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecfactConfig {
    pub bprime_constant: u64,
    pub bpp_constant: u64,
    pub real_threshold_constant: u64,
}

impl Default for SpecfactConfig {
    fn default() -> Self {
        SpecfactConfig {
            bprime_constant: DEFAULT_BPRIME_CONSTANT,
            bpp_constant: DEFAULT_BPP_CONSTANT,
            real_threshold_constant: DEFAULT_REAL_THRESHOLD_CONSTANT,
        }
    }
}

/// `P(x) = L·x^{deg} + Σ_{i<deg} P_i·x^i` with `L = I` unless `leading` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPolynomial {
    pub n: usize,
    pub degree: usize,
    pub coeffs: Vec<RatMatrix>,
    pub leading: Option<RatMatrix>,
}

impl MatrixPolynomial {
    pub fn monic(coeffs: Vec<RatMatrix>) -> Result<Self> {
        let n = coeffs
            .first()
            .map(RatMatrix::rows)
            .ok_or_else(|| Error::InvalidInput("a matrix polynomial needs at least one coefficient".into()))?;
        let p = MatrixPolynomial {
            n,
            degree: coeffs.len(),
            coeffs,
            leading: None,
        };
        p.check_shapes()?;
        Ok(p)
    }

    pub fn with_leading(coeffs: Vec<RatMatrix>, leading: RatMatrix) -> Result<Self> {
        let mut p = MatrixPolynomial::monic(coeffs)?;
        p.leading = (!leading.is_identity()).then_some(leading);
        p.check_shapes()?;
        Ok(p)
    }

    fn check_shapes(&self) -> Result<()> {
        let all = self.coeffs.iter().chain(self.leading.iter());
        for (i, c) in all.enumerate() {
            if c.rows() != self.n || c.cols() != self.n {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient {i} is {}×{}, expected {}×{}",
                    c.rows(),
                    c.cols(),
                    self.n,
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn is_monic(&self) -> bool {
        self.leading.is_none()
    }

    pub fn leading_coeff(&self) -> RatMatrix {
        self.leading.clone().unwrap_or_else(|| RatMatrix::identity(self.n))
    }

    /// All coefficients `P_0 … P_deg`, leading included.
    pub fn full_coeffs(&self) -> Vec<RatMatrix> {
        let mut v = self.coeffs.clone();
        v.push(self.leading_coeff());
        v
    }

    /// Errors naming the first entry that breaks Hermitian symmetry.
    pub fn validate_hermitian(&self) -> Result<()> {
        for (k, c) in self.full_coeffs().iter().enumerate() {
            for r in 0..self.n {
                for s in r..self.n {
                    if *c.num.get(r, s) != c.num.get(s, r).conj() {
                        return Err(Error::InvalidInput(format!(
                            "coefficient P_{k} is not Hermitian: entry [{r}][{s}] = {} but entry [{s}][{r}] = {}",
                            c.get(r, s),
                            c.get(s, r)
                        )));
                    }
                }
            }
        }
        if !self.degree.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "degree {} is odd; spectral factorization needs even degree",
                self.degree
            )));
        }
        Ok(())
    }

    /// Least common denominator of all coefficients.
    pub fn common_denominator(&self) -> Integer {
        let mut q = Integer::from(1);
        for c in self.full_coeffs() {
            q.lcm_mut(&c.den);
        }
        q
    }

    /// Bit length `a` of the input: largest numerator over the common denominator,
    /// or the denominator itself.
    pub fn input_bits(&self) -> u32 {
        let q = self.common_denominator();
        let mut a = q.significant_bits();
        for c in self.full_coeffs() {
            let k = GaussInt::real(Integer::from(&q / &c.den));
            a = a.max(c.num.scale(&k).max_bits());
        }
        a.max(1)
    }

    /// Exact `P(x)`.
    pub fn eval(&self, x: &GaussRat) -> RatMatrix {
        let mut acc = self.leading_coeff();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x).add(c).expect("shapes checked");
        }
        acc
    }

    /// Largest coefficient entry modulus, leading coefficient included.
    pub fn max_norm(&self) -> Modulus {
        self.full_coeffs()
            .iter()
            .map(RatMatrix::max_norm)
            .max()
            .unwrap_or_default()
    }
}

/// Row-oriented block companion matrix: identity blocks on the block
/// superdiagonal, `[−P_0, …, −P_{deg−1}]` as the last block row.
pub fn block_companion(p: &MatrixPolynomial) -> Result<RatMatrix> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let (n, m) = (p.n, p.degree);
    let q = p.common_denominator();
    let qi = GaussInt::real(q.clone());
    let scaled: Vec<GaussMatrix> = p
        .coeffs
        .iter()
        .map(|c| c.num.scale(&GaussInt::real(Integer::from(&q / &c.den))))
        .collect();
    let num = Matrix::from_fn(n * m, n * m, |r, c| {
        let (br, bc) = (r / n, c / n);
        if br + 1 < m {
            if bc == br + 1 && r % n == c % n {
                qi.clone()
            } else {
                GaussInt::zero()
            }
        } else {
            scaled[bc].get(r % n, c % n).neg_ref()
        }
    });
    RatMatrix::new(num, q)
}

/// Exact evaluation of `P(x)` with an exact test for a negative eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdSample {
    pub x: Rational,
    pub value: RatMatrix,
    pub has_negative_eigenvalue: bool,
}

/// `P(x)` at a rational point; the characteristic polynomial of a Hermitian
/// matrix has only real roots, so the number of negative eigenvalues equals the
/// number of sign changes of `χ(−t)` (Descartes' rule is exact here).
pub fn evaluate_and_check_psd_sample(p: &MatrixPolynomial, x: &Rational) -> Result<PsdSample> {
    let value = p.eval(&GaussRat::real(x.clone()));
    if !value.is_hermitian() {
        return Err(Error::InvalidInput("P(x) is not Hermitian at a real point".into()));
    }
    let chi = char_poly(&value.num)?;
    let mut signs = Vec::new();
    for (k, c) in chi.coeffs().iter().enumerate() {
        let mut s = c.re.cmp0();
        if k % 2 == 1 {
            s = s.reverse();
        }
        if s.is_ne() {
            signs.push(s);
        }
    }
    let variations = signs.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(PsdSample {
        x: x.clone(),
        value,
        has_negative_eigenvalue: variations > 0,
    })
}

/// Indices of the Jordan blocks of the companion JNF, by half plane.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub plus: Vec<usize>,
    pub zero: Vec<usize>,
    pub minus: Vec<usize>,
}

/// Splits blocks by the sign of the imaginary part. A block is real when
/// `|Im λ̂/q| ≤ τ = 2^{-C_real·a·(nd)²}`; such eigenvalues get `Im = 0` exactly.
/// Upper and lower half-plane blocks must match as conjugate multisets.
pub fn classify_eigenvalues(
    jnf: &mut ApproxJnf,
    a: u32,
    n: usize,
    d: usize,
    real_threshold_constant: u64,
) -> Result<Partition> {
    let nd = (n * d) as u64;
    let tau_bits = real_threshold_constant * a as u64 * nd * nd;
    let mut part = Partition::default();
    for (k, blk) in jnf.blocks.iter_mut().enumerate() {
        let e = &mut blk.eigenvalue;
        // |Im| ≤ τ·q  ⇔  |im|·2^{τ_bits} ≤ q·2^{exp}
        let lhs = Integer::from(e.im.abs_ref()) << u32::try_from(tau_bits).unwrap_or(u32::MAX / 4).min(u32::MAX / 4);
        let rhs = Integer::from(&jnf.eigen_divisor << e.exp);
        if e.im.cmp0().is_eq() || lhs <= rhs {
            e.im = Integer::new();
            part.zero.push(k);
        } else if e.im.cmp0().is_gt() {
            part.plus.push(k);
        } else {
            part.minus.push(k);
        }
    }
    let mut up: Vec<(DyadicComplex, usize)> =
        part.plus.iter().map(|&k| (jnf.blocks[k].eigenvalue.clone(), jnf.blocks[k].size)).collect();
    let mut down: Vec<(DyadicComplex, usize)> = part
        .minus
        .iter()
        .map(|&k| (jnf.blocks[k].eigenvalue.conj(), jnf.blocks[k].size))
        .collect();
    let key = |x: &(DyadicComplex, usize), y: &(DyadicComplex, usize)| x.0.cmp_re_im(&y.0).then(x.1.cmp(&y.1));
    up.sort_by(key);
    down.sort_by(key);
    if up != down {
        return Err(Error::UnpairedConjugates);
    }
    Ok(part)
}

/// Halves every real block: a block of size `2s` contributes a block of size `s`
/// and the first `s` of its columns. Returns the halved blocks and the column
/// indices (into `V̂`) they keep.
pub fn build_half(jnf: &ApproxJnf, zero: &[usize]) -> Result<(Vec<JordanBlockSpec>, Vec<usize>)> {
    let offsets = jnf.offsets();
    let mut blocks = Vec::with_capacity(zero.len());
    let mut cols = Vec::new();
    for &k in zero {
        let b = &jnf.blocks[k];
        if !b.size.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "real Jordan block {k} has odd size {}",
                b.size
            )));
        }
        let s = b.size / 2;
        blocks.push(JordanBlockSpec {
            eigenvalue: b.eigenvalue.clone(),
            size: s,
            source_block: b.source_block,
        });
        cols.extend(offsets[k]..offsets[k] + s);
    }
    Ok((blocks, cols))
}

/// `Q(x) = L·x^d + Σ_{i<d} Q_i·x^i`; `L = I` for monic inputs.
#[derive(Clone, Debug)]
pub struct SpectralFactor {
    /// `Q̂_0 … Q̂_{d−1}`, sharing one exponent.
    pub coeffs: Vec<DyadicComplexMatrix>,
    /// `V*` for the non-monic reduction.
    pub leading: Option<DyadicComplexMatrix>,
    pub accuracy_bits: u32,
    /// `b''` and the working precision of the companion JNF.
    pub bpp: u32,
    pub jnf_working_bits: u32,
    /// Every step was exact: `Q̂ = Q`.
    pub exact: bool,
    /// Blocks of `Ĵ_{≥0}` (eigenvalue numerators over `eigen_divisor`).
    pub ge_blocks: Vec<JordanBlockSpec>,
    pub eigen_divisor: Integer,
    pub v_ge: DyadicComplexMatrix,
    pub companion_jnf: ApproxJnf,
}

impl SpectralFactor {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// All coefficients including the leading one, at a common exponent.
    pub fn full_coeffs(&self) -> Vec<DyadicComplexMatrix> {
        let n = self.coeffs.first().map_or(0, DyadicComplexMatrix::rows);
        let mut v = self.coeffs.clone();
        v.push(
            self.leading
                .clone()
                .unwrap_or_else(|| DyadicComplexMatrix::identity(n)),
        );
        v
    }
}

/// Why a polynomial is not PSD: an odd Jordan block at a real latent root.
#[derive(Clone, Debug)]
pub struct NotPsdCertificate {
    /// The real eigenvalue of `C_P`, rounded to the accuracy exponent.
    pub real_eigenvalue: DyadicComplex,
    pub block_size: usize,
    /// Companion JNF blocks (eigenvalue numerators over `eigen_divisor`).
    pub jordan_blocks: Vec<JordanBlockSpec>,
    pub eigen_divisor: Integer,
    /// A rational point near the eigenvalue where `P` has a negative eigenvalue.
    pub witness: Option<PsdSample>,
}

#[derive(Clone, Debug)]
pub enum SpecfactOutcome {
    Factor(SpectralFactor),
    NotPsd(NotPsdCertificate),
}

impl SpecfactOutcome {
    pub fn factor(self) -> Option<SpectralFactor> {
        match self {
            SpecfactOutcome::Factor(f) => Some(f),
            SpecfactOutcome::NotPsd(_) => None,
        }
    }
}

/// `b'' = C·a·(dn)³·⌈log₂(dn+1)⌉ + b`.
pub fn bpp_bits(a: u32, dn: usize, b: u32, constant: u64) -> Result<u32> {
    crate::jnf::working_bits(a, dn, b, constant)
}

/// Spectral factor of a monic PSD Hermitian matrix polynomial of even degree.
pub fn spectral_factor(p: &MatrixPolynomial, b: u32, cfg: &SpecfactConfig) -> Result<SpecfactOutcome> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    p.validate_hermitian()?;
    let (n, d) = (p.n, p.degree / 2);
    let dn = d * n;
    let a = p.input_bits();
    let bpp = bpp_bits(a, dn, b, cfg.bpp_constant)?;
    let cp = block_companion(p)?;
    let q = cp.den.clone();
    debug!("specfact: n = {n}, d = {d}, a = {a}, b'' = {bpp}, q = {q}");
    let started = Instant::now();
    let mut jnf = jnf_rational(&cp.num, &q, bpp, cfg.bprime_constant)?;
    debug!("specfact: companion JNF in {:?}", started.elapsed());
    let part = classify_eigenvalues(&mut jnf, a, n, d, cfg.real_threshold_constant)?;
    if let Some(&k) = part.zero.iter().find(|&&k| jnf.blocks[k].size % 2 == 1) {
        return Ok(SpecfactOutcome::NotPsd(not_psd(p, &jnf, k, b)?));
    }
    let offsets = jnf.offsets();
    let mut ge_blocks = Vec::new();
    let mut cols = Vec::new();
    for &k in &part.plus {
        ge_blocks.push(jnf.blocks[k].clone());
        cols.extend(offsets[k]..offsets[k] + jnf.blocks[k].size);
    }
    let (half_blocks, half_cols) = build_half(&jnf, &part.zero)?;
    ge_blocks.extend(half_blocks);
    cols.extend(half_cols);
    if cols.len() != dn {
        return Err(Error::Internal(format!(
            "V_≥0 has {} columns, expected {dn}",
            cols.len()
        )));
    }
    let w = jnf.working_bits;
    let v_ge = jnf.v_hat.select_cols(&cols).submatrix(0, 0, dn, dn);
    let j_ge = jordan_matrix(&ge_blocks, w);
    let singular = |e| match e {
        Error::SingularMatrix => Error::SingularVge,
        other => other,
    };
    let r = if jnf.exact {
        v_ge.to_rat().inverse().map_err(singular)?
    } else {
        v_ge.inverse_within(bpp + 1).map_err(singular)?.round_to(bpp).to_rat()
    };
    debug!("specfact: V_≥0 inverted at {:?}", started.elapsed());
    // last block row of V_≥0·Ĵ_≥0·R, divided by q
    let x = v_ge.submatrix((d - 1) * n, 0, n, dn);
    let xj = x.mul(&j_ge)?.to_rat();
    let row = xj
        .mul(&r)?
        .scale(&GaussRat::from_parts(&GaussInt::real(-1), &q));
    let mut exact = jnf.exact;
    let coeffs: Vec<DyadicComplexMatrix> = (0..d)
        .map(|k| {
            let blk = row.submatrix(0, k * n, n, n);
            let rounded = blk.round_to(bpp);
            exact &= rounded.to_rat() == blk;
            rounded
        })
        .collect();
    debug!("specfact: factor assembled at {:?}", started.elapsed());
    Ok(SpecfactOutcome::Factor(SpectralFactor {
        coeffs,
        leading: None,
        accuracy_bits: b,
        bpp,
        jnf_working_bits: w,
        exact,
        ge_blocks,
        eigen_divisor: q,
        v_ge,
        companion_jnf: jnf,
    }))
}

fn not_psd(p: &MatrixPolynomial, jnf: &ApproxJnf, k: usize, b: u32) -> Result<NotPsdCertificate> {
    let lam = jnf.eigenvalue_rat(k).re;
    let real_eigenvalue = {
        let r = round_c(&lam, b);
        DyadicComplex::new(r.num, 0, b)
    };
    let mut witness = None;
    let mut step = 2u32;
    let cap = jnf.working_bits.max(64);
    'search: while step <= cap {
        let center = round_c(&lam, step + 8).to_rational();
        let h = Rational::from((1, Integer::from(1) << step));
        for x in [Rational::from(&center - &h), Rational::from(&center + &h), center.clone()] {
            let s = evaluate_and_check_psd_sample(p, &x)?;
            if s.has_negative_eigenvalue {
                witness = Some(s);
                break 'search;
            }
        }
        step *= 2;
    }
    let mut blocks = jnf.blocks.clone();
    blocks.sort_by(canonical_order);
    Ok(NotPsdCertificate {
        real_eigenvalue,
        block_size: jnf.blocks[k].size,
        jordan_blocks: blocks,
        eigen_divisor: jnf.eigen_divisor.clone(),
        witness,
    })
}

/// Factors `P` with leading coefficient `V·V*` via `P̃ = V⁻¹·P·V^{-*}` (monic)
/// and returns `Q(x) = Q̃(x)·V*`, so that `Q*Q = V·Q̃*Q̃·V* = P`.
pub fn nonmonic_spectral_factor(
    p: &MatrixPolynomial,
    v: &RatMatrix,
    b: u32,
    cfg: &SpecfactConfig,
) -> Result<SpecfactOutcome> {
    let lead = p.leading_coeff();
    if v.rows() != p.n || v.cols() != p.n {
        return Err(Error::DimensionMismatch("V must be n×n".into()));
    }
    if v.mul(&v.adjoint())? != lead {
        return Err(Error::InvalidInput("leading coefficient is not V·V*".into()));
    }
    let v_inv = v.inverse()?;
    let v_inv_adj = v_inv.adjoint();
    let coeffs = p
        .coeffs
        .iter()
        .map(|c| v_inv.mul(c)?.mul(&v_inv_adj))
        .collect::<Result<Vec<_>>>()?;
    let tilde = MatrixPolynomial::monic(coeffs)?;
    match spectral_factor(&tilde, b, cfg)? {
        SpecfactOutcome::Factor(mut f) => {
            let v_adj = v.adjoint();
            let (v_adj_dy, extra) = match v_adj.to_dyadic() {
                Some(m) => (m, 0),
                None => {
                    let c = f.bpp + 64 + v_adj.den.significant_bits();
                    (v_adj.round_to(c), c)
                }
            };
            let target = f.coeffs.first().map_or(0, |c| c.exp) + extra;
            f.coeffs = f
                .coeffs
                .iter()
                .map(|c| c.mul(&v_adj_dy).map(|m| m.round_to(target.max(m.exp)).round_to(target)))
                .collect::<Result<Vec<_>>>()?;
            f.exact &= extra == 0;
            f.leading = Some(v_adj_dy);
            Ok(SpecfactOutcome::Factor(f))
        }
        SpecfactOutcome::NotPsd(mut c) => {
            // congruent polynomials are PSD at the same points: re-derive the witness on P
            if let Some(w) = c.witness.take() {
                c.witness = Some(evaluate_and_check_psd_sample(p, &w.x)?);
            }
            Ok(SpecfactOutcome::NotPsd(c))
        }
    }
}

/// `Q*(x)·Q(x)` coefficient-wise, where `Q*(x) = Σ Q_i*·x^i`.
pub fn adjoint_product(q: &[DyadicComplexMatrix]) -> Result<Vec<DyadicComplexMatrix>> {
    let m = q.len();
    let n = q.first().map_or(0, DyadicComplexMatrix::rows);
    let exp = q.iter().map(|c| c.exp).max().unwrap_or(0);
    let adj: Vec<DyadicComplexMatrix> = q.iter().map(DyadicComplexMatrix::adjoint).collect();
    let mut out = Vec::with_capacity(2 * m - 1);
    for k in 0..2 * m - 1 {
        let mut acc = DyadicComplexMatrix::from_gauss(GaussMatrix::zeros(n, n), 2 * exp);
        for i in k.saturating_sub(m - 1)..=k.min(m - 1) {
            acc = acc.add(&adj[i].mul(&q[k - i])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Upper bound on the spectral norm of the block companion matrix.
pub fn companion_norm_upper(p: &MatrixPolynomial) -> Result<Modulus> {
    Ok(op_norm_bounds_rat(&block_companion(p)?).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(c: &[i64]) -> MatrixPolynomial {
        MatrixPolynomial::monic(
            c.iter()
                .map(|&x| RatMatrix::from_gauss(Matrix::from_vec(1, 1, vec![GaussInt::real(x)])))
                .collect(),
        )
        .unwrap()
    }

    fn int_coeffs(f: &SpectralFactor) -> Vec<GaussInt> {
        f.coeffs.iter().map(|c| {
            let r = c.to_rat();
            assert!(r.is_integral());
            r.num.get(0, 0).clone()
        }).collect()
    }

    #[test]
    fn companion_examples() {
        let c = block_companion(&scalar(&[0, 0])).unwrap();
        assert_eq!(c.num, crate::linalg::to_gauss(&crate::linalg::IntMatrix::from_rows(vec![
            vec![0.into(), 1.into()],
            vec![0.into(), 0.into()],
        ]).unwrap()));
        let c = block_companion(&scalar(&[1, 0])).unwrap();
        assert_eq!(*c.num.get(1, 0), GaussInt::real(-1));
    }

    #[test]
    fn psd_samples() {
        let p = scalar(&[-1, 0]);
        assert!(evaluate_and_check_psd_sample(&p, &Rational::new()).unwrap().has_negative_eigenvalue);
        let p = scalar(&[1, 0]);
        for x in [-3, 0, 5] {
            assert!(!evaluate_and_check_psd_sample(&p, &Rational::from(x)).unwrap().has_negative_eigenvalue);
        }
    }

    #[test]
    fn scalar_factors() {
        let cfg = SpecfactConfig::default();
        let f = spectral_factor(&scalar(&[0, 0]), 32, &cfg).unwrap().factor().unwrap();
        assert!(f.exact);
        assert_eq!(int_coeffs(&f), vec![GaussInt::zero()]);
        let f = spectral_factor(&scalar(&[1, 0]), 32, &cfg).unwrap().factor().unwrap();
        assert_eq!(int_coeffs(&f), vec![GaussInt::new(0, -1)]);
        let f = spectral_factor(&scalar(&[1, -2]), 32, &cfg).unwrap().factor().unwrap();
        assert_eq!(int_coeffs(&f), vec![GaussInt::real(-1)]);
    }

    #[test]
    fn not_psd_certificate() {
        let out = spectral_factor(&scalar(&[-1, 0]), 32, &SpecfactConfig::default()).unwrap();
        let SpecfactOutcome::NotPsd(c) = out else {
            panic!("x² − 1 is not PSD")
        };
        assert_eq!(c.block_size, 1);
        assert!(c.real_eigenvalue.is_real());
        assert!(c.witness.unwrap().has_negative_eigenvalue);
    }

    #[test]
    fn non_hermitian_rejected() {
        let c0 = RatMatrix::from_gauss(
            Matrix::from_rows(vec![
                vec![GaussInt::real(1), GaussInt::real(2)],
                vec![GaussInt::real(3), GaussInt::real(1)],
            ])
            .unwrap(),
        );
        let p = MatrixPolynomial::monic(vec![c0, RatMatrix::zeros(2, 2)]).unwrap();
        let err = spectral_factor(&p, 16, &SpecfactConfig::default()).unwrap_err();
        assert!(err.to_string().contains("[0][1]"), "{err}");
    }

    #[test]
    fn nonmonic_scalar() {
        // 4x² + 4 with V = 2: P̃ = x² + 1, Q = (x − i)·2
        let p = MatrixPolynomial::with_leading(
            vec![
                RatMatrix::from_gauss(Matrix::from_vec(1, 1, vec![GaussInt::real(4)])),
                RatMatrix::zeros(1, 1),
            ],
            RatMatrix::from_gauss(Matrix::from_vec(1, 1, vec![GaussInt::real(4)])),
        )
        .unwrap();
        let v = RatMatrix::from_gauss(Matrix::from_vec(1, 1, vec![GaussInt::real(2)]));
        let f = nonmonic_spectral_factor(&p, &v, 32, &SpecfactConfig::default())
            .unwrap()
            .factor()
            .unwrap();
        assert_eq!(int_coeffs(&f), vec![GaussInt::new(0, -2)]);
        let prod = adjoint_product(&f.full_coeffs()).unwrap();
        let full = p.full_coeffs();
        for (a, b) in prod.iter().zip(&full) {
            assert_eq!(a.to_rat(), *b);
        }
    }
}
