//! Approximate Jordan normal form `A ≈ V̂·Ĵ·V̂⁻¹` of an integer or Gaussian-integer
//! matrix: exact Frobenius form, certified roots of the invariant factors,
//! confluent Vandermonde (Brand) similarities with rounded eigenvalue powers,
//! and `V̂ = U·⊕ S_k·Ŵ_k`.
//!
//! The Vandermonde matrices `Ŵ_k` bring *row*-oriented companion matrices to
//! Jordan form. Blocks of `F` are column-oriented, and the Hankel matrix
//! `S_k[r][c] = p_{r+c+1}` (with `p_m = 1`) intertwines the two
//! orientations: `C_col·S = S·C_row`.

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_form_gauss, CompanionBlock, FrobeniusDecomposition};
use crate::linalg::{gauss_mul_dyadic, to_gauss, DyadicComplexMatrix, GaussMatrix, IntMatrix, Matrix, RatMatrix};
use crate::poly::{gcd_free_basis, RatPolynomial};
use crate::roots::{isolate_simple_roots, required_bits_gauss, IsolatedRoot, RootCluster};
use crate::scalar::{ceil_log2, BitLength, DyadicComplex, GaussInt, GaussRat, Integer, Ring};
use log::debug;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::time::Instant;

/// Default `C_{b'}` in `b' = b + C_{b'}·a·n³·⌈log₂(n+1)⌉`.
pub const DEFAULT_BPRIME_CONSTANT: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlockSpec {
    pub eigenvalue: DyadicComplex,
    pub size: usize,
    /// Index of the companion block of the Frobenius form this block came from.
    pub source_block: usize,
}

#[derive(Clone, Debug)]
pub struct ApproxJnf {
    /// Jordan blocks of `Ĵ` in output order (the column order of `V̂`).
    pub blocks: Vec<JordanBlockSpec>,
    pub v_hat: DyadicComplexMatrix,
    /// Eigenvalues of the represented matrix are `eigenvalue / eigen_divisor`
    /// (1 except for [`jnf_rational`]).
    pub eigen_divisor: Integer,
    pub accuracy_bits: u32,
    pub working_bits: u32,
    /// No rounding happened anywhere: `A·V̂ = V̂·Ĵ` holds exactly.
    pub exact: bool,
    pub frobenius_block_count: usize,
    /// Largest entry bit length of `U` and of `F`.
    pub u_bits: u32,
    pub f_bits: u32,
}

impl ApproxJnf {
    pub fn n(&self) -> usize {
        self.v_hat.rows()
    }

    /// Upper-bidiagonal `Ĵ` (eigenvalue numerators, ones above the diagonal),
    /// at the working exponent. The represented matrix's Jordan form is this
    /// divided by `eigen_divisor`.
    pub fn jordan_matrix(&self) -> DyadicComplexMatrix {
        jordan_matrix(&self.blocks, self.working_bits)
    }

    /// `Ĵ / eigen_divisor` as an exact rational matrix.
    pub fn jordan_matrix_rat(&self) -> RatMatrix {
        let j = self.jordan_matrix().to_rat();
        j.scale(&GaussRat::from_parts(&GaussInt::one(), &self.eigen_divisor))
    }

    /// `λ̂ / eigen_divisor` for block `k`.
    pub fn eigenvalue_rat(&self, k: usize) -> GaussRat {
        let e = &self.blocks[k].eigenvalue;
        let den = Integer::from(Integer::u_pow_u(2, e.exp)) * &self.eigen_divisor;
        GaussRat::from_parts(&e.num(), &den)
    }

    /// Column offset of each block in `V̂`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut at = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = at;
                at += b.size;
                o
            })
            .collect()
    }
}

pub fn jordan_matrix(blocks: &[JordanBlockSpec], exp: u32) -> DyadicComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.size).sum();
    let mut m = GaussMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let lam = b.eigenvalue.round_to(exp.max(b.eigenvalue.exp));
        assert!(lam.exp == exp, "eigenvalue exponent exceeds the working exponent");
        for i in 0..b.size {
            m.set(at + i, at + i, lam.num());
            if i + 1 < b.size {
                m.set(at + i, at + i + 1, GaussInt::real(1).shl(exp));
            }
        }
        at += b.size;
    }
    DyadicComplexMatrix::from_gauss(m, exp)
}

/// `[1, λ̂, λ̂², …, λ̂^r]` with `λ̂^p = round_{b'}(λ̂^{p−1}·λ̂)`; index `p` holds the `p`-th
/// power. The flag reports whether every rounding was exact.
pub fn approx_powers(lambda: &DyadicComplex, r: usize, b_prime: u32) -> (Vec<DyadicComplex>, bool) {
    let lam = lambda.round_to(b_prime);
    let mut exact = lam == *lambda;
    let mut out = Vec::with_capacity(r + 1);
    out.push(DyadicComplex::from_int(1).round_to(b_prime));
    if r == 0 {
        return (out, exact);
    }
    out.push(lam.clone());
    for p in 2..=r {
        let full = out[p - 1].mul_ref(&lam);
        let rounded = full.round_to(b_prime);
        exact &= rounded == full;
        out.push(rounded);
    }
    (out, exact)
}

/// Confluent Vandermonde `Ŵ = [W_{λ̂₁}, …]` for the row-oriented companion of
/// `block.poly`: entry `(r, c)` of `W_λ` is `C(r, c)·λ̂^{r−c}` (0-indexed).
pub fn brand_similarity(
    block: &CompanionBlock,
    clusters: &[RootCluster],
    b_prime: u32,
) -> Result<(DyadicComplexMatrix, Vec<JordanBlockSpec>)> {
    let pairs: Vec<(DyadicComplex, usize)> =
        clusters.iter().map(|c| (c.value.clone(), c.multiplicity)).collect();
    let (w, _) = brand_tracked(block.dim(), &pairs, b_prime)?;
    let specs = pairs
        .into_iter()
        .map(|(eigenvalue, size)| JordanBlockSpec {
            eigenvalue,
            size,
            source_block: 0,
        })
        .collect();
    Ok((w, specs))
}

fn brand_tracked(
    m: usize,
    clusters: &[(DyadicComplex, usize)],
    b_prime: u32,
) -> Result<(DyadicComplexMatrix, bool)> {
    let total: usize = clusters.iter().map(|c| c.1).sum();
    if total != m {
        return Err(Error::DimensionMismatch(format!(
            "multiplicities sum to {total} but the block has dimension {m}"
        )));
    }
    let mut w = GaussMatrix::zeros(m, m);
    let mut exact = true;
    let binom = binomials(m);
    let mut col = 0;
    for (lam, mult) in clusters {
        let (pw, ex) = approx_powers(lam, m, b_prime);
        exact &= ex;
        for c in 0..*mult {
            for r in c..m {
                let v = pw[r - c].num().mul_int(&binom[r][c]);
                w.set(r, col + c, v);
            }
        }
        col += mult;
    }
    Ok((DyadicComplexMatrix::from_gauss(w, b_prime), exact))
}

fn binomials(m: usize) -> Vec<Vec<Integer>> {
    let mut t = vec![vec![Integer::new(); m + 1]; m + 1];
    for r in 0..=m {
        t[r][0] = Integer::from(1);
        for c in 1..=r {
            t[r][c] = Integer::from(&t[r - 1][c - 1] + &t[r - 1][c]);
        }
    }
    t
}

/// Hankel symmetrizer `S[r][c] = p_{r+c+1}` (`p_m = 1`, zero beyond).
pub fn companion_symmetrizer(block: &CompanionBlock) -> GaussMatrix {
    let m = block.dim();
    Matrix::from_fn(m, m, |r, c| {
        let k = r + c + 1;
        if k <= m {
            block.poly.coeff(k)
        } else {
            GaussInt::zero()
        }
    })
}

/// `b' = b + C·a·n³·⌈log₂(n+1)⌉`.
pub fn working_bits(a: u32, n: usize, b: u32, constant: u64) -> Result<u32> {
    let n = n as u64;
    let extra = constant
        .checked_mul(a.max(1) as u64)
        .and_then(|x| x.checked_mul(n * n * n))
        .and_then(|x| x.checked_mul(ceil_log2(n + 1).max(1)))
        .ok_or_else(|| Error::InvalidInput("working precision overflows".into()))?;
    let total = extra + b as u64;
    u32::try_from(total)
        .ok()
        .filter(|&t| t < u32::MAX / 8)
        .ok_or_else(|| Error::InvalidInput(format!("working precision {total} is too large")))
}

/// Approximate JNF of an integer matrix with `b` bits of accuracy.
pub fn jnf(a: &IntMatrix, b: u32) -> Result<ApproxJnf> {
    jnf_gauss(&to_gauss(a), b, DEFAULT_BPRIME_CONSTANT)
}

/// Approximate JNF of `A/q`: runs at `b + ⌈lg q⌉` bits and records `q` as the
/// eigenvalue divisor.
pub fn jnf_rational(a: &GaussMatrix, q: &Integer, b: u32, constant: u64) -> Result<ApproxJnf> {
    if *q < 1 {
        return Err(Error::InvalidInput("common denominator must be positive".into()));
    }
    let lg = q.significant_bits() - u32::from(q.is_power_of_two());
    let mut out = jnf_gauss(a, b + lg, constant)?;
    out.eigen_divisor = q.clone();
    out.accuracy_bits = b;
    Ok(out)
}

/// Approximate JNF of a Gaussian-integer matrix.
pub fn jnf_gauss(a: &GaussMatrix, b: u32, constant: u64) -> Result<ApproxJnf> {
    a.ensure_square()?;
    let n = a.rows();
    let bits = a.max_bits().max(1);
    let b_prime = working_bits(bits, n, b, constant)?;
    let started = Instant::now();
    let frob = frobenius_form_gauss(a)?;
    debug!("jnf: Frobenius form in {:?}", started.elapsed());
    for blk in &frob.blocks {
        let need = required_bits_gauss(&blk.poly);
        if (b_prime as u64) < need {
            return Err(Error::Precondition(format!(
                "working precision b' = {b_prime} is below the {need} bits required to separate the roots of a degree-{} invariant factor",
                blk.dim()
            )));
        }
    }
    debug!(
        "jnf: n = {n}, a = {bits}, b' = {b_prime}, {} Frobenius blocks",
        frob.blocks.len()
    );
    let joint = joint_roots(&frob, b_prime)?;
    debug!("jnf: eigenvalues at {:?}", started.elapsed());
    let out = assemble(a, &frob, &joint, b, b_prime);
    debug!("jnf: similarity assembled at {:?}", started.elapsed());
    out
}

/// Distinct eigenvalues shared by all blocks, found once per element of a
/// gcd-free basis of the blocks' squarefree factors.
struct JointRoots {
    basis: Vec<RatPolynomial>,
    roots: Vec<Vec<IsolatedRoot>>,
}

fn joint_roots(frob: &FrobeniusDecomposition, b_prime: u32) -> Result<JointRoots> {
    let mut pieces = Vec::new();
    for blk in &frob.blocks {
        for (f, _) in blk.poly.to_field().squarefree_decomposition() {
            if f.deg() > 0 {
                pieces.push(f);
            }
        }
    }
    let basis = gcd_free_basis(&pieces);
    let roots = basis
        .par_iter()
        .map(|g| isolate_simple_roots(&g.to_primitive(), b_prime))
        .collect::<Result<Vec<_>>>()?;
    Ok(JointRoots { basis, roots })
}

fn assemble(
    a: &GaussMatrix,
    frob: &FrobeniusDecomposition,
    joint: &JointRoots,
    b: u32,
    b_prime: u32,
) -> Result<ApproxJnf> {
    let n = a.rows();
    let mut exact = true;
    let mut parts = Vec::with_capacity(frob.blocks.len());
    let mut specs: Vec<(JordanBlockSpec, usize)> = Vec::new();
    let mut col = 0;
    for (k, blk) in frob.blocks.iter().enumerate() {
        let poly = blk.poly.to_field();
        let mut clusters: Vec<(DyadicComplex, usize, bool)> = Vec::new();
        for (g, roots) in joint.basis.iter().zip(&joint.roots) {
            let m = poly.multiplicity_of(g);
            if m == 0 {
                continue;
            }
            for r in roots {
                clusters.push((r.value.clone(), m, r.exact));
            }
        }
        clusters.sort_by(|x, y| x.0.cmp_re_im(&y.0));
        let pairs: Vec<(DyadicComplex, usize)> = clusters.iter().map(|c| (c.0.clone(), c.1)).collect();
        let (w, ex) = brand_tracked(blk.dim(), &pairs, b_prime)?;
        exact &= ex && clusters.iter().all(|c| c.2);
        let s = companion_symmetrizer(blk);
        parts.push(gauss_mul_dyadic(&s, &w)?);
        for (lam, m) in pairs {
            specs.push((
                JordanBlockSpec {
                    eigenvalue: lam,
                    size: m,
                    source_block: k,
                },
                col,
            ));
            col += m;
        }
    }
    if col != n {
        return Err(Error::Internal(format!("Jordan blocks cover {col} of {n} columns")));
    }
    let w_all = block_diag_dyadic(&parts, b_prime);
    if !frob.u.is_integral() {
        return Err(Error::Internal("Frobenius transform is not integral".into()));
    }
    let v_all = gauss_mul_dyadic(&frob.u.clone().reduced().num, &w_all)?;
    specs.sort_by(|(x, _), (y, _)| canonical_order(x, y));
    let mut perm = Vec::with_capacity(n);
    for (s, at) in &specs {
        perm.extend(*at..*at + s.size);
    }
    Ok(ApproxJnf {
        blocks: specs.into_iter().map(|(s, _)| s).collect(),
        v_hat: v_all.select_cols(&perm),
        eigen_divisor: Integer::from(1),
        accuracy_bits: b,
        working_bits: b_prime,
        exact,
        frobenius_block_count: frob.blocks.len(),
        u_bits: frob.u.max_bits(),
        f_bits: frob.block_bits(),
    })
}

/// Real part, imaginary part, larger blocks first, then originating block.
pub fn canonical_order(x: &JordanBlockSpec, y: &JordanBlockSpec) -> Ordering {
    x.eigenvalue
        .cmp_re_im(&y.eigenvalue)
        .then(y.size.cmp(&x.size))
        .then(x.source_block.cmp(&y.source_block))
}

fn block_diag_dyadic(parts: &[DyadicComplexMatrix], exp: u32) -> DyadicComplexMatrix {
    let nums: Vec<GaussMatrix> = parts.iter().map(|p| p.num_at(exp)).collect();
    DyadicComplexMatrix::from_gauss(Matrix::block_diag(&nums), exp)
}

/// Bit lengths `(numerator, exponent)` of the largest entries of `V̂` and `Ĵ`.
pub fn output_bit_lengths(j: &ApproxJnf) -> (u32, u32) {
    let v = j.v_hat.to_entries().iter().map(|x| x.bit_length().0).max().unwrap_or(0);
    let e = j.blocks.iter().map(|b| b.eigenvalue.bit_length().0).max().unwrap_or(0);
    (v, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::GaussPolynomial;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    fn residual_is_zero(a: &IntMatrix, j: &ApproxJnf) -> bool {
        let av = gauss_mul_dyadic(&to_gauss(a), &j.v_hat).unwrap();
        let vj = j.v_hat.mul(&j.jordan_matrix()).unwrap();
        av.sub(&vj).unwrap().is_zero()
    }

    fn block(c: &[i64]) -> CompanionBlock {
        CompanionBlock {
            poly: GaussPolynomial::new(c.iter().map(|&x| GaussInt::real(x)).collect()),
        }
    }

    fn cluster(v: i64, m: usize) -> RootCluster {
        RootCluster {
            value: DyadicComplex::from_int(v),
            multiplicity: m,
            enclosure: crate::roots::RootDisk {
                center: DyadicComplex::from_int(v),
                radius: Default::default(),
            },
            exact: true,
        }
    }

    #[test]
    fn powers() {
        let (p, ex) = approx_powers(&DyadicComplex::i(), 4, 8);
        assert!(ex);
        let want = [
            DyadicComplex::from_int(1),
            DyadicComplex::i(),
            DyadicComplex::from_int(-1),
            DyadicComplex::i().neg_ref(),
            DyadicComplex::from_int(1),
        ];
        assert_eq!(p, want);
        let (p, ex) = approx_powers(&DyadicComplex::from_int(0), 3, 8);
        assert!(ex && p[1..].iter().all(Ring::is_zero));
    }

    #[test]
    fn powers_of_sqrt2_track_error() {
        // √2 rounded to 64 bits; oracle: |p⁴ − 4| ≤ 2^{-58}
        let s = (Integer::from(2) << 128u32).sqrt();
        let lam = DyadicComplex::new(s, 0, 64);
        let (p, _) = approx_powers(&lam, 4, 64);
        let err = p[4].sub_ref(&DyadicComplex::from_int(4)).re_part().to_rational().abs();
        assert!(err <= crate::scalar::Rational::from((1, Integer::from(1) << 58u32)));
    }

    #[test]
    fn brand_examples() {
        let (w, specs) = brand_similarity(&block(&[1, -2, 1]), &[cluster(1, 2)], 8).unwrap();
        assert_eq!(w, DyadicComplexMatrix::from_gauss(to_gauss(&int(&[&[1, 0], &[1, 1]])), 0));
        assert_eq!(specs[0].size, 2);
        let (w, _) = brand_similarity(&block(&[0, 0, 1]), &[cluster(0, 2)], 8).unwrap();
        assert_eq!(w, DyadicComplexMatrix::identity(2));
        let (w, _) = brand_similarity(&block(&[2, -3, 1]), &[cluster(1, 1), cluster(2, 1)], 8).unwrap();
        assert_eq!(w, DyadicComplexMatrix::from_gauss(to_gauss(&int(&[&[1, 1], &[1, 2]])), 0));
        assert!(brand_similarity(&block(&[2, -3, 1]), &[cluster(1, 1)], 8).is_err());
    }

    #[test]
    fn symmetrizer_intertwines() {
        let blk = block(&[5, -1, 3, 1]);
        let s = companion_symmetrizer(&blk);
        let col = blk.realize();
        let m = blk.dim();
        let row = Matrix::from_fn(m, m, |r, c| {
            if r + 1 == m {
                blk.poly.coeff(c).neg_ref()
            } else if c == r + 1 {
                GaussInt::one()
            } else {
                GaussInt::zero()
            }
        });
        assert_eq!(col.mul(&s).unwrap(), s.mul(&row).unwrap());
    }

    #[test]
    fn jordan_block_input() {
        let a = int(&[&[1, 1], &[0, 1]]);
        let j = jnf(&a, 32).unwrap();
        assert_eq!(j.blocks.len(), 1);
        assert_eq!(j.blocks[0].size, 2);
        assert_eq!(j.blocks[0].eigenvalue, DyadicComplex::from_int(1));
        assert!(j.exact);
        assert!(residual_is_zero(&a, &j));
    }

    #[test]
    fn diagonal_and_zero() {
        let a = int(&[&[1, 0], &[0, 2]]);
        let j = jnf(&a, 32).unwrap();
        let eig: Vec<_> = j.blocks.iter().map(|b| (b.eigenvalue.clone(), b.size)).collect();
        assert_eq!(eig, vec![(DyadicComplex::from_int(1), 1), (DyadicComplex::from_int(2), 1)]);
        assert!(residual_is_zero(&a, &j));
        let z = IntMatrix::zeros(3, 3);
        let j = jnf(&z, 16).unwrap();
        assert_eq!(j.blocks.len(), 3);
        assert!(j.blocks.iter().all(|b| b.eigenvalue.is_zero() && b.size == 1));
        assert!(residual_is_zero(&z, &j));
    }

    #[test]
    fn shared_eigenvalues_across_blocks() {
        // diag(J_2(3), 3, 5): invariant factors (x−3), (x−3)²(x−5)
        let a = int(&[&[3, 1, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 5]]);
        let j = jnf(&a, 16).unwrap();
        let eig: Vec<_> = j.blocks.iter().map(|b| (b.eigenvalue.clone(), b.size)).collect();
        assert_eq!(
            eig,
            vec![
                (DyadicComplex::from_int(3), 2),
                (DyadicComplex::from_int(3), 1),
                (DyadicComplex::from_int(5), 1)
            ]
        );
        assert!(residual_is_zero(&a, &j));
    }

    #[test]
    fn sqrt2_companion() {
        let a = int(&[&[0, 2], &[1, 0]]);
        let j = jnf(&a, 40).unwrap();
        assert!(!j.exact);
        let s = (Integer::from(2) << (2 * j.working_bits)).sqrt();
        let hi = &j.blocks[1].eigenvalue;
        assert_eq!(hi.exp, j.working_bits);
        assert!(Integer::from(&hi.re - &s).abs() <= 1);
        assert_eq!(j.blocks[0].eigenvalue, hi.neg_ref());
    }

    #[test]
    fn rational_scaling() {
        let a = to_gauss(&int(&[&[2, 0], &[0, 4]]));
        let j = jnf_rational(&a, &Integer::from(2), 16, DEFAULT_BPRIME_CONSTANT).unwrap();
        assert_eq!(j.eigenvalue_rat(0), GaussRat::real(1));
        assert_eq!(j.eigenvalue_rat(1), GaussRat::real(2));
    }

    #[test]
    fn precondition_failure_with_zero_constant() {
        let a = int(&[&[0, 7], &[1, 3]]);
        assert!(matches!(
            jnf_gauss(&to_gauss(&a), 2, 0),
            Err(Error::Precondition(_))
        ));
    }
}
