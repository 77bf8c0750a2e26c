//! Seeded generators for the built-in test instances.
//!
//! Every generator draws from a ChaCha stream derived from `(seed, stream)`, so
//! a family of instances is reproducible independently of the others.

use crate::linalg::{to_gauss, GaussMatrix, IntMatrix, Matrix, RatMatrix};
use crate::poly::IntPolynomial;
use crate::roots::required_bits;
use crate::scalar::{GaussInt, Integer, Rational, Ring};
use crate::specfact::{evaluate_and_check_psd_sample, MatrixPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn int(rows: Vec<Vec<i64>>) -> IntMatrix {
    Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Integer::from).collect()).collect())
        .expect("rectangular")
}

/// Entries uniform in `[−(2^{a−1}−1), 2^{a−1}−1]`, so every entry fits in `a` bits.
pub fn random_int_matrix(rng: &mut impl Rng, n: usize, a: u32) -> IntMatrix {
    let m = (1i64 << (a.clamp(2, 62) - 1)) - 1;
    Matrix::from_vec(n, n, (0..n * n).map(|_| Integer::from(rng.random_range(-m..=m))).collect())
}

/// `A·det S = S·J·adj S`, with `J` a prescribed Jordan matrix.
#[derive(Clone, Debug)]
pub struct SimilarInstance {
    /// `det S · A`, an integer matrix.
    pub scaled: IntMatrix,
    /// `|det S|`; `A = scaled / denominator` up to the sign folded into `scaled`.
    pub denominator: Integer,
    /// `(eigenvalue, size)` of each prescribed block.
    pub blocks: Vec<(i64, usize)>,
}

pub fn similar_to_jordan(rng: &mut impl Rng, n: usize) -> SimilarInstance {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = rng.random_range(1..=left.min(3));
        blocks.push((rng.random_range(-3..=3i64), size));
        left -= size;
    }
    let mut j = vec![vec![0i64; n]; n];
    let mut at = 0;
    for &(lam, size) in &blocks {
        for k in 0..size {
            j[at + k][at + k] = lam;
            if k + 1 < size {
                j[at + k][at + k + 1] = 1;
            }
        }
        at += size;
    }
    let (s, delta) = small_det_matrix(rng, n);
    let s_rat = RatMatrix::from_int(&s);
    let inv = s_rat.inverse().expect("det S = δ ≠ 0");
    // det S = δ, so δ·S⁻¹ is integral
    let adj = inv.scale(&crate::scalar::GaussRat::real(Rational::from(delta)));
    let scaled = s_rat
        .mul(&RatMatrix::from_int(&int(j)))
        .and_then(|x| x.mul(&adj))
        .expect("square")
        .reduced();
    let scaled = scaled.to_entries().map(|x| x.re.numer().clone());
    SimilarInstance {
        scaled,
        denominator: Integer::from(delta),
        blocks,
    }
}

/// One constructed root family of an integer polynomial factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootFamily {
    /// `num/den`, factor `den·x − num`.
    Rational { num: i64, den: i64 },
    /// `±√k` for a non-square `k > 0`, factor `x² − k`.
    SqrtPair { k: i64 },
    /// `(−b ± i·√(4c − b²))/2`, factor `x² + b·x + c` with `b² < 4c`.
    ComplexPair { b: i64, c: i64 },
}

impl RootFamily {
    pub fn factor(&self) -> IntPolynomial {
        match *self {
            RootFamily::Rational { num, den } => IntPolynomial::from_i64(&[-num, den]),
            RootFamily::SqrtPair { k } => IntPolynomial::from_i64(&[-k, 0, 1]),
            RootFamily::ComplexPair { b, c } => IntPolynomial::from_i64(&[c, b, 1]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootInstance {
    pub poly: IntPolynomial,
    /// Pairwise coprime factors with their multiplicities.
    pub families: Vec<(RootFamily, usize)>,
}

/// A product of constructed factors small enough for `b' = bits`.
pub fn constructed_roots(rng: &mut impl Rng, bits: u32) -> RootInstance {
    loop {
        let count = rng.random_range(1..=3usize);
        let mut families: Vec<(RootFamily, usize)> = Vec::new();
        while families.len() < count {
            let fam = match rng.random_range(0..3) {
                0 => {
                    let den = rng.random_range(1..=3i64);
                    let num = rng.random_range(-4..=4i64);
                    if Integer::from(num).gcd(&Integer::from(den)) != 1 {
                        continue;
                    }
                    RootFamily::Rational { num, den }
                }
                1 => {
                    let k = [2i64, 3, 5, 6, 7][rng.random_range(0..5)];
                    RootFamily::SqrtPair { k }
                }
                _ => {
                    let b = rng.random_range(-2..=2i64);
                    let c = rng.random_range(b * b / 4 + 1..=5);
                    RootFamily::ComplexPair { b, c }
                }
            };
            if families.iter().any(|(f, _)| *f == fam) {
                continue;
            }
            families.push((fam, rng.random_range(1..=3usize)));
        }
        let poly = families
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, m)| acc.mul(&f.factor().pow(*m)));
        if poly.deg() >= 1 && required_bits(&poly) <= bits as u64 {
            return RootInstance { poly, families };
        }
    }
}

fn gauss_int(rng: &mut impl Rng, m: i64) -> GaussInt {
    GaussInt::new(rng.random_range(-m..=m), rng.random_range(-m..=m))
}

/// Monic `Q(x) = Π_j (x·I − A_j)` with `A_j = R_j + i·s_j·I`, where `s_j`
/// exceeds every Gershgorin radius of `R_j`, so all latent roots of `Q` lie in
/// the open upper half plane.
pub fn upper_half_factor(rng: &mut impl Rng, n: usize, d: usize) -> Vec<GaussMatrix> {
    let mut q = vec![GaussMatrix::identity(n)];
    for _ in 0..d {
        let r = Matrix::from_vec(n, n, (0..n * n).map(|_| gauss_int(rng, 3)).collect());
        let radius = (0..n)
            .map(|i| (0..n).map(|j| r.get(i, j).re.clone().abs() + r.get(i, j).im.clone().abs()).sum::<Integer>())
            .max()
            .expect("n ≥ 1");
        let s = GaussInt::new(0, radius + 1);
        let a = Matrix::from_fn(n, n, |i, j| if i == j { r.get(i, j).add_ref(&s) } else { r.get(i, j).clone() });
        // multiply q by (x·I − A): new_k = q_{k−1} − q_k·A
        let mut next = vec![GaussMatrix::zeros(n, n); q.len() + 1];
        for (k, c) in q.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c).expect("shapes");
            next[k] = next[k].sub(&c.mul(&a).expect("shapes")).expect("shapes");
        }
        q = next;
    }
    q
}

/// Non-leading coefficients of `Q*Q` for `Q` given with leading coefficient
/// included (`q.len() = d + 1`).
pub fn adjoint_square(q: &[GaussMatrix]) -> Vec<GaussMatrix> {
    let d = q.len() - 1;
    let n = q[0].rows();
    let mut p = vec![GaussMatrix::zeros(n, n); 2 * d + 1];
    for (i, qi) in q.iter().enumerate() {
        let qi_star = qi.adjoint();
        for (j, qj) in q.iter().enumerate() {
            p[i + j] = p[i + j].add(&qi_star.mul(qj).expect("shapes")).expect("shapes");
        }
    }
    p.truncate(2 * d);
    p
}

pub fn monic_from_gauss(coeffs: &[GaussMatrix]) -> MatrixPolynomial {
    MatrixPolynomial::monic(coeffs.iter().cloned().map(RatMatrix::from_gauss).collect()).expect("shapes")
}

/// `P(x) = x²·I + P_1·x + P_0` with Hermitian Gaussian-integer coefficients,
/// rejected at `x = 0` by the PSD sampler.
pub fn non_psd_quadratic(rng: &mut impl Rng, n: usize) -> MatrixPolynomial {
    loop {
        let mut herm = || {
            let m = Matrix::from_vec(n, n, (0..n * n).map(|_| gauss_int(rng, 3)).collect());
            m.add(&m.adjoint()).expect("square")
        };
        let p1 = herm();
        let mut p0 = herm();
        let k = rng.random_range(0..n);
        let shift = GaussInt::real(rng.random_range(4..=12i64));
        *p0.get_mut(k, k) = p0.get(k, k).sub_ref(&shift);
        let p = monic_from_gauss(&[p0, p1]);
        let sample = evaluate_and_check_psd_sample(&p, &Rational::new()).expect("square");
        if sample.has_negative_eigenvalue {
            return p;
        }
    }
}

/// `S = L·U` with unit lower triangular `L` and upper triangular `U` whose
/// diagonal is `(δ, 1, …, 1)`; returns `(S, δ = det S)` with `δ ∈ {1, 2}`.
pub fn small_det_matrix(rng: &mut impl Rng, n: usize) -> (IntMatrix, i64) {
    let delta = rng.random_range(1..=2i64);
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for r in 0..n {
        for c in 0..n {
            if r > c {
                l[r][c] = rng.random_range(-1..=1);
            } else if r < c {
                u[r][c] = rng.random_range(-1..=1);
            }
        }
        l[r][r] = 1;
        u[r][r] = if r == 0 { delta } else { 1 };
    }
    (int(l).mul(&int(u)).expect("square"), delta)
}

/// `P = V·P̃·V*` for a monic PSD `P̃ = Q̃*Q̃`; returns `(P, V, Q̃)`.
pub fn nonmonic_instance(rng: &mut impl Rng, n: usize, d: usize) -> (MatrixPolynomial, IntMatrix, Vec<GaussMatrix>) {
    let q = upper_half_factor(rng, n, d);
    let p_tilde = adjoint_square(&q);
    let (v, _) = small_det_matrix(rng, n);
    let vg = to_gauss(&v);
    let vs = vg.adjoint();
    let conj = |m: &GaussMatrix| vg.mul(m).and_then(|x| x.mul(&vs)).expect("shapes");
    let coeffs = p_tilde.iter().map(|m| RatMatrix::from_gauss(conj(m))).collect();
    let leading = RatMatrix::from_gauss(conj(&GaussMatrix::identity(n)));
    let p = MatrixPolynomial::with_leading(coeffs, leading).expect("shapes");
    (p, v, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;

    #[test]
    fn similar_instance_has_prescribed_char_poly() {
        let mut rng = stream(7, 1);
        for n in 2..=6 {
            let inst = similar_to_jordan(&mut rng, n);
            let expect = inst.blocks.iter().fold(IntPolynomial::one(), |acc, &(lam, s)| {
                acc.mul(&IntPolynomial::from_i64(&[-lam * inst.denominator.to_i64().unwrap(), 1]).pow(s))
            });
            assert_eq!(char_poly(&inst.scaled).unwrap(), expect);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_int_matrix(&mut stream(3, 0), 4, 8);
        let b = random_int_matrix(&mut stream(3, 0), 4, 8);
        assert_eq!(a, b);
        assert!(a.max_bits() <= 8);
        assert_ne!(a, random_int_matrix(&mut stream(3, 1), 4, 8));
    }

    #[test]
    fn upper_half_factor_is_monic() {
        let q = upper_half_factor(&mut stream(1, 0), 2, 2);
        assert_eq!(q.len(), 3);
        assert!(q[2].is_identity());
        let p = adjoint_square(&q);
        assert!(p.iter().all(|m| m.is_hermitian()));
    }

    #[test]
    fn non_psd_quadratic_is_rejected() {
        let p = non_psd_quadratic(&mut stream(5, 0), 2);
        assert!(evaluate_and_check_psd_sample(&p, &Rational::new()).unwrap().has_negative_eigenvalue);
    }
}
