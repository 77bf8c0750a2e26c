//! Exact Frobenius (rational canonical) form `A = U·F·U⁻¹`.
//!
//! Deterministic cyclic-vector construction over ℚ(i): take a vector whose
//! Krylov minimal polynomial equals the minimal polynomial of `A`, split off
//! its cyclic subspace together with an invariant complement, and recurse on
//! the complement. The start vectors are scaled to primitive Gaussian-integer
//! vectors, so `U` (the concatenated Krylov bases) has Gaussian-integer entries.

use crate::error::{Error, Result};
use crate::linalg::{field_inverse, nullspace, solve_particular, to_gauss, GaussMatrix, IntMatrix, Matrix, RatMatrix};
use crate::poly::{GaussPolynomial, IntPolynomial, RatPolynomial};
use crate::scalar::{GaussInt, GaussRat, Integer, Ring};

/// Companion block of a monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionBlock {
    pub poly: GaussPolynomial,
}

impl CompanionBlock {
    pub fn dim(&self) -> usize {
        self.poly.deg()
    }

    /// Column-oriented companion matrix: ones on the subdiagonal, `−p_0 … −p_{m−1}`
    /// down the last column.
    pub fn realize(&self) -> GaussMatrix {
        let m = self.dim();
        Matrix::from_fn(m, m, |r, c| {
            if c == m - 1 {
                self.poly.coeff(r).neg_ref()
            } else if r == c + 1 {
                GaussInt::one()
            } else {
                GaussInt::zero()
            }
        })
    }
}

/// `A·U = U·F` with `F = ⊕ blocks`, `U·U⁻¹ = I`.
#[derive(Clone, Debug)]
pub struct FrobeniusDecomposition {
    pub u: RatMatrix,
    pub u_inv: RatMatrix,
    /// Invariant factors in increasing degree; each divides the next.
    pub blocks: Vec<CompanionBlock>,
}

impl FrobeniusDecomposition {
    pub fn frobenius_matrix(&self) -> GaussMatrix {
        let parts: Vec<GaussMatrix> = self.blocks.iter().map(CompanionBlock::realize).collect();
        Matrix::block_diag(&parts)
    }

    /// Offsets of each block inside `F`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut at = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = at;
                at += b.dim();
                o
            })
            .collect()
    }

    /// Exact check of `A·U = U·F` and `U·U⁻¹ = I`.
    pub fn verify(&self, a: &GaussMatrix) -> Result<bool> {
        let a = RatMatrix::from_gauss(a.clone());
        let f = RatMatrix::from_gauss(self.frobenius_matrix());
        let lhs = a.mul(&self.u)?;
        let rhs = self.u.mul(&f)?;
        Ok(lhs.sub(&rhs)?.is_zero() && self.u.mul(&self.u_inv)?.is_identity())
    }

    /// Largest bit length over the entries of `F`.
    pub fn block_bits(&self) -> u32 {
        self.blocks.iter().map(|b| b.poly.max_bits()).max().unwrap_or(0)
    }
}

/// Companion matrix of a monic integer polynomial.
pub fn companion_realize(poly: &IntPolynomial) -> Result<IntMatrix> {
    if !poly.is_monic() || poly.deg() == 0 {
        return Err(Error::NotMonic);
    }
    let m = CompanionBlock {
        poly: GaussPolynomial::from_int(poly),
    }
    .realize();
    Ok(m.map(|x| x.re.clone()))
}

/// Frobenius form of an integer matrix.
pub fn frobenius_form(a: &IntMatrix) -> Result<FrobeniusDecomposition> {
    frobenius_form_gauss(&to_gauss(a))
}

/// Frobenius form of a Gaussian-integer matrix.
pub fn frobenius_form_gauss(a: &GaussMatrix) -> Result<FrobeniusDecomposition> {
    a.ensure_square()?;
    let n = a.rows();
    let b = a.map(GaussInt::to_rat);
    // (invariant factor, start vector), largest first
    let mut parts = split_cyclic(&b);
    parts.reverse();
    let mut cols: Vec<Vec<GaussInt>> = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(parts.len());
    for (poly, start) in parts {
        let mut v = primitive_vector(&start);
        for _ in 0..poly.deg() {
            let next = a.mul_vec(&v);
            cols.push(std::mem::replace(&mut v, next));
        }
        let poly = poly
            .to_gauss_int()
            .ok_or_else(|| Error::Internal("invariant factor with non-integral coefficients".into()))?;
        blocks.push(CompanionBlock { poly });
    }
    let u = RatMatrix::from_gauss(Matrix::from_cols(n, &cols));
    let u_inv = u.inverse()?;
    let dec = FrobeniusDecomposition { u, u_inv, blocks };
    debug_assert!(dec.verify(a).unwrap_or(false));
    Ok(dec)
}

/// Invariant factors of `B` (largest first) with a start vector for each.
fn split_cyclic(b: &Matrix<GaussRat>) -> Vec<(RatPolynomial, Vec<GaussRat>)> {
    let r = b.rows();
    if r == 0 {
        return Vec::new();
    }
    let unit = |j: usize| (0..r).map(|i| if i == j { GaussRat::one() } else { GaussRat::zero() }).collect::<Vec<_>>();
    let unit_polys: Vec<RatPolynomial> = (0..r).map(|j| krylov_min_poly(b, &unit(j))).collect();
    let mu = unit_polys.iter().fold(RatPolynomial::one(), |acc, p| acc.lcm(p));
    let v = match unit_polys.iter().position(|p| *p == mu) {
        Some(j) => unit(j),
        // every proper subspace holds at most r−1 points of the moment curve, and
        // at most r subspaces are bad, so r² + 1 points always contain a good one
        None => (0..=(r * r) as i64)
            .map(|t| moment_vector(r, t))
            .find(|v| krylov_min_poly(b, v) == mu)
            .expect("moment curve contains a cyclic vector"),
    };
    let m = mu.deg();
    let mut krylov = Vec::with_capacity(m);
    let mut w = v.clone();
    for _ in 0..m {
        let next = b.mul_vec(&w);
        krylov.push(std::mem::replace(&mut w, next));
    }
    let mut out = vec![(mu, v)];
    if m == r {
        return out;
    }
    // φ with φ·B^i·v = δ_{i,m−1}; the common kernel of φ, φB, … is an invariant complement
    let k = Matrix::from_cols(r, &krylov);
    let mut e_last = vec![GaussRat::zero(); m];
    e_last[m - 1] = GaussRat::one();
    let phi = solve_particular(&k.transpose(), &e_last).expect("Krylov basis has full rank");
    let mut rows = Vec::with_capacity(m);
    let mut row = phi;
    for _ in 0..m {
        let next = b.vec_mul(&row);
        rows.push(std::mem::replace(&mut row, next));
    }
    let phi_mat = Matrix::from_rows(rows).expect("rows share a length");
    let comp = nullspace(&phi_mat);
    debug_assert_eq!(comp.len(), r - m);
    let n_mat = Matrix::from_cols(r, &comp);
    let t = k.hstack(&n_mat);
    let t_inv = field_inverse(&t).expect("cyclic subspace and complement span the space");
    let restricted = t_inv.mul(&b.mul(&n_mat).expect("shapes")).expect("shapes");
    let b_n = restricted.submatrix(m, 0, r - m, r - m);
    for (p, y) in split_cyclic(&b_n) {
        out.push((p, n_mat.mul_vec(&y)));
    }
    out
}

fn moment_vector(r: usize, t: i64) -> Vec<GaussRat> {
    let mut x = GaussRat::one();
    let t = GaussRat::from_i64(t);
    (0..r)
        .map(|_| {
            let next = x.mul_ref(&t);
            std::mem::replace(&mut x, next)
        })
        .collect()
}

/// Monic polynomial of least degree with `p(B)·v = 0`.
fn krylov_min_poly(b: &Matrix<GaussRat>, v: &[GaussRat]) -> RatPolynomial {
    let r = b.rows();
    let mut cols = vec![v.to_vec()];
    loop {
        let next = b.mul_vec(cols.last().expect("nonempty"));
        cols.push(next);
        let k = Matrix::from_cols(r, &cols);
        let ns = nullspace(&k);
        if let Some(c) = ns.first() {
            // a 1-dimensional kernel whose last coordinate is 1 by construction
            return RatPolynomial::new(c.clone()).monic();
        }
    }
}

/// Integer multiple of `v` with coprime Gaussian-integer entries (over ℤ).
fn primitive_vector(v: &[GaussRat]) -> Vec<GaussInt> {
    let mut den = Integer::from(1);
    for x in v {
        den.lcm_mut(&x.denom_lcm());
    }
    let ints: Vec<GaussInt> = v.iter().map(|x| x.numer_over(&den)).collect();
    let mut g = Integer::new();
    for x in &ints {
        g.gcd_mut(&x.re);
        g.gcd_mut(&x.im);
    }
    if g <= 1 {
        return ints;
    }
    ints.iter().map(|x| x.div_exact_int(&g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    fn coeffs(b: &CompanionBlock) -> Vec<i64> {
        b.poly.coeffs().iter().map(|c| c.re.to_i64().unwrap()).collect()
    }

    #[test]
    fn companion_orientation() {
        let m = companion_realize(&IntPolynomial::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(m, int(&[&[0, 0], &[1, 0]]));
        assert_eq!(companion_realize(&IntPolynomial::from_i64(&[-7, 1])).unwrap(), int(&[&[7]]));
        let p = IntPolynomial::from_i64(&[2, -3, 1]);
        assert_eq!(char_poly(&companion_realize(&p).unwrap()).unwrap(), p);
        assert!(matches!(
            companion_realize(&IntPolynomial::from_i64(&[1, 2])),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn companion_is_fixed_point() {
        let c = companion_realize(&IntPolynomial::from_i64(&[5, 0, -2, 1])).unwrap();
        let f = frobenius_form(&c).unwrap();
        assert_eq!(f.blocks.len(), 1);
        assert!(f.u.is_identity());
    }

    #[test]
    fn diagonal_examples() {
        let f = frobenius_form(&int(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(f.blocks.len(), 1);
        assert_eq!(coeffs(&f.blocks[0]), vec![2, -3, 1]);
        let f = frobenius_form(&IntMatrix::identity(2)).unwrap();
        assert_eq!(f.blocks.len(), 2);
        assert!(f.blocks.iter().all(|b| coeffs(b) == vec![-1, 1]));
    }

    #[test]
    fn derogatory_chain() {
        // diag(J_2(1), 1, 2): invariant factors (x−1), (x−1)²(x−2)
        let a = int(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]);
        let f = frobenius_form(&a).unwrap();
        assert_eq!(f.blocks.len(), 2);
        assert_eq!(coeffs(&f.blocks[0]), vec![-1, 1]);
        assert_eq!(coeffs(&f.blocks[1]), vec![-2, 5, -4, 1]);
        assert!(f.verify(&to_gauss(&a)).unwrap());
        assert!(f.u.is_integral());
    }

    #[test]
    fn gaussian_input() {
        let a = Matrix::from_rows(vec![
            vec![GaussInt::new(0, 1), GaussInt::real(2)],
            vec![GaussInt::zero(), GaussInt::new(0, 1)],
        ])
        .unwrap();
        let f = frobenius_form_gauss(&a).unwrap();
        assert!(f.verify(&a).unwrap());
        assert_eq!(f.blocks.len(), 1);
    }
}
