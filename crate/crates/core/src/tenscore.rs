//! Dense complex matrix kernel.
//!
//! Every linear map between the finite-dimensional spaces used in this crate
//! is stored as a dense [`CMatrix`]. Tensor products of coordinate spaces use
//! one fixed convention throughout: the leftmost factor is the major index, so
//! the basis vector `e_i ⊗ e_j` of `ℂⁿ ⊗ ℂᵐ` sits at position `i * m + j`.
//!
//! Antilinear maps (the involutions of the *-algebras) are stored as a pair
//! `(J, conjugation)`: the map is `v ↦ J · conj(v)` in coordinates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Absolute and relative thresholds used by every numerical comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let ok = |t: f64| t.is_finite() && (0.0..1.0).contains(&t);
        if ok(abs_tol) && ok(rel_tol) {
            Ok(Tolerance { abs_tol, rel_tol })
        } else {
            Err(Error::InvalidTolerance {
                abs: abs_tol,
                rel: rel_tol,
            })
        }
    }

    /// Same value for both thresholds.
    pub fn uniform(t: f64) -> Result<Self> {
        Tolerance::new(t, t)
    }

    /// Largest admissible residual for quantities of magnitude `scale`.
    #[inline]
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }

    #[inline]
    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.bound(scale)
    }

    /// Cutoff separating numerically zero singular values from the rest.
    #[inline]
    pub fn rank_cutoff(&self, sigma_max: f64) -> f64 {
        (self.rel_tol * sigma_max).max(f64::EPSILON * sigma_max)
    }

    pub fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            abs_tol: (self.abs_tol * factor).min(0.5),
            rel_tol: (self.rel_tol * factor).min(0.5),
        }
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Entrywise sup-norm distance; shapes must agree.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn max_abs_diff_vec(a: &CVector, b: &CVector) -> f64 {
    assert_eq!(a.len(), b.len(), "max_abs_diff_vec length mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    if all_finite(m) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// A vector as an `n × 1` matrix.
pub fn col_matrix(v: &CVector) -> CMatrix {
    CMatrix::from_column_slice(v.len(), 1, v.as_slice())
}

/// A covector as a `1 × n` matrix.
pub fn row_matrix(v: &CVector) -> CMatrix {
    CMatrix::from_row_slice(1, v.len(), v.as_slice())
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Matrix unit `e_ij` of size `rows × cols`.
pub fn matrix_unit(rows: usize, cols: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    m[(i, j)] = ONE;
    m
}

pub fn basis_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = ONE;
    v
}

/// Entrywise complex conjugate (not the adjoint).
pub fn conj(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

pub fn conj_vec(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Kronecker product: `(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for j in 0..ac {
        for i in 0..ar {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for l in 0..bc {
                for k in 0..br {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let m = b.len();
    let mut out = CVector::zeros(a.len() * m);
    for (i, ai) in a.iter().enumerate() {
        if *ai == ZERO {
            continue;
        }
        for (k, bk) in b.iter().enumerate() {
            out[i * m + k] = ai * bk;
        }
    }
    out
}

/// The flip `τ: ℂⁿ⊗ℂᵐ → ℂᵐ⊗ℂⁿ`, `e_i⊗e_j ↦ e_j⊗e_i`.
pub fn flip(n: usize, m: usize) -> CMatrix {
    let mut out = CMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..m {
            out[(j * n + i, i * m + j)] = ONE;
        }
    }
    out
}

fn digits(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims.iter()).rev() {
        *slot = idx % d;
        idx /= d;
    }
}

fn undigits(ds: &[usize], dims: &[usize]) -> usize {
    ds.iter()
        .zip(dims.iter())
        .fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Places `x` on the listed tensor legs (0-based, in the order given) and the
/// identity on all remaining legs of `ℂ^{dims[0]} ⊗ … ⊗ ℂ^{dims[r-1]}`.
///
/// With `dims = [n, k, m]` and `legs = [0, 2]` this is the operator usually
/// written `X₁₃`.
pub fn leg_embed(x: &CMatrix, legs: &[usize], dims: &[usize]) -> Result<CMatrix> {
    let mut seen = vec![false; dims.len()];
    for &l in legs {
        if l >= dims.len() || seen[l] {
            return Err(Error::DimensionMismatch(format!(
                "leg list {legs:?} invalid for {} legs",
                dims.len()
            )));
        }
        seen[l] = true;
    }
    let leg_dims: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
    let k: usize = leg_dims.iter().product();
    if x.shape() != (k, k) {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{} but legs {legs:?} span dimension {k}",
            x.nrows(),
            x.ncols()
        )));
    }
    let total: usize = dims.iter().product();
    let mut out = CMatrix::zeros(total, total);
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    let mut leg_row = vec![0; legs.len()];
    let mut leg_col = vec![0; legs.len()];
    for r in 0..total {
        digits(r, dims, &mut row_digits);
        for (slot, &l) in leg_row.iter_mut().zip(legs) {
            *slot = row_digits[l];
        }
        let xr = undigits(&leg_row, &leg_dims);
        col_digits.copy_from_slice(&row_digits);
        for xc in 0..k {
            digits(xc, &leg_dims, &mut leg_col);
            for (&v, &l) in leg_col.iter().zip(legs) {
                col_digits[l] = v;
            }
            let v = x[(xr, xc)];
            if v != ZERO {
                out[(r, undigits(&col_digits, dims))] = v;
            }
        }
    }
    Ok(out)
}

/// Stacks column-vectorised matrices side by side.
fn stack_columns(vectors: &[CMatrix]) -> Result<CMatrix> {
    let shape = vectors[0].shape();
    let len = shape.0 * shape.1;
    let mut out = CMatrix::zeros(len, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.shape() != shape {
            return Err(Error::DimensionMismatch(
                "rank_of_span inputs differ in shape".into(),
            ));
        }
        out.column_mut(j).copy_from_slice(v.as_slice());
    }
    Ok(out)
}

/// Singular values of `a`, largest first.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Numerical rank: number of singular values at least `rel_tol · σ_max`.
pub fn matrix_rank(a: &CMatrix, tol: Tolerance) -> usize {
    let s = singular_values(a);
    let Some(&smax) = s.first() else { return 0 };
    if smax <= tol.abs_tol {
        return 0;
    }
    let cut = tol.rank_cutoff(smax);
    s.iter().filter(|&&x| x >= cut).count()
}

/// Dimension of the span of a list of equally shaped matrices.
pub fn rank_of_span(vectors: &[CMatrix], tol: Tolerance) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let stacked = stack_columns(vectors)?;
    Ok(matrix_rank(&stacked, tol))
}

/// Hermitian eigendecomposition with eigenvalues in ascending order.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.nrows();
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Positive semidefiniteness: Hermitian within tolerance and no eigenvalue
/// below `-tol.bound(scale)`.
pub fn psd_check(g: &CMatrix, tol: Tolerance) -> bool {
    if !g.is_square() {
        return false;
    }
    let scale = max_abs(g);
    if max_abs_diff(g, &g.adjoint()) > tol.bound(scale) {
        return false;
    }
    if g.nrows() == 0 {
        return true;
    }
    let (vals, _) = hermitian_eigen(g);
    vals[0] >= -tol.bound(scale)
}

/// Square root and inverse square root of a positive definite matrix.
pub fn sqrt_psd(g: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let (vals, vecs) = hermitian_eigen(g);
    if vals.iter().any(|&v| v <= 0.0) {
        return Err(Error::Numerical(
            "square root requested for a non-positive-definite matrix".into(),
        ));
    }
    let sq = CVector::from_iterator(vals.len(), vals.iter().map(|v| c(v.sqrt(), 0.0)));
    let isq = CVector::from_iterator(vals.len(), vals.iter().map(|v| c(1.0 / v.sqrt(), 0.0)));
    let root = &vecs * CMatrix::from_diagonal(&sq) * vecs.adjoint();
    let inv_root = &vecs * CMatrix::from_diagonal(&isq) * vecs.adjoint();
    Ok((root, inv_root))
}

/// Least-squares solution of `A·X = B` together with a basis of `ker A`.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub x: CMatrix,
    pub residual: f64,
    pub nullspace: Vec<CVector>,
}

/// Solves `A·X = B` in the least-squares sense through an SVD.
///
/// Returns [`Error::NoSolution`] when the best residual `max|A·X − B|`
/// exceeds `tol.bound(max|B|)`. The nullspace basis is orthonormal.
pub fn solve_linear(a: &CMatrix, b: &CMatrix, tol: Tolerance) -> Result<LinearSolution> {
    let (m, n) = a.shape();
    if b.nrows() != m {
        return Err(Error::DimensionMismatch(format!(
            "A has {m} rows but B has {}",
            b.nrows()
        )));
    }
    // Pad wide systems with zero rows so that the SVD exposes the full kernel.
    let padded;
    let a_sq = if m < n {
        padded = a.clone().resize_vertically(n, ZERO);
        &padded
    } else {
        a
    };
    let svd = a_sq.clone().svd(true, true);
    let u = svd.u.as_ref().expect("svd computed with u");
    let v_t = svd.v_t.as_ref().expect("svd computed with v_t");
    let smax = svd
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    let cut = if smax <= tol.abs_tol {
        f64::INFINITY
    } else {
        tol.rank_cutoff(smax)
    };
    let b_sq = if m < n {
        b.clone().resize_vertically(n, ZERO)
    } else {
        b.clone()
    };
    let mut x = CMatrix::zeros(n, b.ncols());
    let mut nullspace = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        let v_k: CVector = v_t.row(k).adjoint();
        if s >= cut {
            let coeff = u.column(k).adjoint() * &b_sq / c(s, 0.0);
            x += &v_k * coeff;
        } else {
            nullspace.push(v_k);
        }
    }
    let residual = max_abs_diff(&(a * &x), b);
    if !tol.accepts(residual, max_abs(b)) {
        return Err(Error::NoSolution { residual });
    }
    Ok(LinearSolution {
        x,
        residual,
        nullspace,
    })
}

/// Orthonormal basis of `ker A`.
pub fn nullspace(a: &CMatrix, tol: Tolerance) -> Vec<CVector> {
    let zero = CMatrix::zeros(a.nrows(), 1);
    solve_linear(a, &zero, tol)
        .map(|s| s.nullspace)
        .unwrap_or_default()
}

/// Kernel of a positive semidefinite (normal-equation) matrix `N = A†A`:
/// eigenvectors whose eigenvalue is at most `rel · λ_max`.
pub fn psd_kernel(n: &CMatrix, rel: f64) -> Vec<CVector> {
    if n.nrows() == 0 {
        return Vec::new();
    }
    let (vals, vecs) = hermitian_eigen(n);
    let lmax = vals.last().copied().unwrap_or(0.0).max(0.0);
    if lmax == 0.0 {
        return (0..n.ncols())
            .map(|i| vecs.column(i).into_owned())
            .collect();
    }
    let cut = rel * lmax;
    vals.iter()
        .enumerate()
        .filter(|(_, &v)| v <= cut)
        .map(|(i, _)| vecs.column(i).into_owned())
        .collect()
}

/// Orthonormal basis of the column span.
pub fn orthonormal_span(a: &CMatrix, tol: Tolerance) -> CMatrix {
    if a.ncols() == 0 || a.nrows() == 0 {
        return CMatrix::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("svd computed with u");
    let smax = svd
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    if smax <= tol.abs_tol {
        return CMatrix::zeros(a.nrows(), 0);
    }
    let cut = tol.rank_cutoff(smax);
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s >= cut)
        .map(|(i, _)| i)
        .collect();
    let mut out = CMatrix::zeros(a.nrows(), keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        out.set_column(dst, &u.column(src));
    }
    out
}

/// Eigenvalues of a general complex square matrix (complex Schur form).
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let schur = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

/// Groups sorted reals into clusters whose consecutive members differ by at
/// most `gap`; returns index ranges into the input.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::random::random_matrix;

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&identity(2), &identity(3)), identity(6));
        let e11 = matrix_unit(2, 2, 0, 0);
        assert_eq!(kron(&e11, &e11), matrix_unit(4, 4, 0, 0));
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 2);
        let cm = random_matrix(&mut rng, 2, 2);
        let d = random_matrix(&mut rng, 2, 2);
        // Oracle: multiply the 4x4 Kronecker blocks entry by entry.
        let lhs = kron(&a, &b) * kron(&cm, &d);
        let mut oracle = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let mut acc = ZERO;
                        for p in 0..2 {
                            for q in 0..2 {
                                acc += a[(i, p)] * b[(k, q)] * cm[(p, j)] * d[(q, l)];
                            }
                        }
                        oracle[(i * 2 + k, j * 2 + l)] = acc;
                    }
                }
            }
        }
        assert!(max_abs_diff(&lhs, &oracle) < 1e-12);
        assert!(max_abs_diff(&lhs, &kron(&(&a * &cm), &(&b * &d))) < 1e-12);
    }

    #[test]
    fn flip_basics() {
        assert_eq!(flip(1, 3), identity(3));
        let e1 = basis_vector(2, 0);
        let e2 = basis_vector(2, 1);
        assert_eq!(flip(2, 2) * kron_vec(&e1, &e2), kron_vec(&e2, &e1));
        for (n, m) in [(2, 3), (3, 4), (1, 5)] {
            assert_eq!(flip(n, m) * flip(m, n), identity(n * m));
        }
    }

    #[test]
    fn leg_embed_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_matrix(&mut rng, 6, 6);
        assert_eq!(leg_embed(&x, &[0, 1], &[2, 3]).unwrap(), x);

        // a ⊗ b placed on legs 1 and 3 equals a ⊗ 1 ⊗ b.
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 3, 3);
        let emb = leg_embed(&kron(&a, &b), &[0, 2], &[2, 4, 3]).unwrap();
        let direct = kron(&kron(&a, &identity(4)), &b);
        assert!(max_abs_diff(&emb, &direct) < 1e-12);

        assert!(leg_embed(&x, &[0, 0], &[2, 3]).is_err());
        assert!(leg_embed(&x, &[0], &[2, 3]).is_err());
    }

    #[test]
    fn leg_embed_matches_three_index_contraction() {
        // W₂₃W₁₃ on ℂ²⊗ℂ²⊗ℂ³ against an explicit index loop.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = random_matrix(&mut rng, 6, 6);
        let dims = [2, 2, 3];
        let lhs = leg_embed(&w, &[1, 2], &dims).unwrap() * leg_embed(&w, &[0, 2], &dims).unwrap();
        let mut oracle = CMatrix::zeros(12, 12);
        let idx = |a: usize, b: usize, cc: usize| (a * 2 + b) * 3 + cc;
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..3 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            for c2 in 0..3 {
                                // (W₂₃)[(a,b,c),(a,b',c')] (W₁₃)[(a,b',c'),(a2,b',c2)]
                                let mut acc = ZERO;
                                if b2 < 2 {
                                    for cm in 0..3 {
                                        let w23 = w[(b * 3 + cc, b2 * 3 + cm)];
                                        let w13 = w[(a * 3 + cm, a2 * 3 + c2)];
                                        acc += w23 * w13;
                                    }
                                }
                                oracle[(idx(a, b, cc), idx(a2, b2, c2))] = acc;
                            }
                        }
                    }
                }
            }
        }
        assert!(max_abs_diff(&lhs, &oracle) < 1e-12);
    }

    #[test]
    fn rank_cases() {
        let tol = Tolerance::default();
        let e1 = CMatrix::from_column_slice(2, 1, &[ONE, ZERO]);
        let e2 = CMatrix::from_column_slice(2, 1, &[ZERO, ONE]);
        let sum = &e1 + &e2;
        assert_eq!(rank_of_span(&[e1, e2, sum], tol).unwrap(), 2);
        assert_eq!(rank_of_span(&[CMatrix::zeros(3, 1)], tol).unwrap(), 0);
        assert_eq!(rank_of_span(&[], tol).unwrap(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 1..6 {
            let m = random_matrix(&mut rng, k, k);
            // Gram determinant oracle: independent iff det(M†M) ≠ 0.
            assert!((m.adjoint() * &m).determinant().norm() > 1e-8);
            let cols: Vec<CMatrix> = (0..k)
                .map(|j| col_matrix(&m.column(j).into_owned()))
                .collect();
            assert_eq!(rank_of_span(&cols, tol).unwrap(), k);
        }
    }

    #[test]
    fn psd_cases() {
        let tol = Tolerance::default();
        assert!(psd_check(&identity(3), tol));
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE, -ONE]));
        assert!(!psd_check(&d, tol));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&mut rng, 4, 4);
        assert!(psd_check(&(m.adjoint() * &m), tol));
    }

    #[test]
    fn solve_cases() {
        let tol = Tolerance::default();
        let v = CMatrix::from_column_slice(3, 1, &[c(1.0, 2.0), c(-1.0, 0.5), c(0.0, 3.0)]);
        let s = solve_linear(&identity(3), &v, tol).unwrap();
        assert!(max_abs_diff(&s.x, &v) < 1e-12);
        assert!(s.nullspace.is_empty());

        let err = solve_linear(&CMatrix::zeros(3, 3), &v, tol).unwrap_err();
        assert!(matches!(err, Error::NoSolution { .. }));

        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_matrix(&mut rng, 5, 5);
        let b = random_matrix(&mut rng, 5, 2);
        let s = solve_linear(&a, &b, tol).unwrap();
        assert!(max_abs_diff(&(&a * &s.x), &b) < 1e-9);
    }

    #[test]
    fn solve_reports_nullspace_of_wide_system() {
        let tol = Tolerance::default();
        let a = CMatrix::from_row_slice(1, 3, &[ONE, ONE, ZERO]);
        let b = CMatrix::from_element(1, 1, ONE);
        let s = solve_linear(&a, &b, tol).unwrap();
        assert_eq!(s.nullspace.len(), 2);
        for v in &s.nullspace {
            assert!((&a * v).norm() < 1e-12);
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(1e-9, 1e-9).is_ok());
        assert!(Tolerance::new(1.0, 1e-9).is_err());
        assert!(Tolerance::new(-1e-3, 1e-9).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn clusters() {
        let v = [0.0, 1e-12, 1.0, 1.0 + 1e-11, 3.0];
        let cl = cluster_sorted(&v, 1e-7);
        assert_eq!(cl, vec![0..2, 2..4, 4..5]);
    }
}
