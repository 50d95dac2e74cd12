//! Corepresentations: matrices `U = [u_ij]` with entries in the algebra and
//! `Δ(u_ij) = Σ_k u_ik ⊗ u_kj`.
//!
//! Scalar matrices act on the first leg: `((T⊗𝟙)U)_ij = Σ_k T_ik u_kj`.
//! Intertwiners from `U` to `V` are the `T` with `(T⊗𝟙)U = V(T⊗𝟙)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopfcore::HopfData;
use crate::measures::{haar_solve, Functional};
use crate::random::{random_vector, QgRng};
use crate::tenscore::{
    c, cluster_sorted, hermitian_eigen, identity, kron_vec, max_abs, max_abs_diff, max_abs_vec,
    psd_kernel, rank_of_span, col_matrix, sqrt_psd, trace, CMatrix, CVector, Tolerance, C64,
    ZERO,
};

/// A square matrix over the host algebra; `coeffs[i * size + j]` is `u_ij`.
#[derive(Debug, Clone)]
pub struct Corep {
    host: Arc<HopfData>,
    size: usize,
    coeffs: Vec<CVector>,
}

impl Corep {
    pub fn new(host: Arc<HopfData>, size: usize, coeffs: Vec<CVector>) -> Result<Self> {
        if size == 0 || coeffs.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {size}x{size} corepresentation",
                coeffs.len()
            )));
        }
        let dim = host.dim();
        for v in &coeffs {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(
                    "coefficient length differs from the algebra dimension".into(),
                ));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite("corepresentation coefficient".into()));
            }
        }
        Ok(Corep { host, size, coeffs })
    }

    /// The one-dimensional corepresentation `[𝟙]`.
    pub fn trivial(host: Arc<HopfData>) -> Self {
        let one = host.alg.unit().clone();
        Corep {
            host,
            size: 1,
            coeffs: vec![one],
        }
    }

    /// `[g]` for a group-like element `g`.
    pub fn one_dimensional(host: Arc<HopfData>, g: CVector) -> Result<Self> {
        Corep::new(host, 1, vec![g])
    }

    /// The regular corepresentation `u_ij = (δ_i ⊗ id)Δ(e_j)`, whose
    /// coefficients span the whole algebra.
    pub fn regular(host: Arc<HopfData>) -> Self {
        let n = host.dim();
        let mut coeffs = vec![CVector::zeros(n); n * n];
        for j in 0..n {
            for &((i, k), z) in host.coalg.delta_terms(j) {
                coeffs[i * n + j][k] += z;
            }
        }
        Corep {
            host,
            size: n,
            coeffs,
        }
    }

    pub fn host(&self) -> &Arc<HopfData> {
        &self.host
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeff(&self, i: usize, j: usize) -> &CVector {
        &self.coeffs[i * self.size + j]
    }

    pub fn coeffs(&self) -> &[CVector] {
        &self.coeffs
    }

    fn with_coeffs(&self, size: usize, coeffs: Vec<CVector>) -> Corep {
        Corep {
            host: self.host.clone(),
            size,
            coeffs,
        }
    }

    /// Entrywise `(T⊗𝟙)U(R⊗𝟙)` for scalar matrices `T` (k×n) and `R` (n×k).
    pub fn sandwich(&self, t: &CMatrix, r: &CMatrix) -> Corep {
        let n = self.size;
        let k = t.nrows();
        let dim = self.host.dim();
        // First (U(R⊗𝟙))_aj, then apply T on the left.
        let mut ur = vec![CVector::zeros(dim); n * k];
        for a in 0..n {
            for b in 0..n {
                let u = &self.coeffs[a * n + b];
                for j in 0..k {
                    let w = r[(b, j)];
                    if w != ZERO {
                        ur[a * k + j] += u * w;
                    }
                }
            }
        }
        let mut out = vec![CVector::zeros(dim); k * k];
        for i in 0..k {
            for a in 0..n {
                let w = t[(i, a)];
                if w == ZERO {
                    continue;
                }
                for j in 0..k {
                    out[i * k + j] += &ur[a * k + j] * w;
                }
            }
        }
        self.with_coeffs(k, out)
    }

    /// The matrix `U*` with entries `(U*)_ij = u_ji*`.
    pub fn star(&self) -> Corep {
        let n = self.size;
        let a = &self.host.alg;
        let coeffs = (0..n * n)
            .map(|p| a.star(&self.coeffs[(p % n) * n + p / n]))
            .collect();
        self.with_coeffs(n, coeffs)
    }

    /// Product in `M_n(A)`.
    pub fn mat_mul(&self, other: &Corep) -> Corep {
        let n = self.size;
        let a = &self.host.alg;
        let mut out = vec![CVector::zeros(self.host.dim()); n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += a.mul(&self.coeffs[i * n + k], &other.coeffs[k * n + j]);
                }
            }
        }
        self.with_coeffs(n, out)
    }

    /// Applies a linear map of the algebra to every entry.
    pub fn map_entries(&self, f: &CMatrix) -> Corep {
        let coeffs = self.coeffs.iter().map(|v| f * v).collect();
        self.with_coeffs(self.size, coeffs)
    }

    /// `max |Δ(u_ij) − Σ_k u_ik ⊗ u_kj|`.
    pub fn corep_residual(&self) -> f64 {
        let n = self.size;
        let mut res: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.host.coalg.apply(&self.coeffs[i * n + j]);
                let mut rhs = CVector::zeros(lhs.len());
                for k in 0..n {
                    rhs += kron_vec(&self.coeffs[i * n + k], &self.coeffs[k * n + j]);
                }
                res = res.max(crate::tenscore::max_abs_diff_vec(&lhs, &rhs));
            }
        }
        res
    }

    /// `max` of the residuals of `U*U = 𝟙` and `UU* = 𝟙`.
    pub fn unitarity_residual(&self) -> f64 {
        let s = self.star();
        let id = self.identity_matrix();
        s.mat_mul(self).distance(&id).max(self.mat_mul(&s).distance(&id))
    }

    fn identity_matrix(&self) -> Corep {
        let n = self.size;
        let one = self.host.alg.unit();
        let coeffs = (0..n * n)
            .map(|p| {
                if p / n == p % n {
                    one.clone()
                } else {
                    CVector::zeros(one.len())
                }
            })
            .collect();
        self.with_coeffs(n, coeffs)
    }

    /// Sup-norm distance between coefficient tensors of equal size.
    pub fn distance(&self, other: &Corep) -> f64 {
        assert_eq!(self.size, other.size, "corepresentation sizes differ");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |acc, (x, y)| acc.max(crate::tenscore::max_abs_diff_vec(x, y)))
    }

    /// Matrix of left multiplication by `U` on `A^n`; invertible iff `U` is.
    fn left_action(&self) -> CMatrix {
        let n = self.size;
        let d = self.host.dim();
        let mut out = CMatrix::zeros(n * d, n * d);
        for i in 0..n {
            for j in 0..n {
                let l = self.host.alg.left_mult(&self.coeffs[i * n + j]);
                out.view_mut((i * d, j * d), (d, d)).copy_from(&l);
            }
        }
        out
    }

    pub fn is_invertible(&self, tol: Tolerance) -> bool {
        let s = crate::tenscore::singular_values(&self.left_action());
        match (s.first(), s.last()) {
            (Some(&hi), Some(&lo)) => hi > 0.0 && lo > tol.rank_cutoff(hi).max(tol.abs_tol),
            _ => false,
        }
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(max_abs_vec(v)))
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        tol.accepts(self.unitarity_residual(), 1.0)
    }
}

/// The corepresentation identity plus invertibility in `M_n(A)`.
pub fn is_corep(u: &Corep, tol: Tolerance) -> bool {
    let scale = u.scale().powi(2).max(1.0);
    tol.accepts(u.corep_residual(), scale) && u.is_invertible(tol)
}

fn same_host(u: &Corep, v: &Corep) -> Result<()> {
    if Arc::ptr_eq(&u.host, &v.host) {
        Ok(())
    } else {
        Err(Error::HostMismatch)
    }
}

pub fn direct_sum(u: &Corep, v: &Corep) -> Result<Corep> {
    same_host(u, v)?;
    let (n, m) = (u.size, v.size);
    let s = n + m;
    let dim = u.host.dim();
    let mut coeffs = vec![CVector::zeros(dim); s * s];
    for i in 0..n {
        for j in 0..n {
            coeffs[i * s + j] = u.coeffs[i * n + j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            coeffs[(n + i) * s + n + j] = v.coeffs[i * m + j].clone();
        }
    }
    Ok(u.with_coeffs(s, coeffs))
}

/// `[U⊗V]_{(i,k),(j,l)} = u_ij v_kl` with `(i,k) ↦ i·m + k`.
pub fn tensor_prod(u: &Corep, v: &Corep) -> Result<Corep> {
    same_host(u, v)?;
    let (n, m) = (u.size, v.size);
    let s = n * m;
    let a = &u.host.alg;
    let mut coeffs = vec![CVector::zeros(u.host.dim()); s * s];
    for i in 0..n {
        for k in 0..m {
            for j in 0..n {
                for l in 0..m {
                    coeffs[(i * m + k) * s + j * m + l] =
                        a.mul(&u.coeffs[i * n + j], &v.coeffs[k * m + l]);
                }
            }
        }
    }
    Ok(u.with_coeffs(s, coeffs))
}

/// The conjugate corepresentation `Ū = [u_ij*]`.
pub fn adjoint(u: &Corep) -> Corep {
    let coeffs = u.coeffs.iter().map(|x| u.host.alg.star(x)).collect();
    u.with_coeffs(u.size, coeffs)
}

fn inner(x: &CVector, y: &CVector) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Residual of `(T⊗𝟙)U = V(T⊗𝟙)` for a `size_v × size_u` matrix `T`.
pub fn intertwiner_residual(t: &CMatrix, u: &Corep, v: &Corep) -> f64 {
    let (n, m) = (u.size, v.size);
    let dim = u.host.dim();
    let mut res: f64 = 0.0;
    for i in 0..m {
        for j in 0..n {
            let mut r = CVector::zeros(dim);
            for k in 0..n {
                if t[(i, k)] != ZERO {
                    r += &u.coeffs[k * n + j] * t[(i, k)];
                }
            }
            for k in 0..m {
                if t[(k, j)] != ZERO {
                    r -= &v.coeffs[i * m + k] * t[(k, j)];
                }
            }
            res = res.max(max_abs_vec(&r));
        }
    }
    res
}

/// Basis of `{T : (T⊗𝟙)U = V(T⊗𝟙)}`, orthonormal for the Frobenius inner
/// product.
///
/// The sum of squared coordinate residuals is a Hermitian form in `T`,
/// `N[(a,b),(c,d)] = δ_ac Σ_j⟨u_bj,u_dj⟩ − ⟨u_bd,v_ac⟩ − ⟨v_ca,u_db⟩ +
/// δ_bd Σ_i⟨v_ia,v_ic⟩`; the intertwiners are its kernel.
pub fn intertwiners(u: &Corep, v: &Corep, tol: Tolerance) -> Result<Vec<CMatrix>> {
    same_host(u, v)?;
    let (n, m) = (u.size, v.size);
    let gu = CMatrix::from_fn(n, n, |b, d| {
        (0..n).map(|j| inner(&u.coeffs[b * n + j], &u.coeffs[d * n + j])).sum()
    });
    let gv = CMatrix::from_fn(m, m, |a, cc| {
        (0..m).map(|i| inner(&v.coeffs[i * m + a], &v.coeffs[i * m + cc])).sum()
    });
    // cross[(b,d),(a,c)] = ⟨u_bd, v_ac⟩
    let cross = CMatrix::from_fn(n * n, m * m, |p, q| inner(&u.coeffs[p], &v.coeffs[q]));
    let mut big = CMatrix::zeros(m * n, m * n);
    for a in 0..m {
        for b in 0..n {
            for cc in 0..m {
                for d in 0..n {
                    let mut z = -cross[(b * n + d, a * m + cc)] - cross[(d * n + b, cc * m + a)].conj();
                    if a == cc {
                        z += gu[(b, d)];
                    }
                    if b == d {
                        z += gv[(a, cc)];
                    }
                    big[(a * n + b, cc * n + d)] = z;
                }
            }
        }
    }
    let kernel = psd_kernel(&big, 1e-10);
    let scale = u.scale().max(v.scale()).max(1.0);
    let accept = Tolerance::new(tol.abs_tol.max(1e-12), tol.rel_tol.max(1e-12))?.scaled(100.0);
    Ok(kernel
        .into_iter()
        .map(|k| CMatrix::from_fn(m, n, |a, b| k[a * n + b]))
        .filter(|t| accept.accepts(intertwiner_residual(t, u, v), scale))
        .collect())
}

pub fn is_irreducible(u: &Corep, tol: Tolerance) -> Result<bool> {
    Ok(intertwiners(u, u, tol)?.len() == 1)
}

/// Unitary equivalent `V = (y⊗𝟙)U(y⁻¹⊗𝟙)` with `y = ((id⊗𝒉)(U*U))^{1/2}`.
pub fn unitarize_with(u: &Corep, haar: &Functional) -> Result<(Corep, CMatrix)> {
    if !Arc::ptr_eq(u.host(), haar.host()) {
        return Err(Error::HostMismatch);
    }
    let n = u.size;
    let uu = u.star().mat_mul(u);
    let y2 = CMatrix::from_fn(n, n, |i, j| haar.eval(&uu.coeffs[i * n + j]));
    let y2 = (&y2 + y2.adjoint()) * c(0.5, 0.0);
    let (y, y_inv) = sqrt_psd(&y2).map_err(|_| Error::NotInvertible)?;
    let v = u.sandwich(&y, &y_inv);
    Ok((v, y))
}

pub fn unitarize(u: &Corep, tol: Tolerance) -> Result<(Corep, CMatrix)> {
    if !u.is_invertible(tol) {
        return Err(Error::NotInvertible);
    }
    let haar = haar_solve(u.host(), tol)?.state;
    let (v, y) = unitarize_with(u, &haar)?;
    let res = v.unitarity_residual();
    if !tol.scaled(100.0).accepts(res, 1.0) {
        return Err(Error::NotUnitary { residual: res });
    }
    Ok((v, y))
}

/// One isotypic component of a decomposition.
#[derive(Debug, Clone)]
pub struct Summand {
    /// Unitary irreducible representative.
    pub irrep: Corep,
    pub multiplicity: usize,
    /// Isometries `P` (size × n_α) with `(P⊗𝟙)U^α = U(P⊗𝟙)`, one per copy.
    pub isometries: Vec<CMatrix>,
}

#[derive(Debug, Clone)]
pub struct IrrDecomposition {
    pub summands: Vec<Summand>,
    /// `max |Σ (P⊗𝟙)U^α(P*⊗𝟙) − U|` together with `|Σ PP* − I|`.
    pub residual: f64,
}

impl IrrDecomposition {
    /// Sizes of the distinct summands in order.
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.irrep.size()).collect()
    }
}

fn random_hermitian_in(basis: &[CMatrix], rng: &mut QgRng) -> CMatrix {
    let coeffs = random_vector(rng, basis.len());
    let mut x = CMatrix::zeros(basis[0].nrows(), basis[0].ncols());
    for (t, w) in basis.iter().zip(coeffs.iter()) {
        x += t * *w;
    }
    (&x + x.adjoint()) * c(0.5, 0.0)
}

/// Splits a unitary corepresentation into irreducible pieces, returning the
/// isometries of the pieces.
fn split(u: &Corep, tol: Tolerance, rng: &mut QgRng, depth: usize) -> Result<Vec<CMatrix>> {
    let comm = intertwiners(u, u, tol)?;
    if comm.len() <= 1 {
        return Ok(vec![identity(u.size)]);
    }
    if depth > 16 {
        return Err(Error::Numerical("commutant does not split".into()));
    }
    let x = random_hermitian_in(&comm, rng);
    let (vals, vecs) = hermitian_eigen(&x);
    let spread = vals.last().unwrap() - vals.first().unwrap();
    let groups = cluster_sorted(&vals, (100.0 * tol.abs_tol).max(1e-9 * spread));
    if groups.len() == 1 {
        return split(u, tol, rng, depth + 1);
    }
    let mut out = Vec::new();
    for g in groups {
        let p = vecs.columns(g.start, g.len()).into_owned();
        let sub = u.sandwich(&p.adjoint(), &p);
        for q in split(&sub, tol, rng, depth + 1)? {
            out.push(&p * q);
        }
    }
    Ok(out)
}

/// Decomposes a unitary corepresentation into irreducibles grouped by
/// equivalence class.
pub fn decompose(u: &Corep, tol: Tolerance, rng: &mut QgRng) -> Result<IrrDecomposition> {
    let res = u.unitarity_residual();
    if !tol.scaled(100.0).accepts(res, 1.0) {
        return Err(Error::NotUnitary { residual: res });
    }
    let pieces = split(u, tol, rng, 0)?;
    let mut summands: Vec<Summand> = Vec::new();
    'piece: for p in pieces {
        let sub = u.sandwich(&p.adjoint(), &p);
        for s in summands.iter_mut() {
            if s.irrep.size != sub.size {
                continue;
            }
            let ts = intertwiners(&s.irrep, &sub, tol)?;
            if let Some(t) = ts.first() {
                // Schur: t is a multiple of a unitary; normalise it.
                let k = sub.size as f64;
                let norm = (trace(&(t.adjoint() * t)).re / k).sqrt();
                let t = t / c(norm, 0.0);
                s.isometries.push(&p * t);
                s.multiplicity += 1;
                continue 'piece;
            }
        }
        summands.push(Summand {
            irrep: sub,
            multiplicity: 1,
            isometries: vec![p],
        });
    }
    let residual = reassembly_residual(u, &summands);
    Ok(IrrDecomposition { summands, residual })
}

fn reassembly_residual(u: &Corep, summands: &[Summand]) -> f64 {
    let n = u.size;
    let dim = u.host.dim();
    let mut acc = vec![CVector::zeros(dim); n * n];
    let mut proj = CMatrix::zeros(n, n);
    for s in summands {
        for p in &s.isometries {
            let piece = s.irrep.sandwich(p, &p.adjoint());
            for (a, b) in acc.iter_mut().zip(piece.coeffs.iter()) {
                *a += b;
            }
            proj += p * p.adjoint();
        }
    }
    let rebuilt = u.with_coeffs(n, acc);
    rebuilt.distance(u).max(max_abs_diff(&proj, &identity(n)))
}

/// Positive matrix `Q_α` with quantum dimension `d = Tr Q`.
#[derive(Debug, Clone)]
pub struct QMatrix {
    pub q: CMatrix,
    pub d: f64,
}

impl QMatrix {
    /// Normalises a positive definite `M` to `Q = cM` with
    /// `Tr Q = Tr Q⁻¹`, i.e. `c = sqrt(Tr M⁻¹ / Tr M)`.
    pub fn from_gram(m: &CMatrix, tol: Tolerance) -> Result<Self> {
        let m = (m + m.adjoint()) * c(0.5, 0.0);
        let (vals, _) = hermitian_eigen(&m);
        if vals.is_empty() || vals[0] <= tol.bound(vals[vals.len() - 1].abs()) {
            return Err(Error::SingularGram);
        }
        let inv = m.clone().try_inverse().ok_or(Error::SingularGram)?;
        let scale = (trace(&inv).re / trace(&m).re).sqrt();
        let q = m * c(scale, 0.0);
        let d = trace(&q).re;
        Ok(QMatrix { q, d })
    }

    pub fn size(&self) -> usize {
        self.q.nrows()
    }

    pub fn inverse(&self) -> CMatrix {
        self.q.clone().try_inverse().expect("Q is positive definite")
    }

    /// `|Tr Q − Tr Q⁻¹|` and `Tr Q − n` (nonnegative when valid).
    pub fn trace_gaps(&self) -> (f64, f64) {
        let tq = trace(&self.q).re;
        let tqi = trace(&self.inverse()).re;
        ((tq - tqi).abs(), tq - self.size() as f64)
    }

    pub fn identity_residual(&self) -> f64 {
        max_abs_diff(&self.q, &identity(self.size()))
    }
}

/// `M_lj = Σ_i 𝒉(u_ij u_il*)`, normalised to `Tr Q = Tr Q⁻¹`.
pub fn q_matrix_gram(alpha: &Corep, haar: &Functional, tol: Tolerance) -> Result<QMatrix> {
    if !Arc::ptr_eq(alpha.host(), haar.host()) {
        return Err(Error::HostMismatch);
    }
    let n = alpha.size;
    let a = &alpha.host.alg;
    let stars: Vec<CVector> = alpha.coeffs.iter().map(|x| a.star(x)).collect();
    let m = CMatrix::from_fn(n, n, |l, j| {
        (0..n)
            .map(|i| haar.eval(&a.mul(&alpha.coeffs[i * n + j], &stars[i * n + l])))
            .sum()
    });
    QMatrix::from_gram(&m, tol)
}

/// `Q_α` from `(Q⊗𝟙)U = ((id⊗S²)U)(Q⊗𝟙)`, fixed up to scale by positivity
/// and `Tr Q = Tr Q⁻¹`.
pub fn q_matrix_antipode(alpha: &Corep, tol: Tolerance) -> Result<QMatrix> {
    let s = alpha.host.antipode()?;
    let s2 = alpha.map_entries(&(s * s));
    let sols = intertwiners(alpha, &s2, tol)?;
    let t = match sols.len() {
        1 => sols.into_iter().next().unwrap(),
        0 => return Err(Error::NoSolution { residual: f64::NAN }),
        k => return Err(Error::NotUnique { dim: k }),
    };
    let tr = trace(&t);
    if tr.norm() < 1e-12 {
        return Err(Error::SingularGram);
    }
    let t = t * (tr.conj() / tr.norm());
    QMatrix::from_gram(&t, tol)
}

/// Matrix `K_pq = 𝒉(e_p e_q)` of the Haar state on products.
pub fn haar_product_matrix(haar: &Functional) -> CMatrix {
    let n = haar.host().dim();
    let a = &haar.host().alg;
    CMatrix::from_fn(n, n, |p, q| haar.eval(&a.mul_basis(p, q)))
}

/// Largest deviation from both orthogonality families
/// `𝒉(u^α_ij (u^β_kl)*) = δ_αβ δ_ik [Q_α]_lj / d_α` and
/// `𝒉((u^α_ij)* u^β_kl) = δ_αβ δ_jl [Q_α⁻¹]_ki / d_α`.
pub fn orthogonality_residual(irreps: &[Corep], qs: &[QMatrix], haar: &Functional) -> (f64, f64) {
    let k = haar_product_matrix(haar);
    let alg = &haar.host().alg;
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    for (a, (ua, qa)) in irreps.iter().zip(qs).enumerate() {
        let qa_inv = qa.inverse();
        let na = ua.size;
        for (b, ub) in irreps.iter().enumerate() {
            let nb = ub.size;
            let stars_b: Vec<CVector> = ub.coeffs.iter().map(|x| alg.star(x)).collect();
            let stars_a: Vec<CVector> = ua.coeffs.iter().map(|x| alg.star(x)).collect();
            for i in 0..na {
                for j in 0..na {
                    let x = &ua.coeffs[i * na + j];
                    let xs = &stars_a[i * na + j];
                    let kx = k.transpose() * x;
                    let kxs = k.transpose() * xs;
                    for kk in 0..nb {
                        for l in 0..nb {
                            let v1 = (kx.transpose() * &stars_b[kk * nb + l])[(0, 0)];
                            let v2 = (kxs.transpose() * &ub.coeffs[kk * nb + l])[(0, 0)];
                            let (e1, e2) = if a == b {
                                (
                                    if i == kk { qa.q[(l, j)] / qa.d } else { ZERO },
                                    if j == l { qa_inv[(kk, i)] / qa.d } else { ZERO },
                                )
                            } else {
                                (ZERO, ZERO)
                            };
                            first = first.max((v1 - e1).norm());
                            second = second.max((v2 - e2).norm());
                        }
                    }
                }
            }
        }
    }
    (first, second)
}

/// Irreducible corepresentations of a finite quantum group.
#[derive(Debug, Clone)]
pub struct IrrTable {
    pub irreps: Vec<Corep>,
    pub haar: Functional,
    /// Residual of reassembling the regular corepresentation.
    pub residual: f64,
}

impl IrrTable {
    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|u| u.size()).collect()
    }
}

/// One unitary representative per class, found by decomposing the regular
/// corepresentation. Each representative is rotated so that its Q-matrix is
/// diagonal with nonincreasing entries; the trivial corepresentation comes
/// first, then increasing size.
pub fn irr_table(h: &Arc<HopfData>, tol: Tolerance, rng: &mut QgRng) -> Result<IrrTable> {
    let haar = haar_solve(h, tol)?.state;
    let reg = Corep::regular(h.clone());
    let (reg_u, _) = unitarize_with(&reg, &haar)?;
    let dec = decompose(&reg_u, tol, rng)?;
    let mut irreps = Vec::new();
    for s in dec.summands {
        let u = s.irrep;
        let q = q_matrix_gram(&u, &haar, tol)?;
        let (vals, w) = hermitian_eigen(&q.q);
        let order: Vec<usize> = (0..vals.len()).rev().collect();
        let mut w_desc = CMatrix::zeros(w.nrows(), w.ncols());
        for (dst, &src) in order.iter().enumerate() {
            w_desc.set_column(dst, &w.column(src));
        }
        irreps.push(u.sandwich(&w_desc.adjoint(), &w_desc));
    }
    let one = h.alg.unit();
    let is_trivial = |u: &Corep| {
        u.size == 1 && crate::tenscore::max_abs_diff_vec(&u.coeffs[0], one) < 1e-8
    };
    irreps.sort_by_key(|u| (!is_trivial(u), u.size));

    let total: usize = irreps.iter().map(|u| u.size * u.size).sum();
    if total != h.dim() {
        return Err(Error::Numerical(format!(
            "irreducible dimensions give Σn² = {total}, algebra has dimension {}",
            h.dim()
        )));
    }
    let all: Vec<CMatrix> = irreps
        .iter()
        .flat_map(|u| u.coeffs.iter().map(col_matrix))
        .collect();
    if rank_of_span(&all, Tolerance::new(tol.abs_tol, 1e-8)?)? != h.dim() {
        return Err(Error::Numerical("coefficients do not span the algebra".into()));
    }
    Ok(IrrTable {
        irreps,
        haar,
        residual: dec.residual,
    })
}

/// `max |S(u_ij) − u_ji*|` for a unitary corepresentation.
pub fn antipode_coefficient_residual(u: &Corep) -> Result<f64> {
    let s = u.host.antipode()?;
    let n = u.size;
    let mut res: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = s * &u.coeffs[i * n + j];
            let rhs = u.host.alg.star(&u.coeffs[j * n + i]);
            res = res.max(crate::tenscore::max_abs_diff_vec(&lhs, &rhs));
        }
    }
    Ok(res)
}

/// The four Kac-type conditions evaluated independently.
#[derive(Debug, Clone)]
pub struct KacReport {
    pub q_identity: bool,
    pub q_residual: f64,
    pub antipode_involutive: bool,
    pub antipode_residual: f64,
    pub haar_tracial: bool,
    pub trace_residual: f64,
    pub dims_equal: bool,
    pub dim_gap: f64,
}

impl KacReport {
    pub fn is_kac(&self) -> bool {
        self.q_identity
    }

    pub fn conditions(&self) -> [bool; 4] {
        [
            self.q_identity,
            self.antipode_involutive,
            self.haar_tracial,
            self.dims_equal,
        ]
    }
}

/// Evaluates `Q_α = 𝟙 ∀α`, `S² = id`, traciality of `𝒉` and `d_α = n_α`, and
/// fails with [`Error::InconsistentConditions`] if they disagree.
pub fn is_kac(h: &Arc<HopfData>, tol: Tolerance, rng: &mut QgRng) -> Result<KacReport> {
    let table = irr_table(h, tol, rng)?;
    let check = tol.scaled(10.0);
    let mut q_res: f64 = 0.0;
    let mut dim_gap: f64 = 0.0;
    for u in &table.irreps {
        let q = q_matrix_gram(u, &table.haar, tol)?;
        q_res = q_res.max(q.identity_residual());
        dim_gap = dim_gap.max((q.d - u.size as f64).abs());
    }
    let s = h.antipode()?;
    let s_res = max_abs_diff(&(s * s), &identity(h.dim()));
    let t_res = table.haar.trace_residual();
    let report = KacReport {
        q_identity: check.accepts(q_res, 1.0),
        q_residual: q_res,
        antipode_involutive: check.accepts(s_res, max_abs(s).powi(2)),
        antipode_residual: s_res,
        haar_tracial: check.accepts(t_res, 1.0),
        trace_residual: t_res,
        dims_equal: check.accepts(dim_gap, 1.0),
        dim_gap,
    };
    let conds = report.conditions();
    if conds.iter().any(|&x| x != conds[0]) {
        return Err(Error::InconsistentConditions(format!(
            "Q = 1: {}, S² = id: {}, tracial: {}, d = n: {}",
            conds[0], conds[1], conds[2], conds[3]
        )));
    }
    Ok(report)
}
