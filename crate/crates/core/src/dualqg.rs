//! The dual discrete quantum group `Â = ⊕_α B(ℋ_α)`.
//!
//! Elements of `Â` are stored on the matrix-unit basis `e^α_ij`, flattened
//! block by block (`offset_α + i·n_α + j`). For a finite quantum group with
//! unitary irreducibles `U^α` the multiplicative unitary is
//! `W = Σ e^α_ij ⊗ u^α_ij`; every map below is computed from the matrix of
//! `W` and the Haar state.

use std::sync::Arc;

use crate::corep::{irr_table, q_matrix_gram, Corep, IrrTable, QMatrix};
use crate::error::{Error, Result};
use crate::hopfcore::{
    find_antipode, morphism_report, HopfData, StructureAlgebra, StructureCoalgebra,
    VerificationReport,
};
use crate::measures::Functional;
use crate::random::{random_matrix, QgRng};
use crate::tenscore::{
    c, identity, max_abs_diff, max_abs_diff_vec, max_abs_vec, matrix_rank, trace, CMatrix,
    CVector, Tolerance, C64, ONE, ZERO,
};

/// Where the block data came from.
#[derive(Debug, Clone)]
pub enum IrrSource {
    Finite {
        host: Arc<HopfData>,
        irreps: Vec<Corep>,
        haar: Functional,
    },
    /// Only the Q-matrices are known; no host algebra.
    Truncated,
}

/// Irreducible classes with their sizes and Q-matrices.
#[derive(Debug, Clone)]
pub struct IrrData {
    ids: Vec<String>,
    qs: Vec<QMatrix>,
    source: IrrSource,
}

fn check_q(q: &QMatrix, tol: Tolerance) -> Result<()> {
    let (gap, excess) = q.trace_gaps();
    let scale = q.d.max(1.0);
    if !tol.scaled(10.0).accepts(gap, scale) || excess < -tol.bound(scale) {
        return Err(Error::InconsistentConditions(format!(
            "Q block with Tr Q = {} violates Tr Q = Tr Q⁻¹ ≥ n",
            q.d
        )));
    }
    Ok(())
}

impl IrrData {
    /// Block data of a finite quantum group, from its irreducible table.
    pub fn from_table(table: IrrTable, tol: Tolerance) -> Result<Self> {
        let mut qs = Vec::new();
        for u in &table.irreps {
            let q = q_matrix_gram(u, &table.haar, tol)?;
            check_q(&q, tol)?;
            qs.push(q);
        }
        let host = table.haar.host().clone();
        let total: usize = table.irreps.iter().map(|u| u.size().pow(2)).sum();
        if total != host.dim() {
            return Err(Error::InconsistentConditions(format!(
                "Σn² = {total} but the algebra has dimension {}",
                host.dim()
            )));
        }
        Ok(IrrData {
            ids: (0..qs.len()).map(|a| format!("α{a}")).collect(),
            qs,
            source: IrrSource::Finite {
                host,
                irreps: table.irreps,
                haar: table.haar,
            },
        })
    }

    pub fn finite(h: &Arc<HopfData>, tol: Tolerance, rng: &mut QgRng) -> Result<Self> {
        IrrData::from_table(irr_table(h, tol, rng)?, tol)
    }

    /// Block data given only by positive matrices `Q_α`.
    pub fn truncated(qs: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        let mut out = Vec::new();
        for q in qs {
            if q.nrows() != q.ncols() || q.nrows() == 0 {
                return Err(Error::DimensionMismatch("Q blocks must be square".into()));
            }
            if max_abs_diff(&q, &q.adjoint()) > tol.bound(crate::tenscore::max_abs(&q)) {
                return Err(Error::InconsistentConditions("Q block is not Hermitian".into()));
            }
            let d = trace(&q).re;
            let qm = QMatrix { q, d };
            let (vals, _) = crate::tenscore::hermitian_eigen(&qm.q);
            if vals[0] <= 0.0 {
                return Err(Error::InconsistentConditions("Q block is not positive".into()));
            }
            check_q(&qm, tol)?;
            out.push(qm);
        }
        Ok(IrrData {
            ids: (0..out.len()).map(|a| format!("α{a}")).collect(),
            qs: out,
            source: IrrSource::Truncated,
        })
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn dims(&self) -> Vec<usize> {
        self.qs.iter().map(|q| q.size()).collect()
    }

    pub fn qs(&self) -> &[QMatrix] {
        &self.qs
    }

    pub fn source(&self) -> &IrrSource {
        &self.source
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.source, IrrSource::Finite { .. })
    }

    /// Dimension `Σ n_α²` of the block algebra.
    pub fn total_dim(&self) -> usize {
        self.dims().iter().map(|n| n * n).sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.qs.len());
        let mut acc = 0;
        for n in self.dims() {
            off.push(acc);
            acc += n * n;
        }
        off
    }

    /// Copy with block `alpha` replaced by an arbitrary matrix (unchecked);
    /// used to inject defects.
    pub fn with_q_unchecked(&self, alpha: usize, q: CMatrix) -> IrrData {
        let mut out = self.clone();
        let d = trace(&q).re;
        out.qs[alpha] = QMatrix { q, d };
        out
    }
}

/// An element of `Â`, one matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    pub blocks: Vec<CMatrix>,
}

impl DualElement {
    pub fn zeros(dims: &[usize]) -> Self {
        DualElement {
            blocks: dims.iter().map(|&n| CMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        DualElement {
            blocks: dims.iter().map(|&n| identity(n)).collect(),
        }
    }

    /// The identity of block `alpha`, zero elsewhere.
    pub fn block_unit(dims: &[usize], alpha: usize) -> Self {
        let mut x = DualElement::zeros(dims);
        x.blocks[alpha] = identity(dims[alpha]);
        x
    }

    pub fn random(dims: &[usize], rng: &mut QgRng) -> Self {
        DualElement {
            blocks: dims.iter().map(|&n| random_matrix(rng, n, n)).collect(),
        }
    }

    pub fn from_coords(dims: &[usize], v: &CVector) -> Self {
        let mut off = 0;
        let blocks = dims
            .iter()
            .map(|&n| {
                let b = CMatrix::from_fn(n, n, |i, j| v[off + i * n + j]);
                off += n * n;
                b
            })
            .collect();
        DualElement { blocks }
    }

    pub fn coords(&self) -> CVector {
        let mut out = Vec::new();
        for b in &self.blocks {
            let n = b.nrows();
            for i in 0..n {
                for j in 0..n {
                    out.push(b[(i, j)]);
                }
            }
        }
        CVector::from_vec(out)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn mul(&self, other: &DualElement) -> DualElement {
        DualElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn star(&self) -> DualElement {
        DualElement {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn add(&self, other: &DualElement) -> DualElement {
        DualElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, z: C64) -> DualElement {
        DualElement {
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    /// Blocks with an entry above `cutoff`.
    pub fn support(&self, cutoff: f64) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&a| crate::tenscore::max_abs(&self.blocks[a]) > cutoff)
            .collect()
    }

    pub fn distance(&self, other: &DualElement) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .fold(0.0, |m, (a, b)| m.max(max_abs_diff(a, b)))
    }
}

/// `𝒉̂_L(x) = Σ_β Tr(Q_β) Tr(Q_β⁻¹ x_β)`.
pub fn hhat_l(src: &IrrData, x: &DualElement) -> C64 {
    src.qs
        .iter()
        .zip(&x.blocks)
        .map(|(q, b)| c(q.d, 0.0) * trace(&(q.inverse() * b)))
        .sum()
}

/// `𝒉̂_R(x) = Σ_β Tr(Q_β) Tr(Q_β x_β)`.
pub fn hhat_r(src: &IrrData, x: &DualElement) -> C64 {
    src.qs
        .iter()
        .zip(&x.blocks)
        .map(|(q, b)| c(q.d, 0.0) * trace(&(&q.q * b)))
        .sum()
}

fn weight_row(src: &IrrData, left: bool) -> CVector {
    let mut out = Vec::new();
    for q in &src.qs {
        let m = if left { q.inverse() } else { q.q.clone() };
        let n = q.size();
        for i in 0..n {
            for j in 0..n {
                out.push(c(q.d, 0.0) * m[(j, i)]);
            }
        }
    }
    CVector::from_vec(out)
}

/// The modular element `Q = (Q_α)_α` as an element of `Â`.
pub fn modular_element(src: &IrrData) -> DualElement {
    DualElement {
        blocks: src.qs.iter().map(|q| q.q.clone()).collect(),
    }
}

/// The block algebra `⊕ M_{n_α}` on matrix units, with `e_ij* = e_ji`.
pub fn block_algebra(dims: &[usize]) -> Result<StructureAlgebra> {
    let total: usize = dims.iter().map(|n| n * n).sum();
    let mut mult = CMatrix::zeros(total, total * total);
    let mut unit = CVector::zeros(total);
    let mut star = CMatrix::zeros(total, total);
    let mut labels = Vec::with_capacity(total);
    let mut off = 0;
    for (a, &n) in dims.iter().enumerate() {
        for i in 0..n {
            unit[off + i * n + i] = ONE;
            for j in 0..n {
                labels.push(format!("e{a}_{}{}", i + 1, j + 1));
                star[(off + j * n + i, off + i * n + j)] = ONE;
                for l in 0..n {
                    mult[(off + i * n + l, (off + i * n + j) * total + off + j * n + l)] = ONE;
                }
            }
        }
        off += n * n;
    }
    StructureAlgebra::new(labels, mult, unit, star)?.with_gram(identity(total))
}

/// A unital *-algebra receiving a morphism out of `Â`.
pub trait AuxAlgebra {
    fn dim(&self) -> usize;
    fn mul(&self, x: &CVector, y: &CVector) -> CVector;
    fn star(&self, x: &CVector) -> CVector;
    fn unit(&self) -> CVector;
}

impl AuxAlgebra for StructureAlgebra {
    fn dim(&self) -> usize {
        StructureAlgebra::dim(self)
    }
    fn mul(&self, x: &CVector, y: &CVector) -> CVector {
        StructureAlgebra::mul(self, x, y)
    }
    fn star(&self, x: &CVector) -> CVector {
        StructureAlgebra::star(self, x)
    }
    fn unit(&self) -> CVector {
        StructureAlgebra::unit(self).clone()
    }
}

/// `A ⊗ A` with the factorwise product, without forming its structure tensor.
pub struct TensorSquare<'a>(pub &'a StructureAlgebra);

impl AuxAlgebra for TensorSquare<'_> {
    fn dim(&self) -> usize {
        self.0.dim().pow(2)
    }
    fn mul(&self, x: &CVector, y: &CVector) -> CVector {
        self.0.mul_tensor(x, y)
    }
    fn star(&self, x: &CVector) -> CVector {
        self.0.star_tensor(x)
    }
    fn unit(&self) -> CVector {
        crate::tenscore::kron_vec(self.0.unit(), self.0.unit())
    }
}

/// The complex numbers as a one-dimensional algebra.
pub fn scalar_algebra() -> StructureAlgebra {
    StructureAlgebra::new(
        vec!["1".into()],
        CMatrix::from_element(1, 1, ONE),
        CVector::from_element(1, ONE),
        CMatrix::from_element(1, 1, ONE),
    )
    .expect("valid one-dimensional algebra")
}

/// `V = Σ_{p,q} coeffs[p,q] f_p ⊗ e_q` in `B ⊗ A`.
#[derive(Debug, Clone)]
pub struct AuxCorep {
    pub coeffs: CMatrix,
}

/// The multiplicative unitary, block by block.
#[derive(Debug, Clone)]
pub struct BigW {
    pub blocks: Vec<Corep>,
}

impl BigW {
    /// Matrix of `W` on `Â ⊗ A`: row `(α,i,j)` holds the coordinates of
    /// `u^α_ij`.
    pub fn matrix(&self) -> CMatrix {
        let dim = self.blocks[0].host().dim();
        let rows: usize = self.blocks.iter().map(|u| u.size().pow(2)).sum();
        let mut out = CMatrix::zeros(rows, dim);
        let mut r = 0;
        for u in &self.blocks {
            for v in u.coeffs() {
                out.row_mut(r).copy_from(&v.transpose());
                r += 1;
            }
        }
        out
    }

    /// Each block is a unitary corepresentation.
    pub fn verify(&self, tol: Tolerance) -> VerificationReport {
        let mut r = VerificationReport::new();
        for (a, u) in self.blocks.iter().enumerate() {
            r.push(&format!("block{a}_unitary"), u.unitarity_residual(), 1.0, tol);
            r.push(&format!("block{a}_corep"), u.corep_residual(), 1.0, tol);
        }
        r
    }
}

/// A linear map `Â → B` with its verification checks.
#[derive(Debug, Clone)]
pub struct PhiMap {
    /// `dim B × dim Â`.
    pub matrix: CMatrix,
    pub report: VerificationReport,
}

impl PhiMap {
    pub fn apply(&self, x: &DualElement) -> CVector {
        &self.matrix * x.coords()
    }
}

/// Product of two elements of `B ⊗ A`, both as `dim B × dim A` matrices.
fn tensor_mul<B: AuxAlgebra + ?Sized>(
    b: &B,
    a: &StructureAlgebra,
    x: &CMatrix,
    y: &CMatrix,
) -> CMatrix {
    let (db, da) = (b.dim(), a.dim());
    let mut out = CMatrix::zeros(db, da);
    let xcols: Vec<CVector> = (0..da).map(|q| x.column(q).into_owned()).collect();
    let ycols: Vec<CVector> = (0..da).map(|q| y.column(q).into_owned()).collect();
    for q in 0..da {
        if max_abs_vec(&xcols[q]) == 0.0 {
            continue;
        }
        for r in 0..da {
            if max_abs_vec(&ycols[r]) == 0.0 {
                continue;
            }
            let prod = a.mul_basis(q, r);
            let bp = b.mul(&xcols[q], &ycols[r]);
            for (s, z) in prod.iter().enumerate() {
                if *z != ZERO {
                    let mut col = out.column_mut(s);
                    col += &bp * *z;
                }
            }
        }
    }
    out
}

fn tensor_star<B: AuxAlgebra + ?Sized>(b: &B, a: &StructureAlgebra, x: &CMatrix) -> CMatrix {
    let (db, da) = (b.dim(), a.dim());
    let mut out = CMatrix::zeros(db, da);
    for q in 0..da {
        let bq = b.star(&x.column(q).into_owned());
        let aq = a.star_matrix().column(q);
        for s in 0..da {
            if aq[s] != ZERO {
                let mut col = out.column_mut(s);
                col += &bq * aq[s];
            }
        }
    }
    out
}

/// The dual of a finite quantum group, with its structure maps computed.
#[derive(Debug, Clone)]
pub struct DualQG {
    src: IrrData,
    w: BigW,
    haar: Functional,
    algebra: StructureAlgebra,
    /// `H[q,r] = 𝒉(e_r e_q*)`.
    haar_pairing: CMatrix,
    fourier: CMatrix,
    fourier_inv: CMatrix,
    delta: CMatrix,
    counit: CVector,
}

impl DualQG {
    pub fn new(src: IrrData) -> Result<Self> {
        let (irreps, haar) = match &src.source {
            IrrSource::Finite { irreps, haar, .. } => (irreps.clone(), haar.clone()),
            IrrSource::Truncated => {
                return Err(Error::InvalidInput(
                    "the dual structure maps need a finite source".into(),
                ))
            }
        };
        let w = BigW { blocks: irreps };
        let host = haar.host().clone();
        let n = host.dim();
        let a = &host.alg;
        let stars: Vec<CVector> = (0..n).map(|q| a.star(&crate::tenscore::basis_vector(n, q))).collect();
        let haar_pairing =
            CMatrix::from_fn(n, n, |q, r| haar.eval(&a.mul(&crate::tenscore::basis_vector(n, r), &stars[q])));
        let algebra = block_algebra(&src.dims())?;
        let wmat = w.matrix();
        let fourier = fourier_for(&algebra, &wmat, &haar_pairing);
        // ℱ⁻¹(x) = Σ_α Σ_ij d_α (Q_α⁻¹ x_α)[j,i] u^α_ij
        let mut fourier_inv = CMatrix::zeros(n, n);
        let offsets = src.offsets();
        for (alpha, q) in src.qs.iter().enumerate() {
            let qi = q.inverse();
            let m = q.size();
            let off = offsets[alpha];
            for i in 0..m {
                for j in 0..m {
                    let u = wmat.row(off + i * m + j).transpose();
                    // (Q⁻¹x)[j,i] = Σ_k Q⁻¹[j,k] x[k,i]
                    for k in 0..m {
                        let z = c(q.d, 0.0) * qi[(j, k)];
                        let mut col = fourier_inv.column_mut(off + k * m + i);
                        col += &u * z;
                    }
                }
            }
        }
        let mut out = DualQG {
            src,
            w,
            haar,
            algebra,
            haar_pairing,
            fourier,
            fourier_inv,
            delta: CMatrix::zeros(0, 0),
            counit: CVector::zeros(0),
        };
        let sq = TensorSquare(&out.algebra);
        let v = out.w23_w13();
        out.delta = out.phi_matrix(&sq, &v);
        let one = AuxCorep {
            coeffs: crate::tenscore::row_matrix(host.alg.unit()),
        };
        out.counit = out.phi_matrix(&scalar_algebra(), &one).row(0).transpose();
        Ok(out)
    }

    pub fn src(&self) -> &IrrData {
        &self.src
    }

    pub fn w(&self) -> &BigW {
        &self.w
    }

    pub fn haar(&self) -> &Functional {
        &self.haar
    }

    pub fn host(&self) -> &Arc<HopfData> {
        self.haar.host()
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn dims(&self) -> Vec<usize> {
        self.src.dims()
    }

    pub fn fourier_matrix(&self) -> &CMatrix {
        &self.fourier
    }

    pub fn fourier_inv_matrix(&self) -> &CMatrix {
        &self.fourier_inv
    }

    /// `ℱ(a) = (id⊗𝒉)((𝟙⊗a)W*)`, so `ℱ(a)_α[j,i] = 𝒉(a u^α_ij*)`.
    pub fn fourier(&self, a: &CVector) -> DualElement {
        DualElement::from_coords(&self.dims(), &(&self.fourier * a))
    }

    /// `ℱ⁻¹(x) = (𝒉̂_L⊗id)((x⊗𝟙)W)`.
    pub fn fourier_inv(&self, x: &DualElement) -> CVector {
        &self.fourier_inv * x.coords()
    }

    /// `max(|ℱ⁻¹ℱ − id|, |ℱℱ⁻¹ − id|)`.
    pub fn roundtrip_residual(&self) -> f64 {
        let n = self.fourier.nrows();
        let id = identity(n);
        max_abs_diff(&(&self.fourier_inv * &self.fourier), &id)
            .max(max_abs_diff(&(&self.fourier * &self.fourier_inv), &id))
    }

    /// `W₂₃W₁₃ = Σ e^β_kl ⊗ e^α_ij ⊗ u^α_ij u^β_kl` in `(Â⊗Â) ⊗ A`.
    pub fn w23_w13(&self) -> AuxCorep {
        let wmat = self.w.matrix();
        let big = wmat.nrows();
        let a = &self.host().alg;
        let rows: Vec<CVector> = (0..big).map(|r| wmat.row(r).transpose()).collect();
        let mut coeffs = CMatrix::zeros(big * big, a.dim());
        for b in 0..big {
            for al in 0..big {
                let prod = a.mul(&rows[al], &rows[b]);
                coeffs.row_mut(b * big + al).copy_from(&prod.transpose());
            }
        }
        AuxCorep { coeffs }
    }

    /// `W` itself, as a corepresentation over `B = Â`.
    pub fn w_corep(&self) -> AuxCorep {
        AuxCorep {
            coeffs: self.w.matrix(),
        }
    }

    fn phi_matrix<B: AuxAlgebra + ?Sized>(&self, b: &B, v: &AuxCorep) -> CMatrix {
        fourier_for(b, &v.coeffs, &self.haar_pairing) * &self.fourier_inv
    }

    /// `Φ = ℱ_V ∘ ℱ⁻¹` with `ℱ_V(a) = (id⊗𝒉)((𝟙⊗a)V*)`, after checking that
    /// `V` is a unitary corepresentation. The report covers unitality,
    /// *-preservation, multiplicativity on `pairs` random pairs,
    /// non-degeneracy and `(Φ⊗id)W = V`.
    pub fn phi_from_corep<B: AuxAlgebra + ?Sized>(
        &self,
        b: &B,
        v: &AuxCorep,
        tol: Tolerance,
        pairs: usize,
        rng: &mut QgRng,
    ) -> Result<PhiMap> {
        let host = self.host();
        let a = &host.alg;
        let (db, da) = (b.dim(), a.dim());
        if v.coeffs.shape() != (db, da) {
            return Err(Error::DimensionMismatch("corepresentation coefficients".into()));
        }
        let scale = max_abs_vec(&CVector::from_iterator(db * da, v.coeffs.iter().cloned())).max(1.0);
        // (id⊗Δ)V = V₁₂V₁₃
        let lhs = &v.coeffs * host.coalg.delta().transpose();
        let mut rhs = CMatrix::zeros(db, da * da);
        for q in 0..da {
            for r in 0..da {
                let p = b.mul(&v.coeffs.column(q).into_owned(), &v.coeffs.column(r).into_owned());
                rhs.column_mut(q * da + r).copy_from(&p);
            }
        }
        let res = max_abs_diff(&lhs, &rhs);
        if !tol.scaled(10.0).accepts(res, scale * scale) {
            return Err(Error::NotACorep { residual: res });
        }
        let vs = tensor_star(b, a, &v.coeffs);
        let one = crate::tenscore::col_matrix(&b.unit()) * crate::tenscore::row_matrix(a.unit());
        let u_res = max_abs_diff(&tensor_mul(b, a, &vs, &v.coeffs), &one)
            .max(max_abs_diff(&tensor_mul(b, a, &v.coeffs, &vs), &one));
        if !tol.scaled(10.0).accepts(u_res, 1.0) {
            return Err(Error::NotUnitary { residual: u_res });
        }

        let matrix = self.phi_matrix(b, v);
        let mut report = VerificationReport::new();
        let dims = self.dims();
        let unit = DualElement::identity(&dims).coords();
        report.push(
            "unital",
            max_abs_diff_vec(&(&matrix * &unit), &b.unit()),
            1.0,
            tol,
        );
        let mut star_res: f64 = 0.0;
        let mut mult_res: f64 = 0.0;
        let mut mscale: f64 = 1.0;
        for _ in 0..pairs {
            let x = DualElement::random(&dims, rng);
            let y = DualElement::random(&dims, rng);
            let px = &matrix * x.coords();
            let py = &matrix * y.coords();
            star_res = star_res.max(max_abs_diff_vec(&(&matrix * x.star().coords()), &b.star(&px)));
            mult_res = mult_res.max(max_abs_diff_vec(&(&matrix * x.mul(&y).coords()), &b.mul(&px, &py)));
            mscale = mscale.max(max_abs_vec(&px) * max_abs_vec(&py));
        }
        report.push("star_preserving", star_res, mscale.sqrt(), tol);
        report.push("multiplicative", mult_res, mscale, tol);
        // (Φ⊗id)W = V
        let wv = &matrix * self.w.matrix();
        report.push("phi_w_equals_v", max_abs_diff(&wv, &v.coeffs), scale, tol);
        // span{Φ(x)b} = B
        let mut span = CMatrix::zeros(db, matrix.ncols() * db);
        for x in 0..matrix.ncols() {
            let px = matrix.column(x).into_owned();
            for k in 0..db {
                let p = b.mul(&px, &crate::tenscore::basis_vector(db, k));
                span.column_mut(x * db + k).copy_from(&p);
            }
        }
        report.push_bool("non_degenerate", matrix_rank(&span, tol) == db);
        Ok(PhiMap { matrix, report })
    }

    /// `Δ̂`, as a `(dim Â)² × dim Â` matrix.
    pub fn delta_matrix(&self) -> &CMatrix {
        &self.delta
    }

    pub fn dual_comult(&self, x: &DualElement) -> CVector {
        &self.delta * x.coords()
    }

    /// `ê(x)`: the entry of the trivial block.
    pub fn dual_counit(&self, x: &DualElement) -> C64 {
        x.blocks[0][(0, 0)]
    }

    /// `ê` computed as `Φ` for the trivial corepresentation.
    pub fn counit_vector(&self) -> &CVector {
        &self.counit
    }

    /// Coassociativity and both counit laws of `(Â, Δ̂, ê)` on the basis,
    /// plus `(ê⊗id)W = 𝟙` and agreement of `ê` with the trivial block entry.
    pub fn verify_structure(&self, tol: Tolerance) -> VerificationReport {
        let mut r = VerificationReport::new();
        let n = self.algebra.dim();
        let d = &self.delta;
        let kron_left = crate::tenscore::kron(d, &identity(n));
        let kron_right = crate::tenscore::kron(&identity(n), d);
        r.push(
            "coassociativity",
            max_abs_diff(&(&kron_left * d), &(&kron_right * d)),
            1.0,
            tol,
        );
        let e = crate::tenscore::row_matrix(&self.counit);
        let id = identity(n);
        r.push(
            "counit_left",
            max_abs_diff(&(crate::tenscore::kron(&e, &id) * d), &id),
            1.0,
            tol,
        );
        r.push(
            "counit_right",
            max_abs_diff(&(crate::tenscore::kron(&id, &e) * d), &id),
            1.0,
            tol,
        );
        let mut e_block = CVector::zeros(n);
        e_block[0] = ONE;
        r.push(
            "counit_trivial_block",
            max_abs_diff_vec(&self.counit, &e_block),
            1.0,
            tol,
        );
        let ew: CVector = (&e * self.w.matrix()).transpose().column(0).into_owned();
        r.push(
            "counit_w",
            max_abs_diff_vec(&ew, self.host().alg.unit()),
            1.0,
            tol,
        );
        r
    }

    /// `𝒉̂_L` left invariant and `𝒉̂_R` right invariant on the basis.
    pub fn verify_dual_invariance(&self, tol: Tolerance) -> VerificationReport {
        let n = self.algebra.dim();
        let id = identity(n);
        let unit = crate::tenscore::col_matrix(&DualElement::identity(&self.dims()).coords());
        let hl = crate::tenscore::row_matrix(&weight_row(&self.src, true));
        let hr = crate::tenscore::row_matrix(&weight_row(&self.src, false));
        let mut r = VerificationReport::new();
        let left = crate::tenscore::kron(&id, &hl) * &self.delta;
        r.push("left_invariance", max_abs_diff(&left, &(&unit * &hl)), 1.0, tol);
        let right = crate::tenscore::kron(&hr, &id) * &self.delta;
        r.push("right_invariance", max_abs_diff(&right, &(&unit * &hr)), 1.0, tol);
        r
    }

    /// `(𝒉̂_L⊗id)Δ̂(x) = 𝒉̂_L(x)Q²` and `(id⊗𝒉̂_R)Δ̂(x) = 𝒉̂_R(x)Q⁻²`.
    pub fn modular_residuals(&self) -> (f64, f64) {
        let n = self.algebra.dim();
        let id = identity(n);
        let q = modular_element(&self.src);
        let q2 = crate::tenscore::col_matrix(&q.mul(&q).coords());
        let qi = DualElement {
            blocks: self.src.qs.iter().map(|q| q.inverse()).collect(),
        };
        let qi2 = crate::tenscore::col_matrix(&qi.mul(&qi).coords());
        let hl = crate::tenscore::row_matrix(&weight_row(&self.src, true));
        let hr = crate::tenscore::row_matrix(&weight_row(&self.src, false));
        let l = crate::tenscore::kron(&hl, &id) * &self.delta;
        let r = crate::tenscore::kron(&id, &hr) * &self.delta;
        (
            max_abs_diff(&l, &(&q2 * &hl)),
            max_abs_diff(&r, &(&qi2 * &hr)),
        )
    }

    /// `Â` with `Δ̂`, `ê` and its antipode, as a Hopf *-algebra.
    pub fn as_hopf(&self, tol: Tolerance) -> Result<HopfData> {
        let coalg = StructureCoalgebra::new(self.delta.clone(), self.counit.clone())?;
        let name = format!("dual({})", self.host().name);
        let b = HopfData::new(name, self.algebra.clone(), coalg, None)?;
        let s = find_antipode(&b, tol)?;
        Ok(b.with_antipode(Some(s)))
    }
}

/// Matrix of `a ↦ (id⊗𝒉)((𝟙⊗a)V*) = Σ_q (Ha)_q (V_{·q})*`.
fn fourier_for<B: AuxAlgebra + ?Sized>(b: &B, v: &CMatrix, h: &CMatrix) -> CMatrix {
    let db = b.dim();
    let da = v.ncols();
    let mut stars = CMatrix::zeros(db, da);
    for q in 0..da {
        stars.column_mut(q).copy_from(&b.star(&v.column(q).into_owned()));
    }
    stars * h
}

/// Q-level identities, plus the `Δ̂`-based ones when the source is finite.
#[derive(Debug, Clone)]
pub struct ModularReport {
    pub q: DualElement,
    /// `max_α |Tr Q_α − Tr Q_α⁻¹|` and `min_α (Tr Q_α − n_α)`.
    pub trace_gap: f64,
    pub min_excess: f64,
    /// Largest `|𝒉̂_R(x) − 𝒉̂_L(QxQ)|` over the matrix units.
    pub weight_residual: f64,
    /// Largest `|𝒉̂_L(x) − 𝒉̂_R(x)|` over the matrix units, and the unit
    /// attaining it.
    pub weight_gap: f64,
    pub witness: Option<DualElement>,
    /// Residuals of the two `Δ̂` identities (finite sources only).
    pub delta_residuals: Option<(f64, f64)>,
    pub q_is_identity: bool,
    pub report: VerificationReport,
    pub note: String,
}

pub fn modular_report(src: &IrrData, tol: Tolerance) -> Result<ModularReport> {
    let dims = src.dims();
    let total = src.total_dim();
    let q = modular_element(src);
    let mut trace_gap: f64 = 0.0;
    let mut min_excess = f64::INFINITY;
    for qa in &src.qs {
        let (g, e) = qa.trace_gaps();
        trace_gap = trace_gap.max(g);
        min_excess = min_excess.min(e);
    }
    let mut weight_residual: f64 = 0.0;
    let mut weight_gap: f64 = 0.0;
    let mut witness = None;
    for k in 0..total {
        let x = DualElement::from_coords(&dims, &crate::tenscore::basis_vector(total, k));
        let r = hhat_r(src, &x);
        weight_residual = weight_residual.max((r - hhat_l(src, &q.mul(&x).mul(&q))).norm());
        let gap = (r - hhat_l(src, &x)).norm();
        if gap > weight_gap {
            weight_gap = gap;
            witness = Some(x);
        }
    }
    let q_is_identity = src.qs.iter().all(|qa| tol.accepts(qa.identity_residual(), 1.0));
    let mut report = VerificationReport::new();
    report.push("trace_q_equals_trace_q_inverse", trace_gap, 1.0, tol);
    report.push_bool("quantum_dimension_bound", min_excess >= -tol.abs_tol);
    report.push("hhat_r_equals_hhat_l_qxq", weight_residual, 1.0, tol);
    let delta_residuals = if src.is_finite() {
        let dual = DualQG::new(src.clone())?;
        let (l, r) = dual.modular_residuals();
        report.push("left_modular_identity", l, 1.0, tol);
        report.push("right_modular_identity", r, 1.0, tol);
        Some((l, r))
    } else {
        None
    };
    let note = match (src.is_finite(), q_is_identity) {
        (true, true) => "finite quantum group: Q = 1, so the modular identities reduce to invariance of the dual weights".into(),
        (true, false) => "finite quantum group with Q ≠ 1".into(),
        (false, _) => "truncated source: only the Q-level identities are checked".into(),
    };
    Ok(ModularReport {
        q,
        trace_gap,
        min_excess,
        weight_residual,
        weight_gap,
        witness: if weight_gap > tol.abs_tol { witness } else { None },
        delta_residuals,
        q_is_identity,
        report,
        note,
    })
}

/// The unimodularity conditions: (1) 𝒉 tracial, (2) 𝒉̂_L = 𝒉̂_R,
/// (3) Q = 𝟙, (4) S² = id, (5) S bounded. `None` marks a condition that
/// cannot be evaluated without a host algebra.
#[derive(Debug, Clone)]
pub struct UnimodularityReport {
    pub haar_tracial: Option<bool>,
    pub weights_equal: bool,
    pub q_identity: bool,
    pub antipode_involutive: Option<bool>,
    /// Always true in finite dimension.
    pub antipode_bounded: bool,
    pub residuals: [Option<f64>; 4],
}

impl UnimodularityReport {
    pub fn conditions(&self) -> Vec<Option<bool>> {
        vec![
            self.haar_tracial,
            Some(self.weights_equal),
            Some(self.q_identity),
            self.antipode_involutive,
        ]
    }

    pub fn is_unimodular(&self) -> bool {
        self.q_identity
    }
}

fn weights_gap(src: &IrrData) -> f64 {
    crate::tenscore::max_abs_diff_vec(&weight_row(src, true), &weight_row(src, false))
}

fn q_gap(src: &IrrData) -> f64 {
    src.qs.iter().fold(0.0, |m, q| m.max(q.identity_residual()))
}

/// Evaluates the conditions on block data; for finite sources also on the
/// host. Disagreement among the evaluable conditions is an error.
pub fn unimodularity_report(src: &IrrData, tol: Tolerance) -> Result<UnimodularityReport> {
    let check = tol.scaled(10.0);
    let wg = weights_gap(src);
    let qg = q_gap(src);
    let (tracial, s2) = match &src.source {
        IrrSource::Finite { host, haar, .. } => {
            let t = haar.trace_residual();
            let s = host.antipode()?;
            let s_res = max_abs_diff(&(s * s), &identity(host.dim()));
            (Some(t), Some(s_res))
        }
        IrrSource::Truncated => (None, None),
    };
    let report = UnimodularityReport {
        haar_tracial: tracial.map(|t| check.accepts(t, 1.0)),
        weights_equal: check.accepts(wg, 1.0),
        q_identity: check.accepts(qg, 1.0),
        antipode_involutive: s2.map(|s| check.accepts(s, 1.0)),
        antipode_bounded: true,
        residuals: [tracial, Some(wg), Some(qg), s2],
    };
    let known: Vec<bool> = report.conditions().into_iter().flatten().collect();
    if known.iter().any(|&x| x != known[0]) {
        return Err(Error::InconsistentConditions(format!(
            "unimodularity conditions disagree: {:?}",
            report.conditions()
        )));
    }
    Ok(report)
}

/// Outcome of the double-dual comparison.
#[derive(Debug, Clone)]
pub struct Biduality {
    /// Map from the original algebra into the double dual.
    pub map: CMatrix,
    pub report: VerificationReport,
}

impl Biduality {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Matrix whose columns are the coefficients `u^α_ij` in block order.
fn coefficient_matrix(w: &BigW) -> CMatrix {
    w.matrix().transpose()
}

/// Builds `(Â, Δ̂)`, runs the whole construction again on it and checks that
/// `π = V^T U⁻¹ S` is a Hopf *-isomorphism from `h` onto the double dual.
/// Here `U` and `V` hold the irreducible coefficients of `h` and of `Â`:
/// `W` identifies `Â` with the co-opposite dual of `h`, so two steps land
/// on `h^{op,cop}`, which the antipode carries back to `h`.
pub fn biduality(h: &Arc<HopfData>, tol: Tolerance, rng: &mut QgRng) -> Result<Biduality> {
    let first = DualQG::new(IrrData::finite(h, tol, rng)?)?;
    let b = Arc::new(first.as_hopf(tol)?);
    let second = DualQG::new(IrrData::finite(&b, tol, rng)?)?;
    let bb = second.as_hopf(tol)?;
    let u = coefficient_matrix(first.w());
    let v = coefficient_matrix(second.w());
    let u_inv = u.try_inverse().ok_or(Error::NotInvertible)?;
    let map = v.transpose() * u_inv * h.antipode()?;
    let mut report = morphism_report(&map, &bb, h, tol.scaled(100.0))?;
    report.push_bool(
        "bijective",
        matrix_rank(&map, tol) == h.dim() && bb.dim() == h.dim(),
    );
    Ok(Biduality { map, report })
}

pub fn biduality_check(h: &Arc<HopfData>, tol: Tolerance, rng: &mut QgRng) -> Result<bool> {
    Ok(biduality(h, tol, rng)?.passed())
}
