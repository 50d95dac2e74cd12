//! Finite-dimensional algebras, coalgebras and Hopf *-algebras stored as
//! structure tensors.
//!
//! Coordinates: an algebra of dimension `n` has basis `e_0 … e_{n-1}`. The
//! multiplication is an `n × n²` matrix with `m[k, i*n + j]` the coefficient
//! of `e_k` in `e_i e_j`; the comultiplication is an `n² × n` matrix with
//! `Δ[i*n + j, a]` the coefficient of `e_i ⊗ e_j` in `Δ(e_a)`. The counit is a
//! covector stored as a vector, `ε(v) = Σ ε_a v_a`. The involution is
//! `v* = J · conj(v)`.

use std::fmt;

use crate::catalog::FiniteGroup;
use crate::error::{Error, Result};
use crate::random::{random_vector, QgRng};
use crate::tenscore::{
    basis_vector, c, col_matrix, conj, eigenvalues, identity, kron_vec, max_abs, max_abs_diff,
    max_abs_vec, nullspace, orthonormal_span, psd_check, rank_of_span, row_matrix, solve_linear,
    CMatrix, CVector, Tolerance, C64, ONE, ZERO,
};

type Terms = Vec<(usize, C64)>;

fn sparse_columns(m: &CMatrix) -> Vec<Terms> {
    (0..m.ncols())
        .map(|j| {
            m.column(j)
                .iter()
                .enumerate()
                .filter(|(_, z)| **z != ZERO)
                .map(|(i, z)| (i, *z))
                .collect()
        })
        .collect()
}

fn nonzero(v: &CVector) -> impl Iterator<Item = (usize, C64)> + '_ {
    v.iter()
        .enumerate()
        .filter(|(_, z)| **z != ZERO)
        .map(|(i, z)| (i, *z))
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// One named identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Outcome of a verifier: every check with its residual.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `residual` against the admissible bound for quantities of
    /// magnitude `scale`.
    pub fn push(&mut self, name: &str, residual: f64, scale: f64, tol: Tolerance) {
        let bound = tol.bound(scale);
        self.checks.push(Check {
            name: name.to_string(),
            residual,
            bound,
            passed: residual.is_finite() && residual <= bound,
        });
    }

    /// Records a yes/no condition; the residual is 0 or 1.
    pub fn push_bool(&mut self, name: &str, ok: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            residual: if ok { 0.0 } else { 1.0 },
            bound: 0.5,
            passed: ok,
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |acc, c| acc.max(c.residual))
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ch in &self.checks {
            writeln!(
                f,
                "{:<32} {:>10.3e}  {}",
                ch.name,
                ch.residual,
                if ch.passed { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Running sup-norm residual of `lhs - rhs` and the magnitude of the compared
/// quantities.
#[derive(Default)]
struct Acc {
    res: f64,
    scale: f64,
}

impl Acc {
    fn vec(&mut self, lhs: &CVector, rhs: &CVector) {
        for (x, y) in lhs.iter().zip(rhs.iter()) {
            self.res = self.res.max((x - y).norm());
            self.scale = self.scale.max(x.norm()).max(y.norm());
        }
    }

    fn scalar(&mut self, x: C64, y: C64) {
        self.res = self.res.max((x - y).norm());
        self.scale = self.scale.max(x.norm()).max(y.norm());
    }

    fn mat(&mut self, lhs: &CMatrix, rhs: &CMatrix) {
        self.res = self.res.max(max_abs_diff(lhs, rhs));
        self.scale = self.scale.max(max_abs(lhs)).max(max_abs(rhs));
    }

    fn report(self, r: &mut VerificationReport, name: &str, tol: Tolerance) {
        r.push(name, self.res, self.scale, tol);
    }
}

/// A finite-dimensional unital *-algebra.
#[derive(Debug, Clone)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    mult: CMatrix,
    unit: CVector,
    star: CMatrix,
    gram: Option<CMatrix>,
    terms: Vec<Terms>,
}

impl StructureAlgebra {
    /// Builds an algebra from its structure data. Shapes and finiteness are
    /// validated here; the axioms are checked by [`verify_algebra`].
    pub fn new(labels: Vec<String>, mult: CMatrix, unit: CVector, star: CMatrix) -> Result<Self> {
        let n = unit.len();
        if mult.shape() != (n, n * n) {
            return Err(Error::DimensionMismatch(format!(
                "multiplication is {}x{}, expected {n}x{}",
                mult.nrows(),
                mult.ncols(),
                n * n
            )));
        }
        if star.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "involution matrix is {}x{}, expected {n}x{n}",
                star.nrows(),
                star.ncols()
            )));
        }
        let labels = if labels.is_empty() {
            default_labels(n)
        } else if labels.len() == n {
            labels
        } else {
            return Err(Error::DimensionMismatch(format!(
                "{} basis labels for dimension {n}",
                labels.len()
            )));
        };
        crate::tenscore::ensure_finite(&mult, "multiplication")?;
        crate::tenscore::ensure_finite(&star, "involution")?;
        if unit.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("unit".into()));
        }
        let terms = sparse_columns(&mult);
        Ok(StructureAlgebra {
            dim: n,
            labels,
            mult,
            unit,
            star,
            gram: None,
            terms,
        })
    }

    /// Attaches a chosen faithful positive inner product.
    pub fn with_gram(mut self, gram: CMatrix) -> Result<Self> {
        if gram.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch("gram matrix shape".into()));
        }
        crate::tenscore::ensure_finite(&gram, "gram matrix")?;
        self.gram = Some(gram);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &CMatrix {
        &self.mult
    }

    pub fn unit(&self) -> &CVector {
        &self.unit
    }

    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    pub fn gram(&self) -> Option<&CMatrix> {
        self.gram.as_ref()
    }

    /// `e_i e_j` as a coordinate vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> CVector {
        let mut out = CVector::zeros(self.dim);
        for &(k, z) in &self.terms[i * self.dim + j] {
            out[k] += z;
        }
        out
    }

    pub fn mul(&self, a: &CVector, b: &CVector) -> CVector {
        let n = self.dim;
        let mut out = CVector::zeros(n);
        let bs: Vec<(usize, C64)> = nonzero(b).collect();
        for (i, ai) in nonzero(a) {
            for &(j, bj) in &bs {
                let s = ai * bj;
                for &(k, z) in &self.terms[i * n + j] {
                    out[k] += s * z;
                }
            }
        }
        out
    }

    /// Product in the algebraic tensor square `A ⊗ A`.
    pub fn mul_tensor(&self, x: &CVector, y: &CVector) -> CVector {
        let n = self.dim;
        let mut out = CVector::zeros(n * n);
        let ys: Vec<(usize, C64)> = nonzero(y).collect();
        for (p, xp) in nonzero(x) {
            let (i, j) = (p / n, p % n);
            for &(q, yq) in &ys {
                let (k, l) = (q / n, q % n);
                let s = xp * yq;
                for &(a, za) in &self.terms[i * n + k] {
                    for &(b, zb) in &self.terms[j * n + l] {
                        out[a * n + b] += s * za * zb;
                    }
                }
            }
        }
        out
    }

    pub fn star(&self, a: &CVector) -> CVector {
        &self.star * a.map(|z| z.conj())
    }

    /// Involution on `A ⊗ A`: `(x ⊗ y)* = x* ⊗ y*`.
    pub fn star_tensor(&self, v: &CVector) -> CVector {
        let n = self.dim;
        let mat = CMatrix::from_fn(n, n, |i, j| v[i * n + j].conj());
        let out = &self.star * mat * self.star.transpose();
        CVector::from_fn(n * n, |p, _| out[(p / n, p % n)])
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &CVector) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n, n);
        for (i, ai) in nonzero(a) {
            for j in 0..n {
                for &(k, z) in &self.terms[i * n + j] {
                    out[(k, j)] += ai * z;
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &CVector) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n, n);
        for (j, aj) in nonzero(a) {
            for i in 0..n {
                for &(k, z) in &self.terms[i * n + j] {
                    out[(k, i)] += aj * z;
                }
            }
        }
        out
    }

    /// Largest `|e_i e_j − e_j e_i|` coordinate.
    pub fn commutator_residual(&self) -> f64 {
        let n = self.dim;
        let mut res: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                res = res.max(max_abs_vec(&(self.mul_basis(i, j) - self.mul_basis(j, i))));
            }
        }
        res
    }

    pub fn is_commutative(&self, tol: Tolerance) -> bool {
        tol.accepts(self.commutator_residual(), max_abs(&self.mult))
    }
}

/// A finite-dimensional counital coalgebra.
#[derive(Debug, Clone)]
pub struct StructureCoalgebra {
    dim: usize,
    delta: CMatrix,
    counit: CVector,
    terms: Vec<Vec<((usize, usize), C64)>>,
}

impl StructureCoalgebra {
    pub fn new(delta: CMatrix, counit: CVector) -> Result<Self> {
        let n = counit.len();
        if delta.shape() != (n * n, n) {
            return Err(Error::DimensionMismatch(format!(
                "comultiplication is {}x{}, expected {}x{n}",
                delta.nrows(),
                delta.ncols(),
                n * n
            )));
        }
        crate::tenscore::ensure_finite(&delta, "comultiplication")?;
        if counit
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("counit".into()));
        }
        let terms = sparse_columns(&delta)
            .into_iter()
            .map(|col| col.into_iter().map(|(p, z)| ((p / n, p % n), z)).collect())
            .collect();
        Ok(StructureCoalgebra {
            dim: n,
            delta,
            counit,
            terms,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &CMatrix {
        &self.delta
    }

    pub fn counit(&self) -> &CVector {
        &self.counit
    }

    /// Nonzero terms `((i, j), c)` of `Δ(e_a)`.
    pub fn delta_terms(&self, a: usize) -> &[((usize, usize), C64)] {
        &self.terms[a]
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.delta * v
    }

    pub fn eps(&self, v: &CVector) -> C64 {
        self.counit.iter().zip(v.iter()).map(|(e, x)| e * x).sum()
    }

    pub fn cocommutator_residual(&self) -> f64 {
        let n = self.dim;
        let flipped = crate::tenscore::flip(n, n) * &self.delta;
        max_abs_diff(&flipped, &self.delta)
    }

    pub fn is_cocommutative(&self, tol: Tolerance) -> bool {
        tol.accepts(self.cocommutator_residual(), max_abs(&self.delta))
    }
}

/// A finite-dimensional *-bialgebra, optionally with antipode.
#[derive(Debug, Clone)]
pub struct HopfData {
    pub name: String,
    pub alg: StructureAlgebra,
    pub coalg: StructureCoalgebra,
    pub antipode: Option<CMatrix>,
}

impl HopfData {
    pub fn new(
        name: impl Into<String>,
        alg: StructureAlgebra,
        coalg: StructureCoalgebra,
        antipode: Option<CMatrix>,
    ) -> Result<Self> {
        let n = alg.dim();
        if coalg.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "algebra has dimension {n}, coalgebra {}",
                coalg.dim()
            )));
        }
        if let Some(s) = &antipode {
            if s.shape() != (n, n) {
                return Err(Error::DimensionMismatch("antipode shape".into()));
            }
            crate::tenscore::ensure_finite(s, "antipode")?;
        }
        Ok(HopfData {
            name: name.into(),
            alg,
            coalg,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.alg.labels()
    }

    pub fn antipode(&self) -> Result<&CMatrix> {
        self.antipode.as_ref().ok_or(Error::MissingAntipode)
    }

    pub fn with_antipode(mut self, s: Option<CMatrix>) -> Self {
        self.antipode = s;
        self
    }

    pub fn one(&self) -> CVector {
        self.alg.unit().clone()
    }
}

pub fn verify_algebra(a: &StructureAlgebra, tol: Tolerance) -> VerificationReport {
    let n = a.dim();
    let mut r = VerificationReport::new();

    let products: Vec<CVector> = (0..n * n).map(|p| a.mul_basis(p / n, p % n)).collect();
    let mut acc = Acc::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = a.mul(&products[i * n + j], &basis_vector(n, k));
                let rhs = a.mul(&basis_vector(n, i), &products[j * n + k]);
                acc.vec(&lhs, &rhs);
            }
        }
    }
    acc.report(&mut r, "associativity", tol);

    let one = a.unit();
    let mut left = Acc::default();
    let mut right = Acc::default();
    for j in 0..n {
        let e = basis_vector(n, j);
        left.vec(&a.mul(one, &e), &e);
        right.vec(&a.mul(&e, one), &e);
    }
    left.report(&mut r, "unit_left", tol);
    right.report(&mut r, "unit_right", tol);

    let j = a.star_matrix();
    let mut inv = Acc::default();
    inv.mat(&(j * conj(j)), &identity(n));
    inv.report(&mut r, "star_involutive", tol);

    let mut anti = Acc::default();
    for i in 0..n {
        for k in 0..n {
            let lhs = a.star(&products[i * n + k]);
            let rhs = a.mul(&j.column(k).into_owned(), &j.column(i).into_owned());
            anti.vec(&lhs, &rhs);
        }
    }
    anti.report(&mut r, "star_antimultiplicative", tol);

    let mut unit_star = Acc::default();
    unit_star.vec(&a.star(one), one);
    unit_star.report(&mut r, "star_unit", tol);

    if let Some(g) = a.gram() {
        r.push_bool("gram_positive", psd_check(g, tol));
    }
    r
}

pub fn verify_coalgebra(c: &StructureCoalgebra, tol: Tolerance) -> VerificationReport {
    let n = c.dim();
    let mut r = VerificationReport::new();
    let columns: Vec<CVector> = (0..n).map(|a| c.delta().column(a).into_owned()).collect();

    let mut coassoc = Acc::default();
    for a in 0..n {
        let mut lhs = CVector::zeros(n * n * n);
        let mut rhs = CVector::zeros(n * n * n);
        for &((i, j), z) in c.delta_terms(a) {
            // (Δ ⊗ id): expand the left leg.
            for &((p, q), w) in c.delta_terms(i) {
                lhs[(p * n + q) * n + j] += z * w;
            }
            // (id ⊗ Δ): expand the right leg.
            for &((p, q), w) in c.delta_terms(j) {
                rhs[(i * n + p) * n + q] += z * w;
            }
        }
        coassoc.vec(&lhs, &rhs);
    }
    coassoc.report(&mut r, "coassociativity", tol);

    // Counit laws as matrix identities (ε ⊗ id)Δ = id = (id ⊗ ε)Δ.
    let eps_row = row_matrix(c.counit());
    let left_map = crate::tenscore::kron(&eps_row, &identity(n)) * c.delta();
    let right_map = crate::tenscore::kron(&identity(n), &eps_row) * c.delta();
    let mut left = Acc::default();
    left.mat(&left_map, &identity(n));
    left.report(&mut r, "counit_left", tol);
    let mut right = Acc::default();
    right.mat(&right_map, &identity(n));
    right.report(&mut r, "counit_right", tol);

    // Sweedler form Σ c₍₁₎ ε(c₍₂₎) = c, summed term by term.
    let mut sweedler = Acc::default();
    for (a, col) in columns.iter().enumerate() {
        let mut acc = CVector::zeros(n);
        for &((i, j), z) in c.delta_terms(a) {
            acc[i] += z * c.counit()[j];
        }
        let _ = col;
        sweedler.vec(&acc, &basis_vector(n, a));
    }
    sweedler.report(&mut r, "sweedler_counit", tol);
    r
}

/// Bialgebra compatibility without reference to an antipode.
pub fn verify_bialgebra(h: &HopfData, tol: Tolerance) -> VerificationReport {
    let n = h.dim();
    let a = &h.alg;
    let c = &h.coalg;
    let mut r = VerificationReport::new();
    let deltas: Vec<CVector> = (0..n).map(|i| c.delta().column(i).into_owned()).collect();

    let mut mult = Acc::default();
    let mut eps_mult = Acc::default();
    for i in 0..n {
        for j in 0..n {
            let prod = a.mul_basis(i, j);
            mult.vec(&c.apply(&prod), &a.mul_tensor(&deltas[i], &deltas[j]));
            eps_mult.scalar(c.eps(&prod), c.counit()[i] * c.counit()[j]);
        }
    }
    mult.report(&mut r, "delta_multiplicative", tol);
    eps_mult.report(&mut r, "counit_multiplicative", tol);

    let one = a.unit();
    let mut du = Acc::default();
    du.vec(&c.apply(one), &kron_vec(one, one));
    du.report(&mut r, "delta_unit", tol);
    let mut eu = Acc::default();
    eu.scalar(c.eps(one), ONE);
    eu.report(&mut r, "counit_unit", tol);

    let mut dstar = Acc::default();
    let mut estar = Acc::default();
    for i in 0..n {
        let e_star = a.star_matrix().column(i).into_owned();
        dstar.vec(&c.apply(&e_star), &a.star_tensor(&deltas[i]));
        estar.scalar(c.eps(&e_star), c.counit()[i].conj());
    }
    dstar.report(&mut r, "delta_star_morphism", tol);
    estar.report(&mut r, "counit_star", tol);
    r
}

/// Full Hopf *-algebra verification: bialgebra compatibility, the antipode
/// identity, anti-(co)multiplicativity of the antipode and `*∘S∘*∘S = id`.
pub fn verify_hopf(h: &HopfData, tol: Tolerance) -> Result<VerificationReport> {
    let s = h.antipode()?;
    let n = h.dim();
    let a = &h.alg;
    let c = &h.coalg;
    let mut r = verify_bialgebra(h, tol);
    let s_cols: Vec<CVector> = (0..n).map(|i| s.column(i).into_owned()).collect();
    let one = a.unit();

    let mut left = Acc::default();
    let mut right = Acc::default();
    for k in 0..n {
        let mut l = CVector::zeros(n);
        let mut rr = CVector::zeros(n);
        for &((i, j), z) in c.delta_terms(k) {
            l += a.mul(&s_cols[i], &basis_vector(n, j)) * z;
            rr += a.mul(&basis_vector(n, i), &s_cols[j]) * z;
        }
        let target = one * c.counit()[k];
        left.vec(&l, &target);
        right.vec(&rr, &target);
    }
    left.report(&mut r, "antipode_left", tol);
    right.report(&mut r, "antipode_right", tol);

    let mut anti = Acc::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = s * a.mul_basis(i, j);
            let rhs = a.mul(&s_cols[j], &s_cols[i]);
            anti.vec(&lhs, &rhs);
        }
    }
    anti.report(&mut r, "antipode_antimultiplicative", tol);

    let mut anticomult = Acc::default();
    for k in 0..n {
        let lhs = c.apply(&s_cols[k]);
        let mut rhs = CVector::zeros(n * n);
        for &((i, j), z) in c.delta_terms(k) {
            rhs += kron_vec(&s_cols[j], &s_cols[i]) * z;
        }
        anticomult.vec(&lhs, &rhs);
    }
    anticomult.report(&mut r, "antipode_anticomultiplicative", tol);

    let j = a.star_matrix();
    let mut ss = Acc::default();
    ss.mat(&(j * conj(s) * conj(j) * s), &identity(n));
    ss.report(&mut r, "star_antipode_involution", tol);
    Ok(r)
}

/// Every check: algebra, coalgebra, bialgebra, and antipode when present.
pub fn verify_all(h: &HopfData, tol: Tolerance) -> VerificationReport {
    let mut r = verify_algebra(&h.alg, tol);
    r.extend(verify_coalgebra(&h.coalg, tol));
    match verify_hopf(h, tol) {
        Ok(rep) => r.extend(rep),
        Err(_) => {
            r.extend(verify_bialgebra(h, tol));
            r.push_bool("antipode_present", false);
        }
    }
    r
}

/// Convolution `m ∘ (f₁ ⊗ f₂) ∘ Δ` of two linear maps from a coalgebra to an
/// algebra.
pub fn convolve_maps(
    f1: &CMatrix,
    f2: &CMatrix,
    c: &StructureCoalgebra,
    a: &StructureAlgebra,
) -> Result<CMatrix> {
    let shape = (a.dim(), c.dim());
    if f1.shape() != shape || f2.shape() != shape {
        return Err(Error::DimensionMismatch(format!(
            "convolution factors must be {}x{}",
            shape.0, shape.1
        )));
    }
    let mut out = CMatrix::zeros(a.dim(), c.dim());
    let c1: Vec<CVector> = (0..c.dim()).map(|i| f1.column(i).into_owned()).collect();
    let c2: Vec<CVector> = (0..c.dim()).map(|i| f2.column(i).into_owned()).collect();
    for k in 0..c.dim() {
        let mut col = CVector::zeros(a.dim());
        for &((i, j), z) in c.delta_terms(k) {
            col += a.mul(&c1[i], &c2[j]) * z;
        }
        out.set_column(k, &col);
    }
    Ok(out)
}

/// The unit of the convolution algebra, `e ∘ ε`.
pub fn unit_counit(h: &HopfData) -> CMatrix {
    h.alg.unit() * h.coalg.counit().transpose()
}

/// Solves `S ⋆ id = e∘ε = id ⋆ S` for the antipode as one linear system.
///
/// Fails with [`Error::NoSolution`] when no antipode exists and with
/// [`Error::NotUnique`] if the solution space is not a single point.
pub fn find_antipode(b: &HopfData, tol: Tolerance) -> Result<CMatrix> {
    let n = b.dim();
    let nn = n * n;
    let a = &b.alg;
    let mut sys = CMatrix::zeros(2 * nn, nn);
    let mut rhs = CMatrix::zeros(2 * nn, 1);
    let one = a.unit();
    for col in 0..n {
        for &((i, j), z) in b.coalg.delta_terms(col) {
            for p in 0..n {
                // Σ Δ(e_col)[i,j] S[p,i] e_p e_j; unknown S[p,i] sits at i*n+p.
                for &(k, w) in &a.terms[p * n + j] {
                    sys[(col * n + k, i * n + p)] += z * w;
                }
                // Σ Δ(e_col)[i,j] S[p,j] e_i e_p.
                for &(k, w) in &a.terms[i * n + p] {
                    sys[(nn + col * n + k, j * n + p)] += z * w;
                }
            }
        }
        for k in 0..n {
            let target = b.coalg.counit()[col] * one[k];
            rhs[(col * n + k, 0)] = target;
            rhs[(nn + col * n + k, 0)] = target;
        }
    }
    let sol = solve_linear(&sys, &rhs, tol)?;
    if !sol.nullspace.is_empty() {
        return Err(Error::NotUnique {
            dim: sol.nullspace.len(),
        });
    }
    Ok(CMatrix::from_column_slice(n, n, sol.x.as_slice()))
}

fn inverse_antipode(h: &HopfData) -> Result<CMatrix> {
    let s = h.antipode()?;
    s.clone().try_inverse().ok_or(Error::SingularAntipode)
}

fn flipped_mult(a: &StructureAlgebra) -> CMatrix {
    let n = a.dim();
    a.mult() * crate::tenscore::flip(n, n)
}

fn flipped_delta(c: &StructureCoalgebra) -> CMatrix {
    let n = c.dim();
    crate::tenscore::flip(n, n) * c.delta()
}

/// `H^op`: reversed multiplication, antipode `S⁻¹`.
pub fn opposite(h: &HopfData) -> Result<HopfData> {
    let s_inv = inverse_antipode(h)?;
    let alg = StructureAlgebra::new(
        h.labels().to_vec(),
        flipped_mult(&h.alg),
        h.alg.unit().clone(),
        h.alg.star_matrix().clone(),
    )?;
    HopfData::new(format!("{}^op", h.name), alg, h.coalg.clone(), Some(s_inv))
}

/// `H^cop`: flipped comultiplication, antipode `S⁻¹`.
pub fn coopposite(h: &HopfData) -> Result<HopfData> {
    let s_inv = inverse_antipode(h)?;
    let coalg = StructureCoalgebra::new(flipped_delta(&h.coalg), h.coalg.counit().clone())?;
    HopfData::new(format!("{}^cop", h.name), h.alg.clone(), coalg, Some(s_inv))
}

/// `H^opcop`: both reversed, antipode `S`.
pub fn opcoopposite(h: &HopfData) -> Result<HopfData> {
    // The inverse is computed only to reject a singular antipode.
    inverse_antipode(h)?;
    let alg = StructureAlgebra::new(
        h.labels().to_vec(),
        flipped_mult(&h.alg),
        h.alg.unit().clone(),
        h.alg.star_matrix().clone(),
    )?;
    let coalg = StructureCoalgebra::new(flipped_delta(&h.coalg), h.coalg.counit().clone())?;
    HopfData::new(format!("{}^opcop", h.name), alg, coalg, h.antipode.clone())
}

/// The dual Hopf *-algebra on the dual basis: the structure maps are the
/// transposes and `(f*)(a) = conj(f(S(a)*))`.
pub fn dual_hopf(h: &HopfData) -> Result<HopfData> {
    let s = h.antipode()?;
    let labels = h.labels().iter().map(|l| format!("δ[{l}]")).collect();
    let mult = h.coalg.delta().transpose();
    let unit = h.coalg.counit().clone();
    let star = (conj(h.alg.star_matrix()) * s).transpose();
    let alg = StructureAlgebra::new(labels, mult, unit, star)?;
    let coalg = StructureCoalgebra::new(h.alg.mult().transpose(), h.alg.unit().clone())?;
    HopfData::new(format!("{}'", h.name), alg, coalg, Some(s.transpose()))
}

/// Ranks of the two cancellation spans `{(1⊗b)Δ(a)}` and `{(a⊗1)Δ(b)}`.
pub fn cancellation_ranks(h: &HopfData, tol: Tolerance) -> (usize, usize) {
    let n = h.dim();
    let a = &h.alg;
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut l = CVector::zeros(n * n);
            for &((i, j), z) in h.coalg.delta_terms(x) {
                for &(k, w) in &a.terms[j * n + y] {
                    l[i * n + k] += z * w;
                }
            }
            let mut r = CVector::zeros(n * n);
            for &((i, j), z) in h.coalg.delta_terms(y) {
                for &(k, w) in &a.terms[x * n + i] {
                    r[k * n + j] += z * w;
                }
            }
            left.push(col_matrix(&l));
            right.push(col_matrix(&r));
        }
    }
    let rl = rank_of_span(&left, tol).unwrap_or(0);
    let rr = rank_of_span(&right, tol).unwrap_or(0);
    (rl, rr)
}

/// The quantum cancellation rules at finite dimension: both spans are all of
/// `A ⊗ A`.
pub fn check_cancellation(h: &HopfData, tol: Tolerance) -> bool {
    let n = h.dim();
    let (l, r) = cancellation_ranks(h, tol);
    l == n * n && r == n * n
}

fn stack(vectors: &[CVector], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Right singular vectors belonging to the `k` smallest singular values.
fn smallest_singular_space(a: &CMatrix, k: usize) -> CMatrix {
    let n = a.ncols();
    let gram = a.adjoint() * a;
    let (_, vecs) = crate::tenscore::hermitian_eigen(&gram);
    vecs.columns(0, k.min(n)).into_owned()
}

/// Complex values grouped by proximity (single linkage).
fn cluster_complex(values: &[C64], gap: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..values.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            if (values[i] - values[j]).norm() <= gap {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; values.len()];
    for i in 0..values.len() {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(i);
    }
    groups
}

fn split_characters(
    a: &StructureAlgebra,
    p: CMatrix,
    rng: &mut QgRng,
    depth: usize,
    out: &mut Vec<CVector>,
) -> Result<()> {
    let d = p.ncols();
    if d == 0 {
        return Ok(());
    }
    if d == 1 {
        out.push(p.column(0).into_owned());
        return Ok(());
    }
    if depth > 12 {
        return Err(Error::Numerical(
            "joint eigenspaces of the multiplication operators do not split".into(),
        ));
    }
    let x = random_vector(rng, a.dim());
    let r = p.adjoint() * a.left_mult(&x).transpose() * &p;
    let eig = eigenvalues(&r)?;
    let scale = eig.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let groups = cluster_complex(&eig, 1e-6 * scale);
    if groups.len() == 1 {
        return split_characters(a, p, rng, depth + 1, out);
    }
    for g in groups {
        let lambda = g.iter().map(|&i| eig[i]).sum::<C64>() / c(g.len() as f64, 0.0);
        let shifted = &r - CMatrix::identity(d, d) * lambda;
        let q = smallest_singular_space(&shifted, g.len());
        split_characters(a, &p * q, rng, depth + 1, out)?;
    }
    Ok(())
}

/// Lexicographic order on coordinates with a tolerance on each comparison.
fn approx_lex_desc(x: &CVector, y: &CVector) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y.iter()) {
        if (a.re - b.re).abs() > 1e-6 {
            return b.re.total_cmp(&a.re);
        }
        if (a.im - b.im).abs() > 1e-6 {
            return b.im.total_cmp(&a.im);
        }
    }
    std::cmp::Ordering::Equal
}

/// All characters (unital multiplicative functionals) of `a`, as covectors
/// `φ_k = φ(e_k)`, in a deterministic order.
///
/// Characters vanish on the two-sided ideal generated by commutators; on the
/// annihilator of that ideal the transposed left multiplications commute and
/// their joint eigenvectors are exactly the characters.
pub fn characters(a: &StructureAlgebra, tol: Tolerance, rng: &mut QgRng) -> Result<Vec<CVector>> {
    let n = a.dim();
    let span_tol = Tolerance::new(tol.abs_tol, 1e-8)?;
    let mut comms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = a.mul_basis(i, j) - a.mul_basis(j, i);
            if max_abs_vec(&d) > tol.abs_tol {
                comms.push(d);
            }
        }
    }
    let mut ideal = orthonormal_span(&stack(&comms, n), span_tol);
    loop {
        let mut gens: Vec<CVector> = Vec::new();
        for col in ideal.column_iter() {
            let v = col.into_owned();
            gens.push(v.clone());
            for i in 0..n {
                let e = basis_vector(n, i);
                gens.push(a.mul(&e, &v));
                gens.push(a.mul(&v, &e));
            }
        }
        let next = orthonormal_span(&stack(&gens, n), span_tol);
        if next.ncols() == ideal.ncols() {
            break;
        }
        ideal = next;
    }
    let annihilator = if ideal.ncols() == 0 {
        identity(n)
    } else {
        stack(&nullspace(&ideal.transpose(), span_tol), n)
    };
    let mut raw = Vec::new();
    split_characters(a, annihilator, rng, 0, &mut raw)?;

    let one = a.unit();
    let mut chars = Vec::with_capacity(raw.len());
    for v in raw {
        let at_one: C64 = v.iter().zip(one.iter()).map(|(x, y)| x * y).sum();
        if at_one.norm() < 1e-8 {
            return Err(Error::Numerical("character vanishes on the unit".into()));
        }
        let phi = v / at_one;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs: C64 = phi
                    .iter()
                    .zip(a.mul_basis(i, j).iter())
                    .map(|(x, y)| x * y)
                    .sum();
                worst = worst.max((lhs - phi[i] * phi[j]).norm());
            }
        }
        let scale = max_abs_vec(&phi).powi(2).max(1.0);
        if !Tolerance::new(tol.abs_tol.max(1e-9), tol.rel_tol.max(1e-9))?.accepts(worst, scale) {
            return Err(Error::Numerical(format!(
                "extracted functional is not multiplicative (residual {worst:.3e})"
            )));
        }
        chars.push(phi);
    }
    chars.sort_by(approx_lex_desc);
    Ok(chars)
}

fn match_index(list: &[CVector], v: &CVector, cutoff: f64) -> Option<usize> {
    let (best, dist) = list
        .iter()
        .enumerate()
        .map(|(i, w)| (i, crate::tenscore::max_abs_diff_vec(w, v)))
        .min_by(|x, y| x.1.total_cmp(&y.1))?;
    (dist <= cutoff).then_some(best)
}

/// The group recovered from a commutative Hopf *-algebra.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub group: FiniteGroup,
    /// Character of each group element, `chars[g][k] = χ_g(e_k)`.
    pub characters: Vec<CVector>,
}

/// Rebuilds the finite group whose function algebra is `h`.
///
/// Points are the characters; the product of `χ` and `ψ` is `(χ⊗ψ)∘Δ`, the
/// identity is the counit and inverses come from the antipode.
pub fn gelfand_reconstruct(
    h: &HopfData,
    tol: Tolerance,
    rng: &mut QgRng,
) -> Result<Reconstruction> {
    let residual = h.alg.commutator_residual();
    if !tol.accepts(residual, max_abs(h.alg.mult())) {
        return Err(Error::NotCommutative { residual });
    }
    let chars = characters(&h.alg, tol, rng)?;
    let order = chars.len();
    let cutoff = 1e-6;
    let mut table = vec![vec![0usize; order]; order];
    for (x, cx) in chars.iter().enumerate() {
        for (y, cy) in chars.iter().enumerate() {
            let prod = h.coalg.delta().transpose() * kron_vec(cx, cy);
            table[x][y] = match_index(&chars, &prod, cutoff).ok_or_else(|| {
                Error::Numerical("product of characters is not a character".into())
            })?;
        }
    }
    let labels = (0..order).map(|i| format!("x{i}")).collect();
    let group = FiniteGroup::from_table("reconstructed", labels, table)?;
    let eps_index = match_index(&chars, h.coalg.counit(), cutoff)
        .ok_or_else(|| Error::Numerical("counit is not among the characters".into()))?;
    if eps_index != group.identity() {
        return Err(Error::Numerical(
            "counit is not the identity element".into(),
        ));
    }
    if let Some(s) = &h.antipode {
        for (x, cx) in chars.iter().enumerate() {
            let inv = s.transpose() * cx;
            if match_index(&chars, &inv, cutoff) != Some(group.inverse(x)) {
                return Err(Error::Numerical(
                    "antipode does not invert characters".into(),
                ));
            }
        }
    }
    Ok(Reconstruction {
        group,
        characters: chars,
    })
}

/// Group-like elements with the group they form.
#[derive(Debug, Clone)]
pub struct GroupLikes {
    pub elements: Vec<CVector>,
    pub group: FiniteGroup,
}

/// All solutions of `Δ(g) = g ⊗ g`, `ε(g) = 1`.
///
/// A group-like element is the same thing as a character of the dual Hopf
/// algebra, so the search runs [`characters`] on `dual_hopf(h)`. Closure under
/// the product and the antipode is verified.
pub fn grouplikes(h: &HopfData, tol: Tolerance, rng: &mut QgRng) -> Result<GroupLikes> {
    let dual = dual_hopf(h)?;
    let elements = characters(&dual.alg, tol, rng)?;
    let cutoff = 1e-6;
    for g in &elements {
        let d = h.coalg.apply(g);
        let gg = kron_vec(g, g);
        if crate::tenscore::max_abs_diff_vec(&d, &gg) > cutoff
            || (h.coalg.eps(g) - ONE).norm() > cutoff
        {
            return Err(Error::Numerical(
                "extracted element is not group-like".into(),
            ));
        }
    }
    let order = elements.len();
    let mut table = vec![vec![0usize; order]; order];
    for x in 0..order {
        for y in 0..order {
            let prod = h.alg.mul(&elements[x], &elements[y]);
            table[x][y] = match_index(&elements, &prod, cutoff)
                .ok_or_else(|| Error::Numerical("group-likes not closed under product".into()))?;
        }
    }
    let labels = (0..order).map(|i| format!("g{i}")).collect();
    let group = FiniteGroup::from_table("group-likes", labels, table)?;
    let s = h.antipode()?;
    for (x, g) in elements.iter().enumerate() {
        if match_index(&elements, &(s * g), cutoff) != Some(group.inverse(x)) {
            return Err(Error::Numerical(
                "antipode does not invert group-likes".into(),
            ));
        }
    }
    Ok(GroupLikes { elements, group })
}

/// Checks that `pi` (mapping the space of `h2` into `h1`) is a unital
/// *-homomorphism intertwining the comultiplications.
pub fn morphism_report(
    pi: &CMatrix,
    h1: &HopfData,
    h2: &HopfData,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let (n1, n2) = (h1.dim(), h2.dim());
    if pi.shape() != (n1, n2) {
        return Err(Error::DimensionMismatch(format!(
            "morphism must be {n1}x{n2}, got {}x{}",
            pi.nrows(),
            pi.ncols()
        )));
    }
    let mut r = VerificationReport::new();
    let mut unital = Acc::default();
    unital.vec(&(pi * h2.alg.unit()), h1.alg.unit());
    unital.report(&mut r, "unital", tol);

    let cols: Vec<CVector> = (0..n2).map(|i| pi.column(i).into_owned()).collect();
    let mut mult = Acc::default();
    for i in 0..n2 {
        for j in 0..n2 {
            mult.vec(
                &(pi * h2.alg.mul_basis(i, j)),
                &h1.alg.mul(&cols[i], &cols[j]),
            );
        }
    }
    mult.report(&mut r, "multiplicative", tol);

    let mut star = Acc::default();
    star.mat(
        &(pi * h2.alg.star_matrix()),
        &(h1.alg.star_matrix() * conj(pi)),
    );
    star.report(&mut r, "star_preserving", tol);

    let mut comult = Acc::default();
    let pp = crate::tenscore::kron(pi, pi);
    comult.mat(&(h1.coalg.delta() * pi), &(pp * h2.coalg.delta()));
    comult.report(&mut r, "comultiplicative", tol);
    Ok(r)
}

pub fn check_morphism(pi: &CMatrix, h1: &HopfData, h2: &HopfData, tol: Tolerance) -> Result<bool> {
    Ok(morphism_report(pi, h1, h2, tol)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, function_algebra, group_algebra, monoid_bialgebra, symmetric};
    use crate::random::{random_matrix, seeded};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn matrix_algebra_m2() -> StructureAlgebra {
        // Basis e_11, e_12, e_21, e_22 at index 2*i + j.
        let mut mult = CMatrix::zeros(4, 16);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        if j == k {
                            mult[(2 * i + l, (2 * i + j) * 4 + (2 * k + l))] = ONE;
                        }
                    }
                }
            }
        }
        let unit = CVector::from_vec(vec![ONE, ZERO, ZERO, ONE]);
        let mut star = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                star[(2 * j + i, 2 * i + j)] = ONE;
            }
        }
        StructureAlgebra::new(vec![], mult, unit, star).unwrap()
    }

    #[test]
    fn group_algebra_z2_axioms() {
        let h = group_algebra(&cyclic(2).unwrap()).unwrap();
        // Oracle: multiplication table of Z₂ read off directly.
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(h.alg.mul_basis(i, j), basis_vector(2, (i + j) % 2));
            }
        }
        assert!(verify_algebra(&h.alg, tol()).passed());
    }

    #[test]
    fn perturbed_multiplication_breaks_associativity() {
        let h = group_algebra(&cyclic(3).unwrap()).unwrap();
        let mut m = h.alg.mult().clone();
        m[(0, 3 + 1)] += c(0.1, 0.0);
        let bad =
            StructureAlgebra::new(vec![], m, h.alg.unit().clone(), h.alg.star_matrix().clone())
                .unwrap();
        let r = verify_algebra(&bad, tol());
        assert!(!r.get("associativity").unwrap().passed);
    }

    #[test]
    fn matrix_units_form_an_algebra() {
        let a = matrix_algebra_m2();
        let r = verify_algebra(&a, tol());
        assert!(r.passed(), "{r}");
        assert!(!a.is_commutative(tol()));
    }

    #[test]
    fn coalgebra_checks() {
        let h = group_algebra(&cyclic(3).unwrap()).unwrap();
        assert!(verify_coalgebra(&h.coalg, tol()).passed());
        let zero = StructureCoalgebra::new(h.coalg.delta().clone(), CVector::zeros(3)).unwrap();
        let r = verify_coalgebra(&zero, tol());
        assert!(!r.get("counit_left").unwrap().passed);
        assert!(!r.get("counit_right").unwrap().passed);

        // Transposed multiplication of ℂ^{Z₂} is a coalgebra.
        let f = function_algebra(&cyclic(2).unwrap()).unwrap();
        let co = StructureCoalgebra::new(f.alg.mult().transpose(), f.alg.unit().clone()).unwrap();
        assert!(verify_coalgebra(&co, tol()).passed());
    }

    #[test]
    fn hopf_checks() {
        let s3 = symmetric(3).unwrap();
        assert!(verify_hopf(&group_algebra(&s3).unwrap(), tol())
            .unwrap()
            .passed());
        let z4 = cyclic(4).unwrap();
        assert!(verify_hopf(&function_algebra(&z4).unwrap(), tol())
            .unwrap()
            .passed());

        let z3 = group_algebra(&cyclic(3).unwrap()).unwrap();
        let wrong = z3.clone().with_antipode(Some(identity(3)));
        let r = verify_hopf(&wrong, tol()).unwrap();
        assert!(!r.get("antipode_left").unwrap().passed);
        let missing = z3.with_antipode(None);
        assert_eq!(
            verify_hopf(&missing, tol()).unwrap_err(),
            Error::MissingAntipode
        );
    }

    #[test]
    fn convolution_identities() {
        let h = group_algebra(&cyclic(3).unwrap()).unwrap();
        let mut rng = seeded(1);
        let f = random_matrix(&mut rng, 3, 3);
        let ee = unit_counit(&h);
        let conv = convolve_maps(&f, &ee, &h.coalg, &h.alg).unwrap();
        assert!(max_abs_diff(&conv, &f) < 1e-12);

        let s = h.antipode().unwrap();
        let conv = convolve_maps(&identity(3), s, &h.coalg, &h.alg).unwrap();
        assert!(max_abs_diff(&conv, &ee) < 1e-12);

        // Associativity against an explicit double contraction on ℂ^{S₃}.
        let f3 = function_algebra(&symmetric(3).unwrap()).unwrap();
        let (a, b, cc) = (
            random_matrix(&mut rng, 6, 6),
            random_matrix(&mut rng, 6, 6),
            random_matrix(&mut rng, 6, 6),
        );
        let ab = convolve_maps(&a, &b, &f3.coalg, &f3.alg).unwrap();
        let lhs = convolve_maps(&ab, &cc, &f3.coalg, &f3.alg).unwrap();
        let bc = convolve_maps(&b, &cc, &f3.coalg, &f3.alg).unwrap();
        let rhs = convolve_maps(&a, &bc, &f3.coalg, &f3.alg).unwrap();
        let mut oracle = CMatrix::zeros(6, 6);
        let n = 6;
        for k in 0..n {
            // (Δ⊗id)Δ(e_k) contracted with a⊗b⊗c then multiplied.
            for &((i, j), z) in f3.coalg.delta_terms(k) {
                for &((p, q), w) in f3.coalg.delta_terms(i) {
                    let ap = a.column(p).into_owned();
                    let bq = b.column(q).into_owned();
                    let cj = cc.column(j).into_owned();
                    let v = f3.alg.mul(&f3.alg.mul(&ap, &bq), &cj) * (z * w);
                    for r in 0..n {
                        oracle[(r, k)] += v[r];
                    }
                }
            }
        }
        assert!(max_abs_diff(&lhs, &rhs) < 1e-9);
        assert!(max_abs_diff(&lhs, &oracle) < 1e-9);
    }

    #[test]
    fn antipode_solver() {
        let z2 = cyclic(2).unwrap();
        let h = group_algebra(&z2).unwrap();
        let s = find_antipode(&h.clone().with_antipode(None), tol()).unwrap();
        assert!(max_abs_diff(&s, h.antipode().unwrap()) < 1e-9);

        let s3 = symmetric(3).unwrap();
        let f = function_algebra(&s3).unwrap();
        let s = find_antipode(&f, tol()).unwrap();
        for g in 0..6 {
            // S(δ_g) = δ_{g⁻¹}
            assert!((s[(s3.inverse(g), g)] - ONE).norm() < 1e-9);
        }

        let m = monoid_bialgebra().unwrap();
        assert!(matches!(
            find_antipode(&m, tol()),
            Err(Error::NoSolution { .. })
        ));
    }

    #[test]
    fn opposites() {
        let f = function_algebra(&symmetric(3).unwrap()).unwrap();
        let op = opposite(&f).unwrap();
        assert!(max_abs_diff(op.alg.mult(), f.alg.mult()) < 1e-12);
        let g = group_algebra(&symmetric(3).unwrap()).unwrap();
        let cop = coopposite(&g).unwrap();
        assert!(max_abs_diff(cop.coalg.delta(), g.coalg.delta()) < 1e-12);
        for h in [&f, &g] {
            for x in [opposite(h), coopposite(h), opcoopposite(h)] {
                assert!(verify_hopf(&x.unwrap(), tol()).unwrap().passed());
            }
        }
        // S: H → H^opcop is a Hopf *-isomorphism.
        let oc = opcoopposite(&g).unwrap();
        assert!(check_morphism(g.antipode().unwrap(), &oc, &g, tol()).unwrap());
    }

    #[test]
    fn duals() {
        let z3 = cyclic(3).unwrap();
        let d = dual_hopf(&group_algebra(&z3).unwrap()).unwrap();
        let f = function_algebra(&z3).unwrap();
        assert!(max_abs_diff(d.alg.mult(), f.alg.mult()) < 1e-12);
        assert!(max_abs_diff(d.coalg.delta(), f.coalg.delta()) < 1e-12);
        assert!(max_abs_diff(d.alg.star_matrix(), f.alg.star_matrix()) < 1e-12);
        assert!(verify_hopf(&d, tol()).unwrap().passed());

        let g = group_algebra(&symmetric(3).unwrap()).unwrap();
        let dd = dual_hopf(&dual_hopf(&g).unwrap()).unwrap();
        // The canonical pairing identifies H with H'' through the identity
        // matrix in dual-of-dual-basis coordinates.
        assert!(check_morphism(&identity(6), &dd, &g, tol()).unwrap());

        let fc = function_algebra(&symmetric(3).unwrap()).unwrap();
        assert!(fc.alg.is_commutative(tol()));
        assert!(dual_hopf(&fc).unwrap().coalg.is_cocommutative(tol()));
    }

    #[test]
    fn cancellation() {
        assert!(check_cancellation(
            &function_algebra(&symmetric(3).unwrap()).unwrap(),
            tol()
        ));
        assert!(check_cancellation(
            &group_algebra(&cyclic(5).unwrap()).unwrap(),
            tol()
        ));
        let m = monoid_bialgebra().unwrap();
        assert_eq!(cancellation_ranks(&m, tol()), (3, 3));
        assert!(!check_cancellation(&m, tol()));
    }

    #[test]
    fn grouplike_extraction() {
        let mut rng = seeded(0);
        let z4 = cyclic(4).unwrap();
        let gl = grouplikes(&group_algebra(&z4).unwrap(), tol(), &mut rng).unwrap();
        assert_eq!(gl.elements.len(), 4);
        assert!(gl.group.isomorphism_to(&z4).is_some());
        for (i, g) in gl.elements.iter().enumerate() {
            assert!(crate::tenscore::max_abs_diff_vec(g, &basis_vector(4, i)) < 1e-9);
        }

        let f = function_algebra(&cyclic(2).unwrap()).unwrap();
        let gl = grouplikes(&f, tol(), &mut rng).unwrap();
        assert_eq!(gl.elements.len(), 2);
        // Characters of Z₂ written as functions: (1, 1) and (1, -1).
        let trivial = CVector::from_vec(vec![ONE, ONE]);
        let sign = CVector::from_vec(vec![ONE, -ONE]);
        assert!(crate::tenscore::max_abs_diff_vec(&gl.elements[0], &trivial) < 1e-9);
        assert!(crate::tenscore::max_abs_diff_vec(&gl.elements[1], &sign) < 1e-9);

        // One-dimensional representations of S₃ are trivial and sign.
        let f = function_algebra(&symmetric(3).unwrap()).unwrap();
        assert_eq!(grouplikes(&f, tol(), &mut rng).unwrap().elements.len(), 2);
    }

    #[test]
    fn reconstruction() {
        let mut rng = seeded(0);
        for g in [symmetric(3).unwrap(), cyclic(6).unwrap()] {
            let rec = gelfand_reconstruct(&function_algebra(&g).unwrap(), tol(), &mut rng).unwrap();
            assert!(rec.group.isomorphism_to(&g).is_some());
        }
        let err = gelfand_reconstruct(
            &group_algebra(&symmetric(3).unwrap()).unwrap(),
            tol(),
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotCommutative { .. }));
    }

    #[test]
    fn morphisms() {
        // π(f) = f∘φ for the inclusion φ: Z₂ → Z₄, k ↦ 2k.
        let z2 = function_algebra(&cyclic(2).unwrap()).unwrap();
        let z4 = function_algebra(&cyclic(4).unwrap()).unwrap();
        let mut pi = CMatrix::zeros(2, 4);
        pi[(0, 0)] = ONE;
        pi[(1, 2)] = ONE;
        assert!(check_morphism(&pi, &z2, &z4, tol()).unwrap());
        assert!(check_morphism(&identity(4), &z4, &z4, tol()).unwrap());

        let mut rng = seeded(4);
        let mut r = random_matrix(&mut rng, 4, 4);
        // Keep it unital: every column sums to one maps 1 ↦ 1 in ℂ^{Z₄}.
        for j in 0..4 {
            let s: C64 = r.row(j).iter().sum();
            r[(j, 0)] += ONE - s;
        }
        assert!(crate::tenscore::max_abs_diff_vec(&(&r * z4.alg.unit()), z4.alg.unit()) < 1e-12);
        assert!(!check_morphism(&r, &z4, &z4, tol()).unwrap());
        assert!(check_morphism(&identity(3), &z4, &z4, tol()).is_err());
    }
}
