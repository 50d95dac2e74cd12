//! Linear functionals on a finite quantum group: states, convolution and the
//! Haar state.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopfcore::{find_antipode, HopfData};
use crate::random::{random_matrix, seeded};
use crate::tenscore::{
    c, max_abs_vec, psd_check, solve_linear, sqrt_psd, trace, CMatrix, CVector, Tolerance, C64,
    ONE,
};

/// A covector `φ(e_k) = coeffs[k]` on the underlying space of `host`.
#[derive(Debug, Clone)]
pub struct Functional {
    host: Arc<HopfData>,
    coeffs: CVector,
}

impl Functional {
    pub fn new(host: Arc<HopfData>, coeffs: CVector) -> Result<Self> {
        if coeffs.len() != host.dim() {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} coefficients, algebra has dimension {}",
                coeffs.len(),
                host.dim()
            )));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("functional".into()));
        }
        Ok(Functional { host, coeffs })
    }

    /// The counit `ε` as a functional.
    pub fn counit(host: Arc<HopfData>) -> Self {
        let coeffs = host.coalg.counit().clone();
        Functional { host, coeffs }
    }

    pub fn host(&self) -> &Arc<HopfData> {
        &self.host
    }

    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    pub fn eval(&self, a: &CVector) -> C64 {
        self.coeffs.iter().zip(a.iter()).map(|(x, y)| x * y).sum()
    }

    pub fn scale(&self, s: C64) -> Functional {
        Functional {
            host: self.host.clone(),
            coeffs: &self.coeffs * s,
        }
    }

    /// Gram matrix `[φ(e_i* e_j)]`.
    pub fn gram(&self) -> CMatrix {
        let n = self.host.dim();
        let a = &self.host.alg;
        let stars: Vec<CVector> = (0..n).map(|i| a.star_matrix().column(i).into_owned()).collect();
        CMatrix::from_fn(n, n, |i, j| {
            self.eval(&a.mul(&stars[i], &crate::tenscore::basis_vector(n, j)))
        })
    }

    /// Largest `|φ(e_i e_j) − φ(e_j e_i)|`.
    pub fn trace_residual(&self) -> f64 {
        let n = self.host.dim();
        let a = &self.host.alg;
        let mut res: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.eval(&a.mul_basis(i, j)) - self.eval(&a.mul_basis(j, i));
                res = res.max(d.norm());
            }
        }
        res
    }

    pub fn is_tracial(&self, tol: Tolerance) -> bool {
        tol.accepts(self.trace_residual(), max_abs_vec(&self.coeffs))
    }
}

/// `(φ ⋆ ψ)(a) = (φ ⊗ ψ)(Δ(a))`.
pub fn convolve_functionals(phi: &Functional, psi: &Functional) -> Result<Functional> {
    if !Arc::ptr_eq(&phi.host, &psi.host) {
        return Err(Error::HostMismatch);
    }
    let h = &phi.host;
    let n = h.dim();
    let mut out = CVector::zeros(n);
    for (k, slot) in out.iter_mut().enumerate() {
        for &((i, j), z) in h.coalg.delta_terms(k) {
            *slot += z * phi.coeffs[i] * psi.coeffs[j];
        }
    }
    Ok(Functional {
        host: h.clone(),
        coeffs: out,
    })
}

/// `φ(𝟙) = 1` and the Gram matrix `[φ(e_i* e_j)]` is positive semidefinite.
pub fn is_state(phi: &Functional, tol: Tolerance) -> bool {
    let at_one = phi.eval(phi.host.alg.unit());
    tol.accepts((at_one - ONE).norm(), 1.0) && psd_check(&phi.gram(), tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaarMethod {
    Solve,
    Cesaro,
}

#[derive(Debug, Clone)]
pub struct HaarResult {
    pub state: Functional,
    pub method: HaarMethod,
    pub residual: f64,
    /// Doubling steps taken by the Cesàro construction; 0 for the solver.
    pub iterations: usize,
}

/// Largest deviation from `𝒉⋆μ = μ⋆𝒉 = μ(𝟙)𝒉` over the coordinate
/// functionals `μ`.
pub fn invariance_residual(haar: &Functional) -> f64 {
    let host = haar.host.clone();
    let n = host.dim();
    let mut res: f64 = 0.0;
    for k in 0..n {
        let mu = Functional {
            host: host.clone(),
            coeffs: crate::tenscore::basis_vector(n, k),
        };
        let target = haar.scale(mu.eval(host.alg.unit()));
        for conv in [
            convolve_functionals(haar, &mu).expect("same host"),
            convolve_functionals(&mu, haar).expect("same host"),
        ] {
            res = res.max(crate::tenscore::max_abs_diff_vec(&conv.coeffs, &target.coeffs));
        }
    }
    res
}

/// Haar state as the unique solution of left invariance, right invariance
/// and `𝒉(𝟙) = 1`.
///
/// A bialgebra without stored antipode first goes through
/// [`find_antipode`]; if none exists the input is not a finite quantum group
/// and [`Error::NoSolution`] is returned.
pub fn haar_solve(h: &Arc<HopfData>, tol: Tolerance) -> Result<HaarResult> {
    if h.antipode.is_none() {
        match find_antipode(h, tol) {
            Ok(_) => {}
            Err(Error::NoSolution { residual }) => return Err(Error::NoSolution { residual }),
            Err(Error::NotUnique { .. }) => return Err(Error::NoSolution { residual: f64::NAN }),
            Err(e) => return Err(e),
        }
    }
    let n = h.dim();
    let nn = n * n;
    let unit = h.alg.unit();
    let mut sys = CMatrix::zeros(2 * nn + 1, n);
    for a in 0..n {
        for &((i, j), z) in h.coalg.delta_terms(a) {
            // (𝒉 ⊗ id)Δ(e_a): coefficient of e_j picks up 𝒉_i.
            sys[(a * n + j, i)] += z;
            // (id ⊗ 𝒉)Δ(e_a): coefficient of e_i picks up 𝒉_j.
            sys[(nn + a * n + i, j)] += z;
        }
        for k in 0..n {
            sys[(a * n + k, a)] -= unit[k];
            sys[(nn + a * n + k, a)] -= unit[k];
        }
    }
    for (k, u) in unit.iter().enumerate() {
        sys[(2 * nn, k)] = *u;
    }
    let mut rhs = CMatrix::zeros(2 * nn + 1, 1);
    rhs[(2 * nn, 0)] = ONE;
    let sol = solve_linear(&sys, &rhs, tol)?;
    if !sol.nullspace.is_empty() {
        return Err(Error::NotUnique {
            dim: sol.nullspace.len(),
        });
    }
    let state = Functional::new(h.clone(), sol.x.column(0).into_owned())?;
    if !is_state(&state, tol) {
        return Err(Error::NotAState);
    }
    let residual = sol.residual.max(invariance_residual(&state));
    if !tol.accepts(residual, 1.0) {
        return Err(Error::NoSolution { residual });
    }
    Ok(HaarResult {
        state,
        method: HaarMethod::Solve,
        residual,
        iterations: 0,
    })
}

/// Faithful reference state `ω(a) = Tr(π(a) G) / Tr(G)` with `G = M*M` for
/// a seeded Gaussian `M`, where `π` is the left regular representation
/// written in a basis orthonormal for the algebra's Gram matrix (the
/// coordinate basis when none is attached).
pub fn default_omega(h: &Arc<HopfData>, seed: u64) -> Result<Functional> {
    let n = h.dim();
    let mut rng = seeded(seed);
    let m = random_matrix(&mut rng, n, n);
    let g = m.adjoint() * m;
    let (root, inv_root) = match h.alg.gram() {
        Some(k) => sqrt_psd(k)?,
        None => (crate::tenscore::identity(n), crate::tenscore::identity(n)),
    };
    let tr_g = trace(&g);
    let mut coeffs = CVector::zeros(n);
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let l = h.alg.left_mult(&crate::tenscore::basis_vector(n, k));
        *slot = trace(&(&root * l * &inv_root * &g)) / tr_g;
    }
    Functional::new(h.clone(), coeffs)
}

/// Haar state as the limit of the Cesàro means `(1/N) Σ_{k≤N} ω^{⋆k}`.
///
/// The means are evaluated at `N = 1, 2, 4, …` using
/// `S_{2N} = S_N + ω^{⋆N} ⋆ S_N` and `ω^{⋆2N} = ω^{⋆N} ⋆ ω^{⋆N}`; one
/// iteration is one doubling. Iteration stops once two successive means
/// differ by less than the tolerance in the sup norm of the coefficients.
pub fn haar_cesaro(
    h: &Arc<HopfData>,
    omega: Option<Functional>,
    max_iter: usize,
    tol: Tolerance,
    seed: u64,
) -> Result<HaarResult> {
    let omega = match omega {
        Some(w) => {
            if !Arc::ptr_eq(w.host(), h) {
                return Err(Error::HostMismatch);
            }
            w
        }
        None => default_omega(h, seed)?,
    };
    if !is_state(&omega, tol) {
        return Err(Error::NotAState);
    }
    let mut power = omega.clone();
    let mut sum = omega.clone();
    let mut count = 1.0f64;
    let mut mean = omega.coeffs.clone();
    let mut last = f64::INFINITY;
    // 2^60 terms is far past the point where the mean stops changing in
    // double precision.
    let limit = max_iter.min(60);
    for it in 1..=limit {
        let shifted = convolve_functionals(&power, &sum)?;
        sum.coeffs += shifted.coeffs;
        // Convolution powers of a state are states; renormalising keeps the
        // rounding error in the total mass from compounding over squarings.
        power = normalized(&convolve_functionals(&power, &power)?)?;
        count *= 2.0;
        let next = normalized(&sum.scale(c(1.0 / count, 0.0)))?.coeffs;
        last = crate::tenscore::max_abs_diff_vec(&next, &mean);
        mean = next;
        if tol.accepts(last, max_abs_vec(&mean)) {
            let state = Functional::new(h.clone(), mean)?;
            return Ok(HaarResult {
                state,
                method: HaarMethod::Cesaro,
                residual: last,
                iterations: it,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: limit,
        residual: last,
    })
}

/// Evaluation at `𝟙` scaled out: the normalised functional `φ / φ(𝟙)`.
pub fn normalized(phi: &Functional) -> Result<Functional> {
    let at_one = phi.eval(phi.host.alg.unit());
    if at_one.norm() < 1e-14 {
        return Err(Error::Numerical("functional vanishes on the unit".into()));
    }
    Ok(phi.scale(ONE / at_one))
}

/// Uniform convex combination of point masses `Σ w_i ev_i` on a function
/// algebra basis, as a functional.
pub fn weighted(host: Arc<HopfData>, weights: &[f64]) -> Result<Functional> {
    let coeffs = CVector::from_iterator(weights.len(), weights.iter().map(|&w| c(w, 0.0)));
    Functional::new(host, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, function_algebra, group_algebra, monoid_bialgebra, symmetric};
    use crate::tenscore::{basis_vector, max_abs_diff_vec};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn point_masses_convolve_to_products() {
        let g = symmetric(3).unwrap();
        let h = Arc::new(function_algebra(&g).unwrap());
        for a in 0..6 {
            for b in 0..6 {
                let ea = Functional::new(h.clone(), basis_vector(6, a)).unwrap();
                let eb = Functional::new(h.clone(), basis_vector(6, b)).unwrap();
                let conv = convolve_functionals(&ea, &eb).unwrap();
                assert!(max_abs_diff_vec(conv.coeffs(), &basis_vector(6, g.mul(a, b))) < 1e-12);
            }
        }
    }

    #[test]
    fn counit_is_neutral_and_states_convolve() {
        let h = Arc::new(group_algebra(&symmetric(3).unwrap()).unwrap());
        let eps = Functional::counit(h.clone());
        let phi = default_omega(&h, 3).unwrap();
        let conv = convolve_functionals(&eps, &phi).unwrap();
        assert!(max_abs_diff_vec(conv.coeffs(), phi.coeffs()) < 1e-12);
        let psi = default_omega(&h, 4).unwrap();
        assert!(is_state(&phi, tol()) && is_state(&psi, tol()));
        assert!(is_state(&convolve_functionals(&phi, &psi).unwrap(), tol()));

        let other = Arc::new(group_algebra(&symmetric(3).unwrap()).unwrap());
        let foreign = Functional::counit(other);
        assert_eq!(convolve_functionals(&eps, &foreign).unwrap_err(), Error::HostMismatch);
    }

    #[test]
    fn state_predicate() {
        let h = Arc::new(function_algebra(&cyclic(2).unwrap()).unwrap());
        let eps = Functional::counit(h.clone());
        assert!(is_state(&eps, tol()));
        assert!(!is_state(&eps.scale(-ONE), tol()));
        let uniform = weighted(h, &[0.5, 0.5]).unwrap();
        assert!(is_state(&uniform, tol()));
    }

    #[test]
    fn haar_by_solving() {
        let z5 = Arc::new(group_algebra(&cyclic(5).unwrap()).unwrap());
        let r = haar_solve(&z5, tol()).unwrap();
        assert!(max_abs_diff_vec(r.state.coeffs(), &basis_vector(5, 0)) < 1e-12);

        let f2 = Arc::new(function_algebra(&cyclic(2).unwrap()).unwrap());
        let r = haar_solve(&f2, tol()).unwrap();
        assert!(max_abs_diff_vec(r.state.coeffs(), &CVector::from_element(2, c(0.5, 0.0))) < 1e-12);

        let f6 = Arc::new(function_algebra(&symmetric(3).unwrap()).unwrap());
        let r = haar_solve(&f6, tol()).unwrap();
        let sixth = CVector::from_element(6, c(1.0 / 6.0, 0.0));
        assert!(max_abs_diff_vec(r.state.coeffs(), &sixth) < 1e-12);
        assert!(r.state.is_tracial(tol()));

        let m = Arc::new(monoid_bialgebra().unwrap());
        assert!(matches!(haar_solve(&m, tol()), Err(Error::NoSolution { .. })));
    }

    #[test]
    fn haar_by_cesaro() {
        let f2 = Arc::new(function_algebra(&cyclic(2).unwrap()).unwrap());
        let omega = weighted(f2.clone(), &[0.3, 0.7]).unwrap();
        let r = haar_cesaro(&f2, Some(omega), 100, tol(), 0).unwrap();
        let half = CVector::from_element(2, c(0.5, 0.0));
        assert!(max_abs_diff_vec(r.state.coeffs(), &half) < 1e-8);

        let exact = haar_solve(&f2, tol()).unwrap().state;
        let r = haar_cesaro(&f2, Some(exact), 100, tol(), 0).unwrap();
        assert_eq!(r.iterations, 1);

        let s3 = Arc::new(group_algebra(&symmetric(3).unwrap()).unwrap());
        let solved = haar_solve(&s3, tol()).unwrap();
        let ces = haar_cesaro(&s3, None, 10_000, tol(), 0).unwrap();
        assert!(max_abs_diff_vec(solved.state.coeffs(), ces.state.coeffs()) < 1e-6);
    }

    #[test]
    fn haar_is_idempotent() {
        let h = Arc::new(function_algebra(&symmetric(3).unwrap()).unwrap());
        let s = haar_solve(&h, tol()).unwrap().state;
        let ss = convolve_functionals(&s, &s).unwrap();
        assert!(max_abs_diff_vec(ss.coeffs(), s.coeffs()) < 1e-12);
    }
}
