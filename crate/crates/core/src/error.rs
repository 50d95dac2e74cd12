use thiserror::Error;

/// Errors raised by the algebraic and numerical routines of this crate.
///
/// Failed axioms are not errors: verifiers return a
/// [`VerificationReport`](crate::hopfcore::VerificationReport) instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid tolerance: abs={abs}, rel={rel} (both must lie in [0, 1))")]
    InvalidTolerance { abs: f64, rel: f64 },
    #[error("non-finite entry in {0}")]
    NonFinite(String),
    #[error("linear system has no solution (residual {residual:.3e})")]
    NoSolution { residual: f64 },
    #[error("solution is not unique ({dim}-dimensional nullspace)")]
    NotUnique { dim: usize },
    #[error("antipode required but missing")]
    MissingAntipode,
    #[error("antipode is not invertible")]
    SingularAntipode,
    #[error("algebra is not commutative (commutator residual {residual:.3e})")]
    NotCommutative { residual: f64 },
    #[error("functionals live on different Hopf algebras")]
    HostMismatch,
    #[error("invariant functional is not a state")]
    NotAState,
    #[error("Cesaro iteration did not converge after {iterations} steps (last difference {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("corepresentation identity fails (residual {residual:.3e})")]
    NotACorep { residual: f64 },
    #[error("corepresentation is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("corepresentation is not invertible")]
    NotInvertible,
    #[error("Gram matrix is singular or not positive")]
    SingularGram,
    #[error("equivalent conditions disagree: {0}")]
    InconsistentConditions(String),
    #[error("rewriting exceeded {steps} steps")]
    StepLimitExceeded { steps: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
