//! Finite quantum groups as structure tensors.
//!
//! A finite-dimensional Hopf *-algebra is stored through its structure
//! constants (multiplication, unit, comultiplication, counit, antipode and the
//! antilinear involution). Every axiom becomes a finite matrix identity that
//! can be checked numerically, and the higher-level constructions (Haar
//! state, corepresentation theory, the dual discrete quantum group) are built
//! on top of that representation.
//!
//! Module overview:
//!
//! * [`tenscore`]: dense complex linear algebra and tensor-leg bookkeeping.
//! * [`hopfcore`]: algebras, coalgebras and Hopf *-algebras with verifiers.
//! * [`measures`]: functionals, convolution and the Haar state.
//! * [`corep`]: corepresentations, intertwiners, decomposition, Q-matrices.
//! * [`dualqg`]: the dual discrete quantum group and its Fourier transform.
//! * [`freestar`]: free *-algebra presentations and rewriting.
//! * [`catalog`]: finite groups and ready-made examples.

pub mod catalog;
pub mod corep;
pub mod dualqg;
pub mod error;
pub mod freestar;
pub mod hopfcore;
pub mod measures;
pub mod random;
pub mod tenscore;

pub use error::{Error, Result};
pub use tenscore::{CMatrix, CVector, Tolerance, C64};
