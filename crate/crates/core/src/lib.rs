//! Finite-dimensional toolkit for Riesz bases, the non-self-adjoint
//! operators they diagonalize, their metric operators and ladder
//! factorizations.
//!
//! A generator `T` defines `φ_n = T e_n` and `ψ_n = (T⁻¹)* e_n`. From there
//! the crate builds `H^α_{φψ} = Σ α_n φ_n ⊗ ψ̄_n`, the metrics `S_φ = TT*`,
//! `S_ψ = S_φ⁻¹`, the self-adjoint form `h = S_ψ^{1/2} H S_φ^{1/2}`, and
//! lowering/raising operators, and checks every identity linking them as a
//! numerical residual.

pub mod domain;
pub mod error;
pub mod ladder;
pub mod linalg;
pub mod models;
pub mod operators;
pub mod random;
pub mod report;
pub mod riesz;
pub mod sequence;
pub mod similarity;
pub mod suite;

pub use domain::{DomainPredicate, DomainVerdict, EffectiveWeight, Inclusion, OperatorKind, Verdict, Weights};
pub use error::{Error, Result};
pub use ladder::LadderPair;
pub use linalg::{ComplexMatrix, HermitianEigen, DEFAULT_TOL};
pub use models::{ProjectionModel, ThreeLevelModel};
pub use num_complex::Complex64;
pub use operators::{Direction, OperatorBundle, Side};
pub use report::{Check, Summary, VerificationReport};
pub use riesz::RieszBasisPair;
pub use sequence::{SequenceKind, SequenceSpec};
pub use similarity::SInnerProduct;
pub use suite::{DomainReport, ProjectionParams, RandomParams};
