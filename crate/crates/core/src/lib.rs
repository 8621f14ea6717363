//! Exact computational Lie theory for graded split simple Lie algebras.
//!
//! Everything is built from a Chevalley basis with exact rational
//! coefficients: structure constants, root-graded decompositions, the
//! invariant tensors of the five-term grading, orbit-cone membership,
//! degeneration limits, and the Picard-lattice dictionaries of low-degree
//! del Pezzo surfaces. No floating point is used anywhere; every check is
//! an identity of rational numbers.

pub mod algebra;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod orbit;
pub mod picard;
pub mod rat;
pub mod report;
pub mod roots;
pub mod series;

pub use algebra::{AlgebraElement, GradedAlgebra, SignConvention};
pub use invariants::QuarticData;
pub use module::AdjointModule;
pub use rat::Q;
pub use report::{Check, Report};
pub use roots::{CartanKind, CartanType, Root, RootSystem, Weight};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra is not graded by a marked simple root")]
    Ungraded,
    #[error("marked root does not give an adjoint-fundamental grading: {0}")]
    NotAdjointFundamental(String),
    #[error("exp of a non-nilpotent operator (ad powers did not terminate)")]
    NotNilpotent,
    #[error("element has a non-integral eigenvalue: {0}")]
    NonIntegralEigenvalue(String),
    #[error("linear system is infeasible: {0}")]
    Infeasible(String),
    #[error("point is not on the orbit cone")]
    NotOnCone,
    #[error("series has surviving negative powers; lowest term t^{exponent}")]
    NegativePower { exponent: i64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
