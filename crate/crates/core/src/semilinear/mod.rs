//! Finite-dimensional spaces over `F_{q²}` with linear and Frobenius
//! semilinear maps: a concrete abelian setting for anti-morphisms.
//!
//! The reverse map `1*` is the Frobenius applied coordinatewise in the
//! standard basis.

mod field;
mod map;
mod matrix;
mod theorems;

use thiserror::Error;

pub use field::{Elem, FieldFq2};
pub use map::{all_vectors, quotient_by, FactorSequence, Quotient, SemilinearMap, Subspace};
pub use matrix::Matrix;
pub use theorems::{
    all_maps, almost_abelian_audit, an_bifunctor_check, run_suite, verify_anti_mono_epi,
    verify_generalized_anti_factorization, verify_generalized_anti_hom, verify_generalized_second_iso, SuiteConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("{0} is not a field element")]
    NotAFieldElement(usize),
    #[error("fields differ: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("both maps must be anti")]
    NotAnti,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{candidates} candidate maps exceed the bound {bound}")]
    BoundExceeded { candidates: u128, bound: u64 },
}
