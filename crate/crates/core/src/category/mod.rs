//! Finite categories as explicit composition tables, factorization
//! categories with formal anti-morphisms, factorable functors, products
//! and the CAF/FCA adjunctions.

mod adjunction;
mod factorable;
mod factorization;
mod finite;
mod functor;
mod products;

use thiserror::Error;

pub use adjunction::{check_adjunctions, check_preadditive_adjunctions, AdjunctionConfig};
pub use factorable::{
    caf_functor, check_antiproduct_preservation, check_factorable, enumerate_factorable, FactorableCount,
    FactorableFunctor,
};
pub use factorization::{
    agree_up_to_renaming, anti_category, associated_category, caf, f_an, fca, g_an, iso_correspondence,
    law_of_factorization, merge_generator, verify_anti_category, FactorizationCategory,
};
pub use finite::{Additive, Arrow, FiniteCategory, NONE};
pub use functor::{check_equivalence, enumerate_functors, Functor, MAX_ARROWS, MAX_OBJECTS};
pub use products::{anti_product_uniqueness, check_anti_universal, find_products, Product};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error("{arrow} is not an identity at {object}")]
    BadIdentity { object: String, arrow: String },
    #[error("composition is not associative at ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("additive structure invalid: {0}")]
    NotAdditive(String),
    #[error("factorization axiom {axiom} fails: {witness}")]
    AxiomViolation { axiom: u8, witness: String },
    #[error("{0} ∘ 1* ≠ 1* ∘ {0}")]
    ReverseNotCentral(String),
    #[error("{name} has {objects} objects and {arrows} arrows, beyond the enumeration limit")]
    TooLarge { name: String, objects: usize, arrows: usize },
    #[error("{candidates} candidates exceed the bound {bound}")]
    BoundExceeded { candidates: u128, bound: u64 },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("no product of {0}")]
    NoProduct(String),
}
