//! Anti-homomorphisms of finite groups, rings, semilinear spaces and
//! finite categories, checked exhaustively at desk scale.

pub mod category;
pub mod corpus;
pub mod group;
pub mod io;
pub mod morphism;
pub mod report;
pub mod ring;
pub mod runner;
pub mod semilinear;
pub mod theorem;

pub use group::{FiniteGroup, GroupError, Subgroup};
pub use morphism::{Classification, Morphism, MorphismError, Structure, Variance};
pub use report::{Check, TheoremReport, Uniqueness};
pub use ring::{FiniteRing, RingError, RingIdeal, Side};
