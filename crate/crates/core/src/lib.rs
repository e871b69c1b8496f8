//! Finite-semigroup analysis: Green's relations, the posets of K-classes
//! and their heights, structural predicates, constructions of extremal
//! examples, exhaustive enumeration of small semigroups and a harness that
//! checks the known height inequalities on any input.

pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod green;
pub mod ideal;
pub mod mtab;
pub mod semigroup;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use green::{GreenStructure, Preorder, Relation};
pub use ideal::{ideal_closure, Ideal};
pub use semigroup::{
    adjoin_identity, adjoin_zero, build_semigroup, direct_product, opposite, FiniteSemigroup,
};
