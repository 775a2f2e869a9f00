//! Exact combinatorial calculus of open-closed cobordisms with D-brane labels.
//!
//! Objects are sequences of circles and brane-labeled intervals carrying a permutation of
//! the interval positions. Morphisms are cobordisms described up to isomorphism by their
//! connected components: genus plus boundary circles. The crate composes, tensors and
//! classifies them, pulls boundary permutations back along them, and reads and writes a
//! small text format.

pub mod brane;
pub mod calculus;
pub mod classify;
pub mod object;
pub mod permutation;
pub mod random;
pub mod surface;
pub mod textio;

mod union_find;

pub use brane::{Brane, BraneSet};
pub use calculus::{
    compose, identity, is_morphism, make_t, pullback, realize, stabilize, swap, tensor,
    CalculusError,
};
pub use classify::{canonicalize, enumerate_classes, is_isomorphic, strata_table, CanonicalForm};
pub use object::{Entry, GeneralObject, ObjectError};
pub use permutation::Permutation;
pub use surface::{
    BoundaryCircle, Cobordism, Component, IntervalRef, InvariantSummary, MixedEntry, Side,
    Violation,
};
