//! Weighted-graded polynomial rings, derivations and the named polynomial
//! corpus.

mod corpus;
mod derivation;
mod ring;
mod wpoly;

pub use corpus::{Corpus, CorpusItem, Mutation, CORPUS_NAMES};
pub use derivation::DerivationSpec;
pub use ring::{Monomial, RingRef, WRing};
pub use wpoly::WPoly;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("expected {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomial is not homogeneous of weight {0}")]
    Inhomogeneous(u32),
    #[error("derivation image of {var} has weight {got}, expected {expected}")]
    BadDerivation { var: String, got: u32, expected: i64 },
    #[error("unknown corpus name {0:?}")]
    UnknownName(String),
    #[error("{0} needs a concrete level")]
    NeedsConcreteLevel(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
