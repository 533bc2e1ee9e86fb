//! Exact verification of the C₂-algebra and Zhu-algebra computations for
//! the affine sl₂ vacuum module at positive integer level.

pub mod arith;
pub mod poly;
pub mod slice;
pub mod verify;
pub mod weyl;

pub use arith::{ExactMatrix, Field, RatFuncK, Rational, ScalarMode, UniPoly};
pub use poly::{Corpus, Mutation, WPoly, WRing};
pub use verify::{run_check, run_suite, CheckId, CheckResult, RunConfig, Status};
pub use weyl::{Letter, PbwMonomial, PbwVector, WeylEngine};
