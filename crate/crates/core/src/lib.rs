//! Grüss-type bounds for the Chebyshev functional
//!
//! ```text
//! G(x, y) = ⟨x, y⟩ − ⟨x, e⟩⟨e, y⟩
//! ```
//!
//! on weighted inner-product spaces over ℝ and ℂ, where `e` is a unit
//! reference vector. When the coordinates of `x` are known to lie in a box of
//! constants relative to `e`, the functional — the abstract covariance of `x`
//! and `y` — admits a family of computable upper bounds. This crate evaluates
//! those bounds, checks the admissibility conditions they require, transports
//! everything to discrete measures, and probes how sharp the constants are.
//!
//! Module map:
//!
//! * [`space`] — scalars, vectors, weighted inner products.
//! * [`conditions`] — box admissibility, slacks, combinations, samplers.
//! * [`bounds`] — the bound evaluators (`t1`, `t2`, `c3`, `t3`, `c4`) plus the
//!   Schwartz baseline and the two auxiliary inequalities they rest on.
//! * [`measures`] — discrete-measure instances delegating to the vector layer.
//! * [`sharpness`] — extremal families, parameter sweeps, randomized search.

pub mod bounds;
pub mod conditions;
pub mod error;
pub mod measures;
pub mod scalar;
pub mod sharpness;
pub mod space;

pub use bounds::{BoundId, BoundReport};
pub use conditions::{Bracket, Combination, ConditionReport, Sign};
pub use error::Error;
pub use scalar::Scalar;
pub use space::{Mode, Vector, WeightedSpace};

pub type Result<T> = std::result::Result<T, Error>;
