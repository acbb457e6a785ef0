//! Matrix-layout laboratory.
//!
//! Index conversion between Cartesian `(i, j)` coordinates and linear offsets
//! for row-major, Hilbert, Peano, Morton and Morton-hybrid orders, an
//! operation-cost model for those conversions, finite-field matrices stored
//! under any of the layouts, and a recursive quadrant-based TU elimination
//! kernel that exercises row and column traversals through the codecs.

pub mod codec;
pub mod cost;
pub mod error;
pub mod field;
pub mod harness;
pub mod matrix;
pub mod rng;
pub mod tu;

pub use codec::{
    CartesianIndex, Curve, DilationProfile, HilbertPattern, LayoutSpec, LinearIndex, PeanoPattern,
};
pub use cost::{counted_decode, counted_encode, report_counts, CostRow, OpCounter};
pub use error::{Axis, Error, Result};
pub use field::{FieldElement, PrimeField};
pub use matrix::{LayoutMatrix, Quadrant, QuadrantView, Window};
pub use tu::{
    rank_oracle, tu_decompose, tu_step1, Step1Outcome, Transform, TransformLog, TuOptions, TuResult,
};
