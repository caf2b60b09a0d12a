//! Exact distance analysis of the Sierpinski pentagon graph family.
//!
//! The family `G(t)` starts from a 5-cycle (`t = 0`); each step glues five
//! copies of the previous generation in a ring, merging one corner of each
//! copy with a corner of the next. This crate provides three independent
//! routes to the family's metric quantities and cross-validates them:
//!
//! * [`graph`] + [`oracle`]: explicit construction and brute-force BFS.
//!   Exact by definition, exponential cost, usable for small `t`.
//! * [`engine`]: exact integer recurrences for corner distances, corner row
//!   sums, the difference-value histograms, the overcount correction
//!   `delta`, and the assembled total pair distance `D(t)`. Polynomial cost
//!   in the diameter, usable up to `t = 19` (`t = 20` for `D`/APL).
//! * [`rad3`]: closed forms in the quadratic ring Q(sqrt 3), plus decimal
//!   approximation models; [`fit`] recovers the approximation coefficients
//!   from the exact data by least squares in exact rational arithmetic.
//!
//! All cross-checks live in the test suite; the library itself never
//! mixes floating point into an exact path.

pub mod decimal;
pub mod engine;
pub mod error;
pub mod fit;
pub mod graph;
pub mod oracle;
pub mod rad3;

pub use error::{PentaError, Result};
