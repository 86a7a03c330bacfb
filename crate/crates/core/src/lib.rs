//! Exact computation of Hurwitz numbers, psi-class brackets on the Picard
//! compactification, single-lambda Hodge integrals, and verification of the
//! Hirota / KP / linearized KP hierarchies on truncated generating series.
//!
//! Every coefficient is an arbitrary-precision rational; nothing in the crate
//! touches floating point.

pub mod error;
pub mod hierarchy;
pub mod hodge;
pub mod hurwitz;
pub mod interp;
pub mod partition;
pub mod pic;
pub mod rat;
pub mod series;
pub mod symmetric;

pub use error::{Error, Result};
pub use partition::{ColShape, Partition, RowShape};
pub use rat::Rat;
pub use series::{Caps, DiffOp, Family, Monomial, Substitution, TruncSeries, Var};
