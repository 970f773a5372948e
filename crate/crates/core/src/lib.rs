//! Exact enumeration of d-Dyck paths: Dyck paths whose consecutive valley
//! levels never drop by more than `|d|`.
//!
//! The crate computes the number of such paths, their peak and area
//! statistics and the associated generating functions in exact arithmetic,
//! with every quantity available from several independent methods and an
//! exhaustive enumerator to check them against.

pub mod asymptotics;
pub mod bijection;
pub mod cli;
pub mod enumerate;
pub mod path;
pub mod recurrences;
pub mod series;

pub use bijection::{phi, phi_inverse, Encoding};
pub use enumerate::{Enumerator, PathFilter};
pub use path::{DParam, Path, PathError, Step, ValleyVector};
pub use series::{BivariateSeries, MarkerPoly};
