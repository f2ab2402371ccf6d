//! Exact reduced Donaldson–Thomas partition functions of `K3 × E` for
//! `h = 0` and `h = 1`.
//!
//! Two independent routes are provided for every series: an assembly from
//! strata contributions built on a brute-force topological vertex, and closed
//! forms built from Jacobi-form building blocks and the Igusa cusp form
//! `χ₁₀`. The [`verify`] module compares them coefficient by coefficient.

pub mod catalog;
pub mod dtcalc;
pub mod error;
pub mod forms;
pub mod json;
pub mod partitions;
pub mod series;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result, SeriesError};
pub use partitions::{partitions_of, Partition};
pub use series::{
    pl_add, pl_mul, pl_recip, qs_add, qs_equal, qs_mul, qs_pow, qs_recip, rat, Comparison,
    PLaurent, QSeries, Rational,
};
pub use vertex::{LegTriple, VertexEngine};
