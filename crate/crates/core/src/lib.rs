//! Exact Ratliff–Rush filtration kernel for one-dimensional numerical
//! semigroup rings `k[[t^a1, ..., t^ak]]`.
//!
//! Every ideal and module that appears is monomial, so it is represented by
//! the set of valuations of its elements. Colons, products and lengths become
//! set operations on cofinite integer sets, and every result is exact.

mod bits;
pub mod error;
pub mod ideal;
pub mod oracle;
pub mod qh;
pub mod rr;
pub mod semigroup;

pub use error::{Error, Result};
pub use ideal::NormalizedIdeal;
pub use qh::{QuasiHilbertReport, StableWindow};
pub use rr::{Filtration, RRIndices, ReductionData};
pub use semigroup::NumericalSemigroup;
