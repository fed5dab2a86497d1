//! Generalized cubic and overcubic partition functions, and the machinery
//! for checking their congruences: truncated q-series arithmetic, eta-quotient
//! metadata, Hecke operators with Sturm bounds, and Radu's finite
//! verification bound.

pub mod arith;
pub mod engine;
pub mod error;
pub mod etaq;
pub mod hecke;
pub mod qfuncs;
pub mod radu;
pub mod series;

pub use error::{Error, Result};
pub use series::{euler_factor, CoefficientRing, SparseSignedSeries, TruncatedSeries};
