//! Exact and numeric machinery for Ramanujan-type lacunary recurrences of
//! Bernoulli numbers and their relatives.
//!
//! The exact core (`rational`, `cyclotomic`, `series`, `bernoulli`, `alpha`,
//! `lattice`, `verify`) never uses floating point for a pass/fail decision.
//! The `analytic` module covers the identities that only make sense
//! numerically.

pub mod alpha;
pub mod analytic;
pub mod bernoulli;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod rational;
pub mod ring;
pub mod series;
pub mod suite;
pub mod verify;

pub use cyclotomic::{CyclotomicContext, CyclotomicNumber};
pub use error::{Error, Result};
pub use rational::Rational;
pub use series::TruncSeries;
