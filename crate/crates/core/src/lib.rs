//! Goodness-of-fit tests for the Laplace distribution.
//!
//! Forty statistics with Monte Carlo calibration, an alternative-distribution
//! power study, and the aggregation used to compare the tests.

pub mod alternatives;
pub mod battery;
pub mod ecdf;
pub mod engine;
pub mod entropy;
pub mod error;
pub mod harness;
pub mod laplace;
pub mod moment;
pub mod numeric;
pub mod other;
pub mod rng;

pub use battery::{Direction, Family, TestId};
pub use error::{Error, Result};
pub use laplace::{estimate, standardize, Estimates, LaplaceParams, Sample, StandardizedSample};
