//! Moments, densities and distributions of n-step uniform random walks in d dimensions.
//!
//! Exact rational even moments, closed forms over named constant bases,
//! hypergeometric densities, an oscillatory Bessel-integral oracle and a
//! Monte Carlo simulator.

pub mod closed_moments;
pub mod densities;
pub mod error;
pub mod exact_moments;
pub mod genfun;
pub mod montecarlo;
pub mod numcore;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Result, WalkError};
pub use numcore::{BigRat, HalfInt, Real};
