//! Scalar arithmetic: an arbitrary precision binary float, the `Real`
//! abstraction shared with `f64`, complex helpers and error-bounded values.

mod approx;
mod bigfloat;
pub mod complex;
mod real;

pub use approx::{Approx, ApproxComplex, ApproxReal, Measured};
pub use bigfloat::{BigFloat, DEFAULT_PRECISION};
pub use real::Real;
