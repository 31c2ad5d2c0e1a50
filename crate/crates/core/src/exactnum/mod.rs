//! Scalar layer.
//!
//! - [`Rational`]: arbitrary-precision rational with a canonical `p/q` string form.
//! - [`Scalar`]: the field operations the numeric code is generic over (`Rational`, `f64`).
//! - q-Pochhammer symbols and terminating basic hypergeometric sums.
//! - Divided differences for leading coefficients and interpolation degrees.

mod interp;
mod qseries;
mod rational;
mod scalar;

pub use interp::{interpolation_degree, leading_coefficient, newton_coefficients};
pub use qseries::{
    basic_hyper_terminating, qpochhammer, qpochhammer_inf_approx, qpochhammer_multi, HyperSpec,
};
pub use rational::Rational;
pub use scalar::{div, powi, product, Scalar};
