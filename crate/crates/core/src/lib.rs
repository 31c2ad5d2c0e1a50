//! Exact q-Racah polynomials and their Krall-type modifications.
//!
//! - [`exactnum`]: rationals, q-Pochhammer symbols, terminating basic series.
//! - [`lattice`]: the q-quadratic lattice and its difference quotients.
//! - [`qracah`]: the monic q-Racah family and its main data.
//! - [`kernels`]: reproducing kernels, Christoffel-Darboux and compact endpoint forms.
//! - [`krall`]: two endpoint masses, representation formulas, modified recurrence.
//! - [`limits`]: dual q-Hahn, q-Hahn and classical Racah limits.
//! - [`oracle`]: Gram-Schmidt on an explicit discrete measure.
//! - [`verify`]: identity suites producing a [`report::VerificationReport`].

pub mod config;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod family;
pub mod kernels;
pub mod krall;
pub mod lattice;
pub mod limits;
pub mod oracle;
pub mod qracah;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{Rational, Scalar};
pub use family::OrthogonalFamily;
