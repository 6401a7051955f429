//! Constructive machinery for common hypercyclic translates of entire functions.
//!
//! The crate builds the two-dimensional sector partition, the translated disk
//! family attached to it, the covering locator used to find a partition point
//! near any sector point, and a least-squares polynomial fitter standing in for
//! the existential approximation step. It also generates and analyses the
//! sequences `Λ = (λ_n)` that drive the construction.
//!
//! Everything here is `no_std` + `alloc`. File formats, configuration and the
//! command-line front-end live in the `hyperpart` crate.

#![no_std]
// NaN must fail range checks, so negated comparisons are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approx;
pub mod covering;
pub mod disks;
mod error;
pub mod numeric;
pub mod partition;
pub mod sequence;

pub use error::{Error, Result};
pub use num_complex::Complex64;
