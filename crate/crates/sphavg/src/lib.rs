//! Numerical toolkit for generalized spherical means `A_t^alpha`:
//! complex-order Bessel functions and the associated Fourier multiplier,
//! q-variation and jump functionals of sampled paths, exact and quadrature
//! evaluation of the means on radial data and periodic grids, and the
//! chirp / step-function experiments probing variation growth.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `sphavg` binary exposes the same operations for batch runs.

// `!(x >= y)`-style guards are deliberate: they reject NaN along with the
// out-of-range values, which `x < y` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants are kept at full printed precision even where that
// exceeds f64, so they can be checked against their source verbatim
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod counterexample;
pub mod error;
pub mod fit;
pub mod means;
pub mod quad;
pub mod special;
pub mod variation;

pub use error::{Error, Result};
pub use special::ComplexParam;
