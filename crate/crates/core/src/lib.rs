//! Phase retrieval of holomorphic functions from modulus-only data.
//!
//! The crate recovers a holomorphic function `f`, up to a unimodular constant,
//! from `|f|` sampled on two segments crossing at their common midpoint, and
//! verifies or reconstructs functions of the Nevanlinna class from `|f|` on two
//! concentric circles.
//!
//! Layout:
//!
//! * [`disc`]: forward evaluation of power-series, rational and factored
//!   (Blaschke × singular inner × outer / singular inner) functions, the
//!   Poisson integral and boundary log-modulus projection.
//! * [`sampling`]: modulus traces on segments and circles, affine
//!   normalization of segment pairs, multiplicative noise.
//! * [`segment_retrieval`]: coefficient recovery from two segment traces.
//! * [`circle_retrieval`]: ρ-scaled Blaschke divisors, the Poisson-Jensen
//!   identity, equivalence verification and Blaschke × outer reconstruction.
//! * [`mero`]: divisor calculus for rational functions and the two-circle
//!   modulus rule (equal moduli on two circles force `G = c z^m F`).
//! * [`generators`]: seeded synthetic functions and the independent oracles
//!   used by the test suites.
//!
//! Batch work (trace sampling, interior grids, multi-start searches) runs on
//! rayon when the `parallel` feature is enabled and sequentially otherwise; see
//! [`par::Execution`].

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle_retrieval;
pub mod disc;
pub mod error;
pub mod fourier;
pub mod generators;
pub mod mero;
pub mod par;
pub mod rng;
pub mod sampling;
pub mod segment_retrieval;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// A point of the complex plane.
pub type ComplexPoint = Complex64;

/// Distance below which a point is considered to sit on a zero, pole, atom or
/// evaluation contour.
pub const PROXIMITY_TOL: f64 = 1e-12;
