//! Forward evaluation on the unit disc.
//!
//! Every function class handled by the crate lives here: power series
//! `z^k e^{φ(z)}`, rational functions, and the factored Nevanlinna form
//! `e^{iγ} B S_num O / S_den`, optionally multiplied by ρ-scaled Blaschke
//! factors. Singular measures are finite sums of boundary point masses and the
//! outer log-modulus is a trigonometric polynomial, so every factor has a
//! closed form.

mod blaschke;
mod json;
mod outer;
mod poisson;
mod series;
mod singular;
mod spec;

pub use blaschke::FiniteBlaschkeProduct;
pub use json::SpecDocument;
pub use outer::{outer_from_log_modulus, TrigPolyLogModulus};
pub use poisson::{poisson_integral, poisson_kernel, CircleSamples, DEFAULT_QUADRATURE_POINTS};
pub use series::PowerSeries;
pub use singular::{Atom, AtomicSingularInner};
pub use spec::{eval, eval_boundary_log_modulus, Factored, FunctionSpec, RhoFactor, SpecKind};
pub(crate) use spec::merge_signed;

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point with a positive multiplicity (zero or pole of a given order).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub point: Complex64,
    pub mult: u32,
}

impl WeightedPoint {
    pub fn new(point: Complex64, mult: u32) -> Self {
        Self { point, mult }
    }

    pub fn simple(point: Complex64) -> Self {
        Self { point, mult: 1 }
    }
}

pub(crate) fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Data(format!("{what} is not finite: {z}")))
    }
}

/// `ρ(z − a)/(ρ² − ā z)`: unimodular on `|z| = ρ`, vanishing at `a`.
pub fn rho_factor(a: Complex64, rho: f64, z: Complex64) -> Complex64 {
    rho * (z - a) / (rho * rho - a.conj() * z)
}

/// Smallest angular distance between two angles, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
