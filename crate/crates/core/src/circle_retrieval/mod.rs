//! Two-circle data: ρ-scaled Blaschke divisors, the Poisson-Jensen identity,
//! zero deflation, equivalence verification, and reconstruction of
//! `z^k B O` functions from `|f|` on `T` and `ρT`.

mod deflate;
mod reconstruct;
mod verify;

pub use deflate::{deflate_circle_zeros, DEFLATION_THRESHOLD};
pub use reconstruct::{
    reconstruct_from_circles, reconstruct_from_circles_with, CirclePairData, CircleReport, ReconstructOptions,
    ZeroEstimate, DEFAULT_RECONSTRUCTION_TOL,
};
pub use verify::{verify_equivalence, verify_equivalence_with, EquivalenceVerdict, INTERIOR_GRID_POINTS};

use crate::disc::{poisson_integral, rho_factor, CircleSamples, FunctionSpec, WeightedPoint};
use crate::par::Execution;
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;

/// `∏ (ρ(z − a)/(ρ² − ā z))^m` over zeros `|a| < ρ`; unimodular on `|z| = ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoBlaschke {
    rho: f64,
    zeros: Vec<WeightedPoint>,
}

impl RhoBlaschke {
    pub fn new(rho: f64, zeros: Vec<WeightedPoint>) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Data(format!("rho must lie in (0, 1), got {rho}")));
        }
        for w in &zeros {
            if !(w.point.norm() < rho) || w.mult == 0 {
                return Err(Error::Data(format!(
                    "zero {} (multiplicity {}) must lie strictly inside the circle of radius {rho}",
                    w.point, w.mult
                )));
            }
        }
        Ok(Self { rho, zeros })
    }

    pub fn empty(rho: f64) -> Result<Self> {
        Self::new(rho, Vec::new())
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn zeros(&self) -> &[WeightedPoint] {
        &self.zeros
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for w in &self.zeros {
            let den = self.rho * self.rho - w.point.conj() * z;
            if den.norm() < PROXIMITY_TOL {
                return Err(Error::Domain { point: z, reason: format!("pole of the factor vanishing at {}", w.point) });
            }
            acc *= rho_factor(w.point, self.rho, z).powu(w.mult);
        }
        Ok(acc)
    }

    pub fn log_modulus(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval(z)?.norm().ln())
    }

    /// Zeros and poles of `spec` inside `ρD`, as two divisors.
    /// Fails when a zero or pole lies on `ρT`.
    pub fn from_spec(spec: &FunctionSpec, rho: f64) -> Result<(Self, Self)> {
        let mut zeros = Vec::new();
        let mut poles = Vec::new();
        for (p, m) in spec.divisor() {
            if (p.norm() - rho).abs() < PROXIMITY_TOL {
                return Err(Error::DeflationNeeded { rho, point: p });
            }
            if p.norm() < rho {
                let w = WeightedPoint::new(p, m.unsigned_abs() as u32);
                if m > 0 {
                    zeros.push(w);
                } else {
                    poles.push(w);
                }
            }
        }
        Ok((Self::new(rho, zeros)?, Self::new(rho, poles)?))
    }
}

/// Evaluates a ρ-scaled Blaschke product.
pub fn rho_blaschke_eval(divisor: &RhoBlaschke, z: Complex64) -> Result<Complex64> {
    divisor.eval(z)
}

/// Boundary sample count used by [`poisson_jensen_check`].
pub const POISSON_JENSEN_SAMPLES: usize = 512;

/// Largest `| log|f(z)/P(z)| − P[log|f| on ρT](z) |` over `grid`, where `P`
/// carries the zeros of `f` in `ρD` (and divides out its poles there).
/// Grid points within `1e-6` of a zero or pole are skipped, since both sides
/// of the identity are computed from `log|f|`.
pub fn poisson_jensen_check(spec: &FunctionSpec, rho: f64, grid: &[Complex64]) -> Result<f64> {
    poisson_jensen_check_with(spec, rho, grid, POISSON_JENSEN_SAMPLES, Execution::default())
}

pub fn poisson_jensen_check_with(
    spec: &FunctionSpec,
    rho: f64,
    grid: &[Complex64],
    n_samples: usize,
    exec: Execution,
) -> Result<f64> {
    let (zeros, poles) = RhoBlaschke::from_spec(spec, rho)?;
    let boundary = CircleSamples::new(
        rho,
        exec.map_slice(&crate::fourier::uniform_angles(n_samples), |&t| spec.log_modulus(Complex64::from_polar(rho, t)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?,
    )?;
    let divisor: Vec<Complex64> = spec.divisor().into_iter().map(|(p, _)| p).collect();
    let grid: Vec<Complex64> = grid.iter().copied().filter(|z| divisor.iter().all(|p| (z - p).norm() > 1e-6)).collect();
    let residuals = exec.map_slice(&grid, |&z| -> Result<f64> {
        let lhs = spec.log_modulus(z)? - zeros.log_modulus(z)? + poles.log_modulus(z)?;
        Ok((lhs - poisson_integral(&boundary, z)?).abs())
    });
    let mut worst: f64 = 0.0;
    for r in residuals {
        let r = r?;
        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
    }
    Ok(worst)
}

/// Points on circles of radius `r_max · (i + 1)/rings`, `per_ring` angles
/// each (half-step offset), plus the origin.
pub fn disc_grid(r_max: f64, rings: usize, per_ring: usize) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for i in 0..rings {
        let r = r_max * (i + 1) as f64 / rings as f64;
        for j in 0..per_ring {
            let t = std::f64::consts::TAU * (j as f64 + 0.5) / per_ring as f64;
            pts.push(Complex64::from_polar(r, t));
        }
    }
    pts
}
