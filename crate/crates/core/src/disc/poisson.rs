use crate::fourier::uniform_angles;
use crate::{Error, Result};
use num_complex::Complex64;

pub const DEFAULT_QUADRATURE_POINTS: usize = 1024;

/// Real samples on the circle `|z| = radius` at the angles `2πj/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSamples {
    pub radius: f64,
    pub values: Vec<f64>,
}

impl CircleSamples {
    pub fn new(radius: f64, values: Vec<f64>) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Data(format!("circle radius must be positive, got {radius}")));
        }
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("circle samples must be finite and nonempty".into()));
        }
        Ok(Self { radius, values })
    }

    /// Samples `f(θ)` on `n` uniform angles.
    pub fn from_fn(radius: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(radius, uniform_angles(n).into_iter().map(f).collect())
    }

    pub fn angles(&self) -> Vec<f64> {
        uniform_angles(self.values.len())
    }
}

/// `Re((r e^{iθ} + z)/(r e^{iθ} − z)) = (r² − |z|²)/|r e^{iθ} − z|²`.
pub fn poisson_kernel(radius: f64, theta: f64, z: Complex64) -> f64 {
    let zeta = Complex64::from_polar(radius, theta);
    (radius * radius - z.norm_sqr()) / (zeta - z).norm_sqr()
}

/// Harmonic extension of the boundary samples to `z`, by the periodic
/// trapezoid rule (spectrally accurate for smooth data).
pub fn poisson_integral(boundary: &CircleSamples, z: Complex64) -> Result<f64> {
    if !(z.norm() < boundary.radius) {
        return Err(Error::Domain {
            point: z,
            reason: format!("Poisson integral needs |z| < {}", boundary.radius),
        });
    }
    let n = boundary.values.len() as f64;
    let sum: f64 = boundary
        .angles()
        .into_iter()
        .zip(&boundary.values)
        .map(|(t, v)| poisson_kernel(boundary.radius, t, z) * v)
        .sum();
    Ok(sum / n)
}
