use crate::fourier::real_fourier_coefficients;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Boundary log-modulus `θ ↦ mean + Σ (cos_n cos nθ + sin_n sin nθ)` and the
/// outer function it determines.
///
/// The harmonic extension of the log-modulus is the real part of
/// `mean + Σ (cos_n − i sin_n) z^n`, so the outer function is the exponential
/// of that polynomial, which is exactly the Herglotz integral of the boundary
/// data.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigPolyLogModulus {
    pub mean: f64,
    #[serde(rename = "cos")]
    pub cos_coeffs: Vec<f64>,
    #[serde(rename = "sin")]
    pub sin_coeffs: Vec<f64>,
}

impl TrigPolyLogModulus {
    pub fn new(mean: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        if !(mean.is_finite() && cos_coeffs.iter().chain(&sin_coeffs).all(|c| c.is_finite())) {
            return Err(Error::Data("outer log-modulus coefficients must be finite".into()));
        }
        Ok(Self { mean, cos_coeffs, sin_coeffs })
    }

    pub fn constant(mean: f64) -> Self {
        Self { mean, ..Self::default() }
    }

    pub fn degree(&self) -> usize {
        self.cos_coeffs.len().max(self.sin_coeffs.len())
    }

    /// Complex coefficient `cos_n − i sin_n` of `z^n` in `log O`.
    pub fn analytic_coefficient(&self, n: usize) -> Complex64 {
        let c = self.cos_coeffs.get(n - 1).copied().unwrap_or(0.0);
        let s = self.sin_coeffs.get(n - 1).copied().unwrap_or(0.0);
        Complex64::new(c, -s)
    }

    /// Boundary value `log|O*(e^{iθ})|`.
    pub fn value(&self, theta: f64) -> f64 {
        let mut acc = self.mean;
        for (k, c) in self.cos_coeffs.iter().enumerate() {
            acc += c * ((k + 1) as f64 * theta).cos();
        }
        for (k, s) in self.sin_coeffs.iter().enumerate() {
            acc += s * ((k + 1) as f64 * theta).sin();
        }
        acc
    }

    /// `log O(z)`, holomorphic everywhere (the polynomial is entire).
    pub fn log_outer(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (1..=self.degree()).rev() {
            acc = (acc + self.analytic_coefficient(n)) * z;
        }
        acc + self.mean
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.log_outer(z).exp()
    }

    /// Drops trailing harmonics whose magnitude is at most `threshold`.
    pub fn truncated(mut self, threshold: f64) -> Self {
        let mut d = self.degree();
        while d > 0 && self.analytic_coefficient(d).norm() <= threshold {
            d -= 1;
        }
        self.cos_coeffs.resize(d, 0.0);
        self.sin_coeffs.resize(d, 0.0);
        self
    }
}

/// Projects log-modulus samples on the uniform grid `θ_j = 2πj/N` onto the
/// trigonometric polynomials of the given degree.
pub fn outer_from_log_modulus(samples: &[f64], degree: usize) -> Result<TrigPolyLogModulus> {
    if samples.is_empty() {
        return Err(Error::Data("no log-modulus samples".into()));
    }
    if let Some(j) = samples.iter().position(|s| !s.is_finite()) {
        return Err(Error::Data(format!("log-modulus sample {j} is not finite")));
    }
    if 2 * degree > samples.len() {
        return Err(Error::Data(format!(
            "degree {degree} exceeds half the number of samples ({})",
            samples.len()
        )));
    }
    let (mean, w) = real_fourier_coefficients(samples, degree);
    Ok(TrigPolyLogModulus {
        mean,
        cos_coeffs: w.iter().map(|c| c.re).collect(),
        sin_coeffs: w.iter().map(|c| -c.im).collect(),
    })
}
