use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Truncated power series `c_0 + c_1 z + … + c_N z^N`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PowerSeries {
    pub coefficients: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn truncation_order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients.get(n).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Adds `delta` to the coefficient of `z^n`, growing the series if needed.
    pub fn add_term(&mut self, n: usize, delta: Complex64) {
        if self.coefficients.len() <= n {
            self.coefficients.resize(n + 1, Complex64::new(0.0, 0.0));
        }
        self.coefficients[n] += delta;
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}
