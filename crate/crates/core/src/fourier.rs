//! Real Fourier projection on uniform periodic grids.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Angles `2πj/n` for `j = 0..n`.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| TAU * j as f64 / n as f64).collect()
}

/// Coefficients `(w0, [w1, .., w_max])` such that
/// `w(θ) ≈ w0 + Re Σ w_n e^{inθ}` for samples taken at [`uniform_angles`].
///
/// The Nyquist coefficient (`n = N/2`) is halved so that the expansion
/// reproduces the samples exactly at full degree.
pub fn real_fourier_coefficients(samples: &[f64], max_n: usize) -> (f64, Vec<Complex64>) {
    let n = samples.len();
    assert!(n > 0 && 2 * max_n <= n, "degree {max_n} exceeds half of {n} samples");
    let twiddle: Vec<Complex64> = (0..n).map(|j| Complex64::cis(-TAU * j as f64 / n as f64)).collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let coeffs = (1..=max_n)
        .map(|k| {
            let acc: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, &s)| twiddle[(k * j) % n] * s)
                .sum();
            let scale = if 2 * k == n { 1.0 } else { 2.0 };
            acc * (scale / n as f64)
        })
        .collect();
    (mean, coeffs)
}
