use crate::disc::FunctionSpec;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

fn circle_values(f: &FunctionSpec, radius: f64, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::Data("need at least one sample".into()));
    }
    (0..n).map(|j| f.eval(Complex64::from_polar(radius, TAU * j as f64 / n as f64))).collect()
}

/// `sup |g − c f|` over `|z| ≤ radius` with `c` the least-squares phase on
/// the circle. The sup is taken on the boundary circle (maximum modulus).
pub fn gauge_aligned_sup_error(f: &FunctionSpec, g: &FunctionSpec, radius: f64, n: usize) -> Result<f64> {
    let fv = circle_values(f, radius, n)?;
    let gv = circle_values(g, radius, n)?;
    let inner: Complex64 = fv.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum();
    let c = if inner.norm() > 0.0 { inner / inner.norm() } else { Complex64::new(1.0, 0.0) };
    Ok(fv.iter().zip(&gv).map(|(a, b)| (b - c * a).norm()).fold(0.0, f64::max))
}

/// `min_λ max |g − e^{iλ} f|` on `|z| = radius`, with `λ` searched over
/// `phases` equispaced values.
pub fn best_gauge_distance(f: &FunctionSpec, g: &FunctionSpec, radius: f64, phases: usize, n: usize) -> Result<f64> {
    let fv = circle_values(f, radius, n)?;
    let gv = circle_values(g, radius, n)?;
    Ok((0..phases.max(1))
        .map(|j| {
            let c = Complex64::cis(TAU * j as f64 / phases.max(1) as f64);
            fv.iter().zip(&gv).map(|(a, b)| (b - c * a).norm()).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min))
}

fn permute(k: usize, perm: &mut Vec<usize>, a: &[Complex64], b: &[Complex64], best: &mut f64) {
    if k == perm.len() {
        let worst = perm.iter().enumerate().map(|(i, &j)| (a[i] - b[j]).norm()).fold(0.0, f64::max);
        *best = best.min(worst);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(k + 1, perm, a, b, best);
        perm.swap(k, i);
    }
}

/// `min over bijections σ of max |a_i − b_σ(i)|`, exhaustive (intended for
/// small sets); infinite when the sizes differ.
pub fn optimal_assignment_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut best = if a.is_empty() { 0.0 } else { f64::INFINITY };
    permute(0, &mut (0..a.len()).collect(), a, b, &mut best);
    best
}
