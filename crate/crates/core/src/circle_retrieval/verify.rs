use crate::disc::FunctionSpec;
use crate::par::Execution;
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Interior points on `|z| = ρ/2` used for the ratio-constancy test.
pub const INTERIOR_GRID_POINTS: usize = 200;
const INTERIOR_EXCLUSION: f64 = 1e-3;
const CIRCLE_SAMPLES: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Unimodular `c` with `g = c f`; present when equivalent.
    pub gauge: Option<Complex64>,
    /// `max |log|g| − log|f||` on the unit circle.
    #[serde(rename = "residual_T")]
    pub residual_t: f64,
    /// Same on `|z| = ρ`.
    #[serde(rename = "residual_rhoT")]
    pub residual_rho_t: f64,
    /// `max |g/f − c|` over the interior grid, `c` the normalized mean ratio.
    pub interior_ratio_deviation: f64,
}

fn half_step_angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| TAU * (j as f64 + 0.5) / n as f64).collect()
}

fn check_clear(spec: &FunctionSpec, rho: f64) -> Result<()> {
    for (p, _) in spec.divisor() {
        for r in [1.0, rho] {
            if (p.norm() - r).abs() < PROXIMITY_TOL {
                return Err(Error::DeflationNeeded { rho: r, point: p });
            }
        }
    }
    Ok(())
}

fn max_abs_diff(a: Vec<Result<f64>>, b: Vec<Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in a.into_iter().zip(b) {
        let d = (x? - y?).abs();
        worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
    }
    Ok(worst)
}

/// Decides whether `g = c f` on the disc for a unimodular `c`, from the
/// moduli on `T` and `ρT` plus an interior constancy test of `g/f`.
///
/// Mismatched zero sets show up as large ratio deviations, not as errors.
pub fn verify_equivalence(f: &FunctionSpec, g: &FunctionSpec, rho: f64, tol: f64) -> Result<EquivalenceVerdict> {
    verify_equivalence_with(f, g, rho, tol, Execution::default())
}

pub fn verify_equivalence_with(
    f: &FunctionSpec,
    g: &FunctionSpec,
    rho: f64,
    tol: f64,
    exec: Execution,
) -> Result<EquivalenceVerdict> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Data(format!("rho must lie in (0, 1), got {rho}")));
    }
    if !(tol >= 0.0) {
        return Err(Error::Data(format!("tolerance must be nonnegative, got {tol}")));
    }
    check_clear(f, rho)?;
    check_clear(g, rho)?;
    let angles = half_step_angles(CIRCLE_SAMPLES);
    for spec in [f, g] {
        spec.check_atoms_clear(&angles)?;
    }

    let on_t = |s: &FunctionSpec| exec.map_slice(&angles, |&t| s.boundary_log_modulus(t));
    let residual_t = max_abs_diff(on_t(f), on_t(g))?;
    let on_rho = |s: &FunctionSpec| exec.map_slice(&angles, |&t| s.log_modulus(Complex64::from_polar(rho, t)));
    let residual_rho_t = max_abs_diff(on_rho(f), on_rho(g))?;

    let avoid: Vec<Complex64> = f.divisor().into_iter().chain(g.divisor()).map(|(p, _)| p).collect();
    let grid: Vec<Complex64> = half_step_angles(INTERIOR_GRID_POINTS)
        .into_iter()
        .map(|t| Complex64::from_polar(0.5 * rho, t))
        .filter(|z| avoid.iter().all(|p| (z - p).norm() > INTERIOR_EXCLUSION))
        .collect();
    if grid.is_empty() {
        return Err(Error::Data("every interior grid point is within the exclusion disc of a zero".into()));
    }
    let ratios = exec
        .map_slice(&grid, |&z| Ok(g.eval(z)? / f.eval(z)?))
        .into_iter()
        .collect::<Result<Vec<Complex64>>>()?;
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let c = mean / mean.norm();
    let mut interior_ratio_deviation = ratios.iter().map(|r| (r - c).norm()).fold(0.0, f64::max);
    if !interior_ratio_deviation.is_finite() {
        interior_ratio_deviation = f64::INFINITY;
    }

    let equivalent = residual_t <= tol && residual_rho_t <= tol && interior_ratio_deviation <= tol;
    Ok(EquivalenceVerdict {
        equivalent,
        gauge: equivalent.then_some(c),
        residual_t,
        residual_rho_t,
        interior_ratio_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{Atom, AtomicSingularInner, FiniteBlaschkeProduct, RhoFactor, TrigPolyLogModulus, WeightedPoint};
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn base() -> FunctionSpec {
        let b = FiniteBlaschkeProduct::new(1, vec![WeightedPoint::simple(c(0.2, -0.5)), WeightedPoint::simple(c(0.8, 0.1))], 0.0)
            .unwrap();
        FunctionSpec::blaschke_outer(b, TrigPolyLogModulus::new(0.1, vec![0.3, -0.2], vec![0.4]).unwrap())
    }

    #[test]
    fn gauge_variant_is_equivalent() {
        let f = base();
        let g = f.clone().with_gauge(FRAC_PI_4);
        let v = verify_equivalence(&f, &g, 0.6, 1e-10).unwrap();
        assert!(v.equivalent, "{v:?}");
        assert!((v.gauge.unwrap() - Complex64::cis(FRAC_PI_4)).norm() < 1e-12);
    }

    #[test]
    fn single_circle_impostor_rejected() {
        // the factor is unimodular on |z| = 0.6; on T its modulus is 0.6|ζ − 0.8|/|0.36 − 0.8ζ|
        let f = base();
        let g = f.clone().with_rho_factor(RhoFactor::new(c(0.8, 0.0), 0.6, 1).unwrap());
        let v = verify_equivalence(&f, &g, 0.6, 1e-8).unwrap();
        assert!(!v.equivalent);
        assert!(v.residual_rho_t < 1e-12, "{v:?}");
        assert!(v.residual_t > 0.01, "{v:?}");
        assert!(v.gauge.is_none());
    }

    #[test]
    fn atom_survives_gauge() {
        let b = FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(c(-0.3, 0.3))], 0.0).unwrap();
        let atoms = AtomicSingularInner::new(vec![Atom { theta: 1.0, mass: 0.4 }]).unwrap();
        let f = FunctionSpec::factored(b, TrigPolyLogModulus::constant(0.2), atoms, AtomicSingularInner::empty());
        let g = f.clone().with_gauge(1.3);
        let v = verify_equivalence(&f, &g, 0.6, 1e-9).unwrap();
        assert!(v.equivalent, "{v:?}");
        // removing the atom keeps |f| on T but not on ρT
        let h = FunctionSpec::blaschke_outer(
            FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(c(-0.3, 0.3))], 0.0).unwrap(),
            TrigPolyLogModulus::constant(0.2),
        );
        let v = verify_equivalence(&f, &h, 0.6, 1e-9).unwrap();
        assert!(!v.equivalent && v.residual_t < 1e-14 && v.residual_rho_t > 1e-3, "{v:?}");
    }

    #[test]
    fn zero_on_circle_needs_deflation() {
        let b = FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(c(0.0, 0.6))], 0.0).unwrap();
        let f = FunctionSpec::blaschke_outer(b, TrigPolyLogModulus::default());
        assert!(matches!(verify_equivalence(&f, &f, 0.6, 1e-8), Err(Error::DeflationNeeded { .. })));
    }
}
