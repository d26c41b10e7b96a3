use super::{ModulusTrace, TraceDomain};
use crate::disc::FunctionSpec;
use crate::fourier::uniform_angles;
use crate::par::Execution;
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;

/// Traces `|f(ρ e^{iθ})|` on `n` uniform angles; on `ρ = 1` the radial
/// boundary values are used. Zeros or poles on the circle are rejected.
pub fn sample_circle(spec: &FunctionSpec, rho: f64, n_points: usize) -> Result<ModulusTrace> {
    sample_circle_with(spec, rho, n_points, false, Execution::default())
}

/// Like [`sample_circle`] but tolerates zeros on the circle (values may be
/// 0), producing input for zero deflation. Poles are still rejected.
pub fn sample_circle_touching(spec: &FunctionSpec, rho: f64, n_points: usize) -> Result<ModulusTrace> {
    sample_circle_with(spec, rho, n_points, true, Execution::default())
}

pub fn sample_circle_with(
    spec: &FunctionSpec,
    rho: f64,
    n_points: usize,
    allow_zeros: bool,
    exec: Execution,
) -> Result<ModulusTrace> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::Data(format!("circle radius must lie in (0, 1], got {rho}")));
    }
    if n_points == 0 {
        return Err(Error::Data("need at least one sample".into()));
    }
    for (point, mult) in spec.divisor() {
        if (point.norm() - rho).abs() < PROXIMITY_TOL && (mult < 0 || !allow_zeros || rho == 1.0) {
            return Err(Error::DeflationNeeded { rho, point });
        }
    }
    let angles = uniform_angles(n_points);
    let values = if rho == 1.0 {
        spec.check_atoms_clear(&angles)?;
        exec.map_slice(&angles, |&t| spec.boundary_log_modulus(t).map(f64::exp))
    } else {
        exec.map_slice(&angles, |&t| spec.modulus(Complex64::from_polar(rho, t)))
    };
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    ModulusTrace::new(TraceDomain::Circle { rho }, angles, values)
}
