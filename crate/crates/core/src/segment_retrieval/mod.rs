//! Recovery of `f = z^k e^{φ}` from `|f|` on `I = (−1,1)` and
//! `I_α = e^{iα}(−1,1)`.
//!
//! On `I` the trace gives `Re φ(t) = Σ Re(c_n) t^n`; on `I_α` it gives
//! `Re φ(t e^{iα}) = Σ Re(c_n e^{inα}) t^n`. Each coefficient is then the
//! solution of the 2×2 real system `Re c = a_n`, `Re(c e^{inα}) = b_n`, which
//! is invertible exactly when `sin(nα) ≠ 0`. The constant term only has its
//! real part determined; the imaginary part is the unrecoverable gauge and is
//! fixed to zero.

mod counterexample;
mod fit;

pub use crate::disc::PowerSeries;
pub use counterexample::{rational_alpha_counterexample, Counterexample};
pub use fit::{detect_origin_order, fit_real_parts, fit_real_parts_with, RealPartFit, DEFAULT_FIT_RESIDUAL_TOL};

use crate::disc::FunctionSpec;
use crate::par::Execution;
use crate::sampling::{ModulusTrace, SegmentSide, TraceDomain};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Below this `|sin(nα)|` the coefficient system is treated as singular.
pub const CONDITIONING_GUARD: f64 = 1e-8;

/// Diagnostics of a two-segment reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSolveReport {
    /// `κ_n = 1/|sin(nα)|` for `n = 1..=N`.
    pub kappa: Vec<f64>,
    /// Largest violation of the two linear constraints, per `n = 1..=N`.
    pub constraint_residuals: Vec<f64>,
    pub fit_residual_base: f64,
    pub fit_residual_rotated: f64,
    /// `|a_0 − b_0|`: both segments see the same `Re φ(0)`.
    pub constant_term_mismatch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResiduals {
    #[serde(rename = "I")]
    pub base: f64,
    #[serde(rename = "Ialpha")]
    pub rotated: f64,
}

/// JSON report of a segment reconstruction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub k: u32,
    pub coeffs: Vec<[f64; 2]>,
    pub kappa: Vec<f64>,
    pub fit_residuals: FitResiduals,
    pub constraint_residuals: Vec<f64>,
    pub constant_term_mismatch: f64,
}

impl SegmentReport {
    pub fn new(spec: &FunctionSpec, report: &CoefficientSolveReport) -> Self {
        let (k, coeffs) = match &spec.kind {
            crate::disc::SpecKind::PowerSeries { origin_order, exponent } => {
                (*origin_order, exponent.coefficients.iter().map(|c| [c.re, c.im]).collect())
            }
            _ => (0, Vec::new()),
        };
        Self {
            k,
            coeffs,
            kappa: report.kappa.clone(),
            fit_residuals: FitResiduals { base: report.fit_residual_base, rotated: report.fit_residual_rotated },
            constraint_residuals: report.constraint_residuals.clone(),
            constant_term_mismatch: report.constant_term_mismatch,
        }
    }
}

/// Solves `Re c = a`, `Re(c e^{inα}) = b` and returns `c` with
/// `κ_n = 1/|sin(nα)|`.
pub fn solve_coefficient(n: usize, a: f64, b: f64, alpha: f64) -> Result<(Complex64, f64)> {
    let (s, co) = (n as f64 * alpha).sin_cos();
    if s.abs() < CONDITIONING_GUARD {
        return Err(Error::IllConditioned { indices: vec![n], threshold: CONDITIONING_GUARD });
    }
    Ok((Complex64::new(a, (a * co - b) / s), 1.0 / s.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentOptions {
    /// Relative least-squares residual above which a fit is rejected.
    pub residual_tol: f64,
    pub exec: Execution,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        Self { residual_tol: DEFAULT_FIT_RESIDUAL_TOL, exec: Execution::default() }
    }
}

pub fn reconstruct_from_segments(
    trace_base: &ModulusTrace,
    trace_rotated: &ModulusTrace,
    alpha: f64,
    order: usize,
) -> Result<(FunctionSpec, CoefficientSolveReport)> {
    reconstruct_from_segments_with(trace_base, trace_rotated, alpha, order, &SegmentOptions::default())
}

/// Reconstructs `z^k exp(Σ c_n z^n)` (gauge `Im c_0 = 0`) in the canonical
/// coordinates of the traces.
pub fn reconstruct_from_segments_with(
    trace_base: &ModulusTrace,
    trace_rotated: &ModulusTrace,
    alpha: f64,
    order: usize,
    opts: &SegmentOptions,
) -> Result<(FunctionSpec, CoefficientSolveReport)> {
    for (trace, expected) in [(trace_base, SegmentSide::Base), (trace_rotated, SegmentSide::Rotated)] {
        match trace.domain() {
            TraceDomain::Segment { pair, side } => {
                if *side != expected {
                    return Err(Error::Inconsistent(format!("expected the {expected:?} segment trace, got {side:?}")));
                }
                if (pair.rotation_angle - alpha).abs() > 1e-12 * alpha.abs().max(1.0) {
                    return Err(Error::Inconsistent(format!(
                        "trace was sampled with alpha = {}, reconstruction asked for {alpha}",
                        pair.rotation_angle
                    )));
                }
            }
            TraceDomain::Circle { .. } => return Err(Error::Data("segment reconstruction needs segment traces".into())),
        }
    }
    let k = detect_origin_order(trace_base)?;
    let l = detect_origin_order(trace_rotated)?;
    if k != l {
        return Err(Error::Inconsistent(format!("vanishing order at the midpoint differs: {k} on I, {l} on I_alpha")));
    }
    let ill: Vec<usize> = (1..=order)
        .filter(|&n| (n as f64 * alpha).sin().abs() < CONDITIONING_GUARD)
        .collect();
    if !ill.is_empty() {
        return Err(Error::IllConditioned { indices: ill, threshold: CONDITIONING_GUARD });
    }
    let a = fit_real_parts_with(trace_base, k, order, opts.residual_tol)?;
    let b = fit_real_parts_with(trace_rotated, k, order, opts.residual_tol)?;

    let solved = opts.exec.map(order, |i| {
        let n = i + 1;
        let (c, kappa) = solve_coefficient(n, a.coeffs[n], b.coeffs[n], alpha)?;
        let rot = Complex64::cis(n as f64 * alpha);
        let resid = (c.re - a.coeffs[n]).abs().max(((c * rot).re - b.coeffs[n]).abs());
        Ok((c, kappa, resid))
    });
    let solved = solved.into_iter().collect::<Result<Vec<_>>>()?;

    let mut coefficients = vec![Complex64::new(a.coeffs[0], 0.0)];
    coefficients.extend(solved.iter().map(|s| s.0));
    let spec = FunctionSpec::power_series(k, PowerSeries::new(coefficients))?;
    let report = CoefficientSolveReport {
        kappa: solved.iter().map(|s| s.1).collect(),
        constraint_residuals: solved.iter().map(|s| s.2).collect(),
        fit_residual_base: a.residual,
        fit_residual_rotated: b.residual,
        constant_term_mismatch: (a.coeffs[0] - b.coeffs[0]).abs(),
    };
    Ok((spec, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_segment, SegmentPair};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_coefficient_solve() {
        for alpha in [0.3, 1.0, 2f64.sqrt(), 2.9] {
            let (cn, _) = solve_coefficient(1, 1.0, alpha.cos(), alpha).unwrap();
            assert!((cn - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn imaginary_unit_solve() {
        let alpha: f64 = 0.7;
        let (cn, _) = solve_coefficient(1, 0.0, -alpha.sin(), alpha).unwrap();
        assert!((cn - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_solve_at_sixty_degrees() {
        // n α = π/3 with n = 2
        let alpha = PI / 6.0;
        let (cn, kappa) = solve_coefficient(2, 1.0, 0.0, alpha).unwrap();
        assert!((cn - c(1.0, 1.0 / 3f64.sqrt())).norm() < 1e-15);
        assert!((kappa - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((cn.re - 1.0).abs() < 1e-15);
        assert!((cn * Complex64::cis(2.0 * alpha)).re.abs() < 1e-15);
    }

    #[test]
    fn singular_system_names_the_index() {
        match solve_coefficient(3, 1.0, 0.0, PI / 3.0) {
            Err(Error::IllConditioned { indices, .. }) => assert_eq!(indices, vec![3]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_reconstructs_with_no_exponent() {
        let f = FunctionSpec::power_series(1, PowerSeries::zero()).unwrap();
        let pair = SegmentPair::canonical(2f64.sqrt()).unwrap();
        let (i, ia) = sample_segment(&f, &pair, 101).unwrap();
        let (g, _) = reconstruct_from_segments(&i, &ia, 2f64.sqrt(), 6).unwrap();
        match g.kind {
            crate::disc::SpecKind::PowerSeries { origin_order, exponent } => {
                assert_eq!(origin_order, 1);
                assert!(exponent.coefficients.iter().all(|c| c.norm() < 1e-12));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn gauge_is_dropped() {
        let f = FunctionSpec::power_series(0, PowerSeries::new(vec![c(0.0, 0.4), c(1.0, 0.0)]))
            .unwrap()
            .with_gauge(1.1);
        let pair = SegmentPair::canonical(2f64.sqrt()).unwrap();
        let (i, ia) = sample_segment(&f, &pair, 101).unwrap();
        let (g, _) = reconstruct_from_segments(&i, &ia, 2f64.sqrt(), 4).unwrap();
        assert_eq!(g.gauge_phase, 0.0);
        let z = c(0.3, -0.2);
        assert!((g.eval(z).unwrap() - z.exp()).norm() < 1e-12);
    }

    #[test]
    fn rational_angle_lists_every_singular_index() {
        let f = FunctionSpec::power_series(0, PowerSeries::new(vec![c(0.0, 0.0), c(1.0, 0.0)])).unwrap();
        let alpha = PI / 3.0;
        let (i, ia) = sample_segment(&f, &SegmentPair::canonical(alpha).unwrap(), 101).unwrap();
        match reconstruct_from_segments(&i, &ia, alpha, 16) {
            Err(Error::IllConditioned { indices, .. }) => assert_eq!(indices, vec![3, 6, 9, 12, 15]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_orders_are_inconsistent() {
        let pair = SegmentPair::canonical(1.0).unwrap();
        let f = FunctionSpec::power_series(1, PowerSeries::zero()).unwrap();
        let g = FunctionSpec::power_series(2, PowerSeries::zero()).unwrap();
        let (i, _) = sample_segment(&f, &pair, 101).unwrap();
        let (_, ia) = sample_segment(&g, &pair, 101).unwrap();
        assert!(matches!(reconstruct_from_segments(&i, &ia, 1.0, 4), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn report_has_the_documented_json_shape() {
        let f = FunctionSpec::power_series(2, PowerSeries::new(vec![c(0.1, 0.0), c(0.5, 0.5)])).unwrap();
        let pair = SegmentPair::canonical(2f64.sqrt()).unwrap();
        let (i, ia) = sample_segment(&f, &pair, 101).unwrap();
        let (g, rep) = reconstruct_from_segments(&i, &ia, 2f64.sqrt(), 3).unwrap();
        let json = serde_json::to_value(SegmentReport::new(&g, &rep)).unwrap();
        assert_eq!(json["k"], 2);
        assert_eq!(json["coeffs"].as_array().unwrap().len(), 4);
        assert_eq!(json["kappa"].as_array().unwrap().len(), 3);
        assert!(json["fit_residuals"]["I"].is_number() && json["fit_residuals"]["Ialpha"].is_number());
    }
}
