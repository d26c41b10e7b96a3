use crate::sampling::ModulusTrace;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Default relative residual threshold for [`fit_real_parts`].
pub const DEFAULT_FIT_RESIDUAL_TOL: f64 = 1e-6;

/// Fraction of the nodes, nearest to the midpoint, used for order detection.
const ORDER_WINDOW: f64 = 0.1;
const MIN_ORDER_NODES: usize = 8;
const ORDER_SLACK: f64 = 0.2;

/// Column-scaled least squares through an SVD.
fn least_squares(mut a: DMatrix<f64>, b: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let scales: Vec<f64> = a.column_iter().map(|c| c.norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        if *s > 0.0 {
            a.column_mut(j).unscale_mut(*s);
        }
    }
    let svd = a.clone().svd(true, true);
    let mut x = svd
        .solve(b, f64::EPSILON * a.nrows() as f64)
        .map_err(|e| Error::Data(format!("least squares failed: {e}")))?;
    let residual = (&a * &x - b).norm();
    for (j, s) in scales.iter().enumerate() {
        if *s > 0.0 {
            x[j] /= s;
        }
    }
    Ok((x, residual))
}

/// Vanishing order of `f` at the segment midpoint.
///
/// Regresses `log|f(t)|` on `log|t|` over the nodes closest to `t = 0`, with
/// an intercept and a linear term absorbing the smooth factor. The slope must
/// be within 0.2 of a nonnegative integer.
pub fn detect_origin_order(trace: &ModulusTrace) -> Result<u32> {
    let mut pts: Vec<(f64, f64)> = trace
        .parameters()
        .iter()
        .zip(trace.values())
        .filter(|(t, v)| **t != 0.0 && **v > 0.0)
        .map(|(t, v)| (*t, *v))
        .collect();
    if pts.len() < 4 {
        return Err(Error::Data("too few nonzero samples to detect the vanishing order".into()));
    }
    pts.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    let window = ((pts.len() as f64 * ORDER_WINDOW).ceil() as usize).max(MIN_ORDER_NODES).min(pts.len());
    let pts = &pts[..window];
    let a = DMatrix::from_fn(window, 3, |i, j| match j {
        0 => pts[i].0.abs().ln(),
        1 => 1.0,
        _ => pts[i].0,
    });
    let y = DVector::from_iterator(window, pts.iter().map(|p| p.1.ln()));
    let (x, _) = least_squares(a, &y)?;
    let slope = x[0];
    let k = slope.round();
    if !slope.is_finite() || (slope - k).abs() > ORDER_SLACK || k < 0.0 {
        return Err(Error::AmbiguousOrder { slope });
    }
    Ok(k as u32)
}

/// Least-squares fit of `log|f(t)| − k log|t|` by `Σ_{n ≤ N} a_n t^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPartFit {
    /// `a_0..=a_N`.
    pub coeffs: Vec<f64>,
    /// Root-mean-square misfit.
    pub residual: f64,
}

pub fn fit_real_parts(trace: &ModulusTrace, k: u32, order: usize) -> Result<RealPartFit> {
    fit_real_parts_with(trace, k, order, DEFAULT_FIT_RESIDUAL_TOL)
}

/// As [`fit_real_parts`], rejecting fits whose RMS residual exceeds
/// `residual_tol · rms(u) + 1e-12`. Samples that are exactly zero are skipped.
pub fn fit_real_parts_with(trace: &ModulusTrace, k: u32, order: usize, residual_tol: f64) -> Result<RealPartFit> {
    let pts: Vec<(f64, f64)> = trace
        .parameters()
        .iter()
        .zip(trace.values())
        .filter(|(t, v)| **v > 0.0 && (k == 0 || **t != 0.0))
        .map(|(t, v)| (*t, v.ln() - k as f64 * t.abs().ln()))
        .collect();
    if pts.len() < order + 1 {
        return Err(Error::Data(format!(
            "truncation order {order} needs at least {} usable nodes, trace has {}",
            order + 1,
            pts.len()
        )));
    }
    let m = pts.len();
    let a = DMatrix::from_fn(m, order + 1, |i, j| pts[i].0.powi(j as i32));
    let u = DVector::from_iterator(m, pts.iter().map(|p| p.1));
    let (x, resid) = least_squares(a, &u)?;
    let rms = resid / (m as f64).sqrt();
    let threshold = residual_tol * u.norm() / (m as f64).sqrt() + 1e-12;
    if !(rms <= threshold) {
        return Err(Error::FitResidual { residual: rms, threshold });
    }
    Ok(RealPartFit { coeffs: x.iter().copied().collect(), residual: rms })
}
