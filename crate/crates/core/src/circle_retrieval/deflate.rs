use crate::disc::WeightedPoint;
use crate::sampling::ModulusTrace;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Samples below this fraction of the median count as dips.
pub const DEFLATION_THRESHOLD: f64 = 1e-6;

const ORDER_SLACK: f64 = 0.2;
const SLOPE_OFFSETS: usize = 4;
/// Cubic interpolation weights at the centre from offsets −2, −1, 1, 2.
const FILL_WEIGHTS: [f64; 4] = [-1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0];

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

/// Indices of local minima of each run of consecutive (cyclic) dips.
fn dip_centres(values: &[f64], threshold: f64) -> Vec<usize> {
    let n = values.len();
    let low: Vec<bool> = values.iter().map(|v| *v < threshold).collect();
    if low.iter().all(|l| *l) {
        return Vec::new();
    }
    // start scanning right after a non-dip sample so no run wraps
    let start = (0..n).find(|&j| !low[j]).unwrap_or(0);
    let mut out = Vec::new();
    let mut run: Option<usize> = None;
    for step in 1..=n {
        let j = (start + step) % n;
        if low[j] {
            run = Some(match run {
                Some(best) if values[best] <= values[j] => best,
                _ => j,
            });
        } else if let Some(best) = run.take() {
            out.push(best);
        }
    }
    out.sort_unstable();
    out
}

fn fit_order(values: &[f64], angles: &[f64], rho: f64, centre: usize) -> Result<u32> {
    let n = values.len();
    let z0 = Complex64::from_polar(rho, angles[centre]);
    let mut rows = Vec::new();
    for d in 1..=SLOPE_OFFSETS {
        for j in [(centre + d) % n, (centre + n - d) % n] {
            if values[j] > 0.0 {
                let dist = (Complex64::from_polar(rho, angles[j]) - z0).norm();
                rows.push((dist.ln(), values[j].ln()));
            }
        }
    }
    if rows.len() < 3 {
        return Err(Error::ResolutionTooLow { point: z0, estimate: f64::NAN });
    }
    let a = DMatrix::from_fn(rows.len(), 2, |i, j| if j == 0 { rows[i].0 } else { 1.0 });
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let x = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Data(format!("order fit failed: {e}")))?;
    let slope = x[0];
    let k = slope.round();
    if !slope.is_finite() || (slope - k).abs() > ORDER_SLACK || k < 1.0 {
        return Err(Error::ResolutionTooLow { point: z0, estimate: slope });
    }
    Ok(k as u32)
}

/// Divides `|z − z₀|^order` out of a circle trace for every zero `z₀` on the
/// circle and returns the deflated trace with the zeros removed.
///
/// Zeros come from `spec_hint` when given, otherwise from samples below
/// [`DEFLATION_THRESHOLD`] times the median, with the order read from the
/// log-log slope of the neighbouring samples. Dip samples themselves are
/// refilled by cubic interpolation of the deflated log-values around them.
pub fn deflate_circle_zeros(
    trace: &ModulusTrace,
    spec_hint: Option<&[WeightedPoint]>,
) -> Result<(ModulusTrace, Vec<WeightedPoint>)> {
    let rho = trace
        .rho()
        .ok_or_else(|| Error::Data("zero deflation needs a circle trace".into()))?;
    let n = trace.len();
    if n < 2 * SLOPE_OFFSETS + 1 {
        return Err(Error::Data(format!("deflation needs at least {} samples", 2 * SLOPE_OFFSETS + 1)));
    }
    let values = trace.values();
    let angles = trace.parameters();
    let threshold = DEFLATION_THRESHOLD * median(values);
    let centres = dip_centres(values, threshold);

    let zeros: Vec<WeightedPoint> = match spec_hint {
        Some(hint) => hint
            .iter()
            .filter(|w| (w.point.norm() - rho).abs() <= 1e-8 * rho.max(1.0))
            .copied()
            .collect(),
        None => centres
            .iter()
            .map(|&j| Ok(WeightedPoint::new(Complex64::from_polar(rho, angles[j]), fit_order(values, angles, rho, j)?)))
            .collect::<Result<_>>()?,
    };
    if zeros.is_empty() {
        return Ok((trace.clone(), zeros));
    }

    let mut logs: Vec<f64> = angles
        .iter()
        .zip(values)
        .map(|(&t, &v)| {
            let z = Complex64::from_polar(rho, t);
            v.ln() - zeros.iter().map(|w| w.mult as f64 * (z - w.point).norm().ln()).sum::<f64>()
        })
        .collect();
    let bad: Vec<bool> = values.iter().zip(&logs).map(|(v, l)| *v < threshold || !l.is_finite()).collect();
    for j in (0..n).filter(|&j| bad[j]) {
        let nb = [(j + n - 2) % n, (j + n - 1) % n, (j + 1) % n, (j + 2) % n];
        if nb.iter().any(|&i| bad[i]) {
            return Err(Error::ResolutionTooLow { point: Complex64::from_polar(rho, angles[j]), estimate: f64::NAN });
        }
        logs[j] = nb.iter().zip(FILL_WEIGHTS).map(|(&i, w)| w * logs[i]).sum();
    }
    let deflated = trace.with_values(logs.into_iter().map(f64::exp).collect())?;
    Ok((deflated, zeros))
}
