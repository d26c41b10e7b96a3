use crate::disc::{outer_from_log_modulus, FiniteBlaschkeProduct, FunctionSpec, TrigPolyLogModulus, WeightedPoint};
use crate::fourier::{real_fourier_coefficients, uniform_angles};
use crate::par::Execution;
use crate::rng::SeedStream;
use crate::sampling::ModulusTrace;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

pub const DEFAULT_RECONSTRUCTION_TOL: f64 = 1e-8;

/// Relative size below which trailing outer harmonics are dropped.
const OUTER_TRUNCATION: f64 = 1e-12;
/// Zeros are kept inside `|a| ≤ MAX_RADIUS` during the search.
const MAX_RADIUS: f64 = 1.0 - 1e-9;
const MIN_RADIUS: f64 = 1e-3;
const GRID_RADII: [f64; 4] = [0.25, 0.5, 0.7, 0.85];

/// `|f|` on the unit circle and on `|z| = ρ`, both on uniform angle grids.
#[derive(Debug, Clone, PartialEq)]
pub struct CirclePairData {
    outer_trace: ModulusTrace,
    inner_trace: ModulusTrace,
    rho: f64,
}

fn check_uniform(trace: &ModulusTrace, what: &str) -> Result<()> {
    let expected = uniform_angles(trace.len());
    if trace.parameters().iter().zip(&expected).any(|(a, b)| (a - b).abs() > 1e-12) {
        return Err(Error::Data(format!("{what} trace must be sampled at the angles 2πj/N")));
    }
    if let Some(j) = trace.values().iter().position(|v| *v <= 0.0) {
        return Err(Error::Data(format!("{what} trace vanishes at sample {j}; deflate the zeros on the circle first")));
    }
    if trace.len() < 8 {
        return Err(Error::Data(format!("{what} trace needs at least 8 samples")));
    }
    Ok(())
}

impl CirclePairData {
    pub fn new(outer_trace: ModulusTrace, inner_trace: ModulusTrace) -> Result<Self> {
        if outer_trace.rho() != Some(1.0) {
            return Err(Error::Data("outer trace must be sampled on the unit circle".into()));
        }
        let rho = inner_trace
            .rho()
            .filter(|r| *r > 0.0 && *r < 1.0)
            .ok_or_else(|| Error::Data("inner trace must be sampled on a circle of radius in (0, 1)".into()))?;
        check_uniform(&outer_trace, "outer")?;
        check_uniform(&inner_trace, "inner")?;
        Ok(Self { outer_trace, inner_trace, rho })
    }

    pub fn outer_trace(&self) -> &ModulusTrace {
        &self.outer_trace
    }

    pub fn inner_trace(&self) -> &ModulusTrace {
        &self.inner_trace
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructOptions {
    pub max_zeros: usize,
    /// Acceptance threshold on the RMS log-modulus misfit on `ρT`.
    pub tol: f64,
    /// Local searches per model order (surrogate start included).
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub exec: Execution,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            max_zeros: 5,
            tol: DEFAULT_RECONSTRUCTION_TOL,
            starts: 12,
            seed: 0,
            max_iterations: 200,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroEstimate {
    pub re: f64,
    pub im: f64,
    /// Smallest eigenvalue of the local Gauss-Newton curvature for this zero.
    pub conf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleReport {
    /// Number of zeros off the origin.
    pub m: usize,
    /// Order of the zero at the origin.
    pub k: u32,
    pub residual: f64,
    pub zeros: Vec<ZeroEstimate>,
    pub gauge_fixed: bool,
}

/// `w(θ) = log|z^k B(z)|` on `ρT` and its Fourier data.
struct InnerProblem {
    rho: f64,
    angles: Vec<f64>,
    w: Vec<f64>,
    w0: f64,
    /// `W_n`, `n = 1..=M`, with `w = W_0 + Re Σ W_n e^{inθ}`.
    coeffs: Vec<Complex64>,
}

struct Fit {
    zeros: Vec<Complex64>,
    k: u32,
    residual: f64,
}

impl InnerProblem {
    fn origin_order(&self, zeros: &[Complex64]) -> u32 {
        let rest: f64 = zeros.iter().map(|a| a.norm().max(self.rho).ln()).sum();
        ((self.w0 - rest) / self.rho.ln()).round().max(0.0) as u32
    }

    /// Residual vector (model − data) and, optionally, its Jacobian with
    /// respect to `(Re a_i, Im a_i)`.
    fn evaluate(&self, zeros: &[Complex64], jacobian: bool) -> (DVector<f64>, Option<DMatrix<f64>>) {
        let big_m = self.coeffs.len();
        let rows = 2 * big_m + 1;
        let mut model = vec![Complex64::new(0.0, 0.0); big_m];
        let mut jac = jacobian.then(|| DMatrix::zeros(rows, 2 * zeros.len()));
        let rho = self.rho;
        let k = self.origin_order(zeros);
        let mut w0 = k as f64 * rho.ln();
        for (i, &a) in zeros.iter().enumerate() {
            let ab = a.conj();
            let inside = a.norm() < rho;
            if inside {
                w0 += rho.ln();
            } else {
                w0 += a.norm().ln();
                if let Some(j) = jac.as_mut() {
                    j[(0, 2 * i)] = a.re / a.norm_sqr();
                    j[(0, 2 * i + 1)] = a.im / a.norm_sqr();
                }
            }
            // running powers: p = (āρ)^{n-1}, q = (ā/ρ)^{n-1} or (ρ/a)^{n-1}
            let mut p = Complex64::new(1.0, 0.0);
            let mut q = Complex64::new(1.0, 0.0);
            let (pr, qr) = if inside { (ab * rho, ab / rho) } else { (ab * rho, rho / a) };
            for n in 1..=big_m {
                let nf = n as f64;
                let (pn, qn) = (p * pr, q * qr);
                let (term, dx, dy) = if inside {
                    // ((āρ)^n − (ā/ρ)^n)/n
                    let d = p * rho - q / rho;
                    ((pn - qn) / nf, d, Complex64::new(0.0, -1.0) * d)
                } else {
                    // ((āρ)^n − (ρ/a)^n)/n
                    let u = qn / a;
                    let v = p * rho;
                    ((pn - qn) / nf, u + v, Complex64::new(0.0, 1.0) * (u - v))
                };
                model[n - 1] += term;
                if let Some(j) = jac.as_mut() {
                    j[(2 * n - 1, 2 * i)] = dx.re;
                    j[(2 * n, 2 * i)] = dx.im;
                    j[(2 * n - 1, 2 * i + 1)] = dy.re;
                    j[(2 * n, 2 * i + 1)] = dy.im;
                }
                p = pn;
                q = qn;
            }
        }
        let mut r = DVector::zeros(rows);
        r[0] = w0 - self.w0;
        for n in 0..big_m {
            let d = model[n] - self.coeffs[n];
            r[2 * n + 1] = d.re;
            r[2 * n + 2] = d.im;
        }
        (r, jac)
    }

    /// RMS of `w − log|z^k B|` over the samples.
    fn sample_residual(&self, zeros: &[Complex64], k: u32) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        let sum: f64 = self
            .angles
            .iter()
            .zip(&self.w)
            .map(|(&t, &w)| {
                let z = Complex64::from_polar(self.rho, t);
                let model: f64 = k as f64 * self.rho.ln()
                    + zeros.iter().map(|&a| ((a - z).norm() / (one - a.conj() * z).norm()).ln()).sum::<f64>();
                (w - model).powi(2)
            })
            .sum();
        (sum / self.w.len() as f64).sqrt()
    }

    fn project(zeros: &mut [Complex64]) {
        for a in zeros.iter_mut() {
            let r = a.norm();
            if r > MAX_RADIUS {
                *a *= MAX_RADIUS / r;
            } else if r < MIN_RADIUS * 1e-3 {
                *a = Complex64::new(MIN_RADIUS * 1e-3, 0.0);
            }
        }
    }

    fn levenberg_marquardt(&self, start: Vec<Complex64>, max_iterations: usize) -> Vec<Complex64> {
        let mut x = start;
        Self::project(&mut x);
        if x.is_empty() {
            return x;
        }
        let (mut r, mut j) = self.evaluate(&x, true);
        let mut cost = r.norm_squared();
        let mut lambda = 1e-3;
        for _ in 0..max_iterations {
            let jac = j.as_ref().expect("jacobian requested");
            let jt = jac.transpose();
            let a = &jt * jac;
            let g = &jt * &r;
            let mut accepted = false;
            while lambda < 1e16 {
                let mut damped = a.clone();
                for d in 0..damped.nrows() {
                    damped[(d, d)] += lambda * (a[(d, d)] + 1e-12);
                }
                let Some(chol) = damped.cholesky() else {
                    lambda *= 4.0;
                    continue;
                };
                let step = chol.solve(&(-&g));
                let mut trial: Vec<Complex64> =
                    x.iter().enumerate().map(|(i, a)| a + Complex64::new(step[2 * i], step[2 * i + 1])).collect();
                Self::project(&mut trial);
                let (tr, _) = self.evaluate(&trial, false);
                let tcost = tr.norm_squared();
                if tcost < cost {
                    let small = step.norm() <= 1e-15 * (1.0 + x.iter().map(|a| a.norm()).sum::<f64>());
                    let flat = cost - tcost <= 1e-15 * cost;
                    x = trial;
                    let (nr, nj) = self.evaluate(&x, true);
                    r = nr;
                    j = nj;
                    cost = tcost;
                    lambda = (lambda / 3.0).max(1e-15);
                    accepted = !(small || flat);
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted || cost == 0.0 {
                break;
            }
        }
        x
    }

    /// Zero estimates from a linearized rational fit of `|z^k B|²` on `ρT`.
    ///
    /// As a function of `ζ = e^{iθ}`, `|B(ρζ)|²` is rational of type
    /// `(2m, 2m)` with poles `1/(ā ρ)` (outside `T`) and `aρ` (inside), so
    /// each outside pole `p` yields `a = 1/(ρ p̄)`.
    fn surrogate_start(&self, m: usize) -> Option<Vec<Complex64>> {
        let n = self.w.len();
        let cols = 4 * m + 1;
        if m == 0 || n < cols {
            return None;
        }
        let shift = self.w0;
        let h: Vec<f64> = self.w.iter().map(|w| (2.0 * (w - shift)).exp()).collect();
        let zeta: Vec<Complex64> = self.angles.iter().map(|&t| Complex64::cis(t)).collect();
        let a = DMatrix::from_fn(n, cols, |i, c| {
            if c <= 2 * m {
                zeta[i].powu(c as u32)
            } else {
                -h[i] * zeta[i].powu((c - 2 * m - 1) as u32)
            }
        });
        let b = DVector::from_iterator(n, (0..n).map(|i| h[i] * zeta[i].powu(2 * m as u32)));
        let x = a.svd(true, true).solve(&b, 1e-14).ok()?;
        let deg = 2 * m;
        // companion matrix of the monic denominator ζ^{2m} + Σ d_i ζ^i
        let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..deg {
            comp[(i, deg - 1)] = -x[2 * m + 1 + i];
        }
        let roots = comp.eigenvalues()?;
        let mut outside: Vec<Complex64> = roots.iter().copied().filter(|p| p.is_finite()).collect();
        outside.sort_by(|p, q| q.norm().total_cmp(&p.norm()));
        let mut zeros: Vec<Complex64> = outside.into_iter().take(m).map(|p| 1.0 / (self.rho * p.conj())).collect();
        if zeros.len() < m || zeros.iter().any(|z| !z.is_finite()) {
            return None;
        }
        Self::project(&mut zeros);
        Some(zeros)
    }

    fn starts(&self, m: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
        let surrogate = self.surrogate_start(m);
        let mut rng = SeedStream::new(seed).fork(m as u64);
        let mut out = Vec::with_capacity(count.max(1));
        if let Some(s) = &surrogate {
            out.push(s.clone());
        }
        let mut s = 0usize;
        while out.len() < count.max(1) {
            s += 1;
            match (&surrogate, s % 2) {
                (Some(base), 1) => {
                    out.push(base.iter().map(|a| a + rng.in_disc(0.05)).collect());
                }
                _ => {
                    let offset = rng.uniform();
                    out.push(
                        (0..m)
                            .map(|i| {
                                let r = GRID_RADII[(i + s) % GRID_RADII.len()];
                                Complex64::from_polar(r, std::f64::consts::TAU * (i as f64 + offset) / m as f64)
                            })
                            .collect(),
                    );
                }
            }
        }
        out
    }

    fn fit_order(&self, m: usize, opts: &ReconstructOptions) -> Fit {
        let starts = self.starts(m, opts.starts, opts.seed);
        let fits = opts.exec.map_slice(&starts, |s| {
            let mut zeros = self.levenberg_marquardt(s.clone(), opts.max_iterations);
            zeros.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            let k = self.origin_order(&zeros);
            let residual = self.sample_residual(&zeros, k);
            Fit { zeros, k, residual: if residual.is_nan() { f64::INFINITY } else { residual } }
        });
        fits.into_iter()
            .min_by(|a, b| {
                a.residual.total_cmp(&b.residual).then_with(|| {
                    a.zeros
                        .iter()
                        .zip(&b.zeros)
                        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
            })
            .expect("at least one start")
    }

    fn confidence(&self, zeros: &[Complex64]) -> Vec<f64> {
        let (_, j) = self.evaluate(zeros, true);
        let j = j.expect("jacobian requested");
        (0..zeros.len())
            .map(|i| {
                let block = j.columns(2 * i, 2);
                let h = block.transpose() * block;
                let (a, b, d) = (h[(0, 0)], h[(0, 1)], h[(1, 1)]);
                0.5 * (a + d) - (0.25 * (a - d).powi(2) + b * b).sqrt()
            })
            .collect()
    }
}

/// Reconstructs `f = z^k B O` (gauge fixed to 1) from `|f|` on `T` and `ρT`.
pub fn reconstruct_from_circles(data: &CirclePairData, max_zeros: usize, tol: f64) -> Result<(FunctionSpec, CircleReport)> {
    reconstruct_from_circles_with(data, &ReconstructOptions { max_zeros, tol, ..ReconstructOptions::default() })
}

/// The outer factor comes straight from the unit-circle trace. The zeros are
/// then fitted to the Fourier coefficients of
/// `w = log|f| − log|O|` on `ρT`, trying `m = 0, 1, ..` zeros and keeping the
/// first model whose RMS misfit is below `tol`.
pub fn reconstruct_from_circles_with(data: &CirclePairData, opts: &ReconstructOptions) -> Result<(FunctionSpec, CircleReport)> {
    if !(opts.tol > 0.0) {
        return Err(Error::Data(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let log_outer: Vec<f64> = data.outer_trace.values().iter().map(|v| v.ln()).collect();
    let raw = outer_from_log_modulus(&log_outer, (log_outer.len() - 1) / 2)?;
    let scale = raw.cos_coeffs.iter().chain(&raw.sin_coeffs).fold(raw.mean.abs(), |m, c| m.max(c.abs())).max(1.0);
    let outer: TrigPolyLogModulus = raw.truncated(OUTER_TRUNCATION * scale);

    let rho = data.rho;
    let angles = data.inner_trace.parameters().to_vec();
    let w: Vec<f64> = angles
        .iter()
        .zip(data.inner_trace.values())
        .map(|(&t, v)| v.ln() - outer.log_outer(Complex64::from_polar(rho, t)).re)
        .collect();
    let big_m = (w.len() - 1) / 2;
    let (w0, coeffs) = real_fourier_coefficients(&w, big_m);
    let problem = InnerProblem { rho, angles, w, w0, coeffs };

    let mut best: Option<Fit> = None;
    for m in 0..=opts.max_zeros {
        let fit = problem.fit_order(m, opts);
        let accepted = fit.residual < opts.tol;
        if best.as_ref().is_none_or(|b| fit.residual < b.residual) || accepted {
            best = Some(fit);
        }
        if accepted {
            break;
        }
    }
    let fit = best.expect("at least one model order");
    if !(fit.residual < opts.tol) {
        return Err(Error::ModelMismatch { max_zeros: opts.max_zeros, residual: fit.residual, tol: opts.tol });
    }
    let conf = problem.confidence(&fit.zeros);
    let blaschke =
        FiniteBlaschkeProduct::new(fit.k, fit.zeros.iter().map(|&a| WeightedPoint::simple(a)).collect(), 0.0)?;
    let spec = FunctionSpec::blaschke_outer(blaschke, outer);
    let report = CircleReport {
        m: fit.zeros.len(),
        k: fit.k,
        residual: fit.residual,
        zeros: fit.zeros.iter().zip(conf).map(|(a, conf)| ZeroEstimate { re: a.re, im: a.im, conf }).collect(),
        gauge_fixed: true,
    };
    Ok((spec, report))
}
