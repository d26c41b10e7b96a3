//! Batch experiments producing plot-ready CSV.

use crate::output::{read_text, write_atomic};
use crate::{ExperimentArgs, Failure};
use holophase::circle_retrieval::{reconstruct_from_circles_with, CirclePairData, ReconstructOptions};
use holophase::disc::{FunctionSpec, SpecKind};
use holophase::generators::{gauge_aligned_sup_error, random_factored_spec, random_power_series_spec, GeneratorConfig};
use holophase::par::Execution;
use holophase::rng::SeedStream;
use holophase::sampling::{add_noise, sample_circle, sample_segment, SegmentPair};
use holophase::segment_retrieval::{detect_origin_order, fit_real_parts, solve_coefficient};
use holophase::Complex64;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Grid over α; rows `alpha,n,kappa,recon_error`.
    AlphaConditioning,
    /// Grid over noise levels on two-circle data.
    NoiseRobustness,
    /// Grid over the inner radius on clean two-circle data.
    RhoSweep,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub grid: Vec<f64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Samples per segment or circle.
    #[serde(default)]
    pub samples: Option<usize>,
    /// Truncation order (segments).
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub rho: Option<f64>,
    #[serde(default)]
    pub max_zeros: Option<usize>,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), Failure> {
        if self.trials == 0 {
            return Err(Failure::usage("experiment needs trials >= 1"));
        }
        if self.grid.is_empty() || self.grid.iter().any(|g| !g.is_finite()) {
            return Err(Failure::usage("experiment grid must be nonempty and finite"));
        }
        Ok(())
    }
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let idx = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

fn exponent_coefficient(f: &FunctionSpec, n: usize) -> Complex64 {
    match &f.kind {
        SpecKind::PowerSeries { exponent, .. } => exponent.coefficient(n),
        _ => unreachable!("power-series generator"),
    }
}

/// Per-coefficient errors of one segment round trip; `None` where the fit or
/// the 2×2 solve failed.
fn alpha_trial(alpha: f64, seed: u64, samples: usize, order: usize) -> Vec<Option<f64>> {
    let cfg = GeneratorConfig { seed, max_series_degree: order.min(8), ..GeneratorConfig::default() };
    let k = (seed % 3) as u32;
    let run = || -> holophase::Result<Vec<Option<f64>>> {
        let f = random_power_series_spec(&cfg, k)?;
        let (ti, ta) = sample_segment(&f, &SegmentPair::canonical(alpha)?, samples)?;
        let k = detect_origin_order(&ti)?;
        let (a, b) = (fit_real_parts(&ti, k, order)?, fit_real_parts(&ta, k, order)?);
        Ok((1..=order)
            .map(|n| {
                solve_coefficient(n, a.coeffs[n], b.coeffs[n], alpha)
                    .ok()
                    .map(|(c, _)| (c - exponent_coefficient(&f, n)).norm())
            })
            .collect())
    };
    run().unwrap_or_else(|_| vec![None; order])
}

fn alpha_conditioning(cfg: &ExperimentConfig) -> String {
    let samples = cfg.samples.unwrap_or(401);
    let order = cfg.degree.unwrap_or(16);
    let root = SeedStream::new(cfg.seed);
    let mut out = String::from("alpha,n,kappa,recon_error\n");
    for &alpha in &cfg.grid {
        let trials = Execution::Parallel.map(cfg.trials, |t| alpha_trial(alpha, root.fork(t as u64).next_u64(), samples, order));
        for n in 1..=order {
            let kappa = 1.0 / (n as f64 * alpha).sin().abs();
            let errs: Option<Vec<f64>> = trials.iter().map(|t| t[n - 1]).collect();
            let err = errs.map_or(f64::NAN, |e| e.into_iter().fold(0.0, f64::max));
            writeln!(out, "{alpha},{n},{kappa},{err}").expect("writing to a string");
        }
    }
    out
}

struct CircleTrial {
    error: f64,
    residual: f64,
}

fn circle_trial(seed: u64, rho: f64, samples: usize, noise: f64, max_zeros: usize) -> Option<CircleTrial> {
    let cfg = GeneratorConfig { seed, max_zero_count: max_zeros, test_radii: vec![rho], ..GeneratorConfig::default() };
    let run = || -> holophase::Result<CircleTrial> {
        let f = random_factored_spec(&cfg, false, false)?;
        let mut noise_seeds = SeedStream::new(seed).fork(7);
        let outer = add_noise(&sample_circle(&f, 1.0, samples)?, noise, noise_seeds.next_u64())?;
        let inner = add_noise(&sample_circle(&f, rho, samples)?, noise, noise_seeds.next_u64())?;
        let data = CirclePairData::new(outer, inner)?;
        // the misfit floor under noise is about the noise level itself
        let opts = ReconstructOptions {
            max_zeros,
            tol: 1e-8 + 3.0 * noise,
            seed,
            exec: Execution::Sequential,
            ..ReconstructOptions::default()
        };
        let (g, report) = reconstruct_from_circles_with(&data, &opts)?;
        Ok(CircleTrial { error: gauge_aligned_sup_error(&f, &g, 0.5 * rho, 256)?, residual: report.residual })
    };
    run().ok()
}

fn summarize(out: &mut String, key: f64, trials: Vec<Option<CircleTrial>>) {
    let failures = trials.iter().filter(|t| t.is_none()).count();
    let mut errors: Vec<f64> = trials.iter().map(|t| t.as_ref().map_or(f64::INFINITY, |t| t.error)).collect();
    let mut residuals: Vec<f64> = trials.iter().map(|t| t.as_ref().map_or(f64::INFINITY, |t| t.residual)).collect();
    errors.sort_by(f64::total_cmp);
    residuals.sort_by(f64::total_cmp);
    writeln!(
        out,
        "{key},{},{failures},{},{},{}",
        trials.len(),
        quantile(&errors, 0.5),
        quantile(&errors, 0.9),
        quantile(&residuals, 0.5)
    )
    .expect("writing to a string");
}

fn noise_robustness(cfg: &ExperimentConfig) -> String {
    let samples = cfg.samples.unwrap_or(512);
    let rho = cfg.rho.unwrap_or(0.6);
    let max_zeros = cfg.max_zeros.unwrap_or(3);
    let root = SeedStream::new(cfg.seed);
    let mut out = String::from("noise,trials,failures,median_error,p90_error,median_residual\n");
    for &noise in &cfg.grid {
        let trials = Execution::Parallel.map(cfg.trials, |t| circle_trial(root.fork(t as u64).next_u64(), rho, samples, noise, max_zeros));
        summarize(&mut out, noise, trials);
    }
    out
}

fn rho_sweep(cfg: &ExperimentConfig) -> String {
    let samples = cfg.samples.unwrap_or(512);
    let max_zeros = cfg.max_zeros.unwrap_or(3);
    let root = SeedStream::new(cfg.seed);
    let mut out = String::from("rho,trials,failures,median_error,p90_error,median_residual\n");
    for &rho in &cfg.grid {
        let trials = Execution::Parallel.map(cfg.trials, |t| circle_trial(root.fork(t as u64).next_u64(), rho, samples, 0.0, max_zeros));
        summarize(&mut out, rho, trials);
    }
    out
}

pub fn run(a: &ExperimentArgs) -> Result<(), Failure> {
    let mut cfg: ExperimentConfig = serde_json::from_str(&read_text(&a.config)?)
        .map_err(|e| Failure { code: 1, kind: "data", message: format!("experiment config: {e}") })?;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    if cfg.kind == ExperimentKind::RhoSweep && cfg.grid.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Failure::usage("rho_sweep grid values must lie in (0, 1)"));
    }
    let path = a
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| Failure::usage("no output path: pass --out or set `output` in the config"))?;
    let csv = match cfg.kind {
        ExperimentKind::AlphaConditioning => alpha_conditioning(&cfg),
        ExperimentKind::NoiseRobustness => noise_robustness(&cfg),
        ExperimentKind::RhoSweep => rho_sweep(&cfg),
    };
    write_atomic(&path, &csv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        assert_eq!(quantile(&v, 0.5), 5.0);
        assert_eq!(quantile(&v, 0.9), 9.0);
        assert_eq!(quantile(&[3.0], 0.9), 3.0);
    }

    #[test]
    fn config_rejects_unknown_fields_and_empty_grids() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"kind":"rho_sweep","trials":1,"grid":[0.5],"bogus":1}"#).is_err());
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"kind":"rho_sweep","trials":1,"grid":[]}"#).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn conditioning_rows() {
        let cfg = ExperimentConfig {
            kind: ExperimentKind::AlphaConditioning,
            trials: 2,
            seed: 1,
            grid: vec![std::f64::consts::FRAC_PI_3],
            output: None,
            samples: Some(201),
            degree: Some(6),
            rho: None,
            max_zeros: None,
        };
        let csv = alpha_conditioning(&cfg);
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows[0], "alpha,n,kappa,recon_error");
        assert_eq!(rows.len(), 7);
        // n = 3: sin(π) ≈ 1.2e-16 is below the guard, so no coefficient
        assert!(rows[3].ends_with(",NaN"), "{}", rows[3]);
        let err: f64 = rows[1].rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-9);
    }
}
