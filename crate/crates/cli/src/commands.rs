use crate::output::{emit, read_text, render, write_atomic};
use crate::{CircleArgs, Domain, Failure, Family, GenerateArgs, LemmaArgs, SampleArgs, SegmentArgs, VerifyArgs};
use holophase::circle_retrieval::{reconstruct_from_circles_with, verify_equivalence, CirclePairData, ReconstructOptions};
use holophase::disc::FunctionSpec;
use holophase::generators::{random_factored_spec, random_power_series_spec, random_rational_spec, GeneratorConfig};
use holophase::mero::{conclude_gauge, modulus_match_on_circles, reflection_orbit, RationalFunctionSpec};
use holophase::sampling::{add_noise, sample_circle_with, sample_segment, ModulusTrace, SegmentPair, SegmentSpec, TraceDomain};
use holophase::segment_retrieval::{reconstruct_from_segments_with, SegmentOptions, SegmentReport};
use holophase::Complex64;
use serde::Serialize;
use std::path::Path;

pub fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::usage(format!("expected a complex number as `re,im`, got `{s}`"));
    match parts.as_slice() {
        [re, im] => Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?)),
        [re] => Ok(Complex64::new(re.parse().map_err(|_| bad())?, 0.0)),
        _ => Err(bad()),
    }
}

fn load_spec(path: &Path) -> Result<FunctionSpec, Failure> {
    Ok(FunctionSpec::from_json(&read_text(path)?)?)
}

fn load_trace(path: &Path) -> Result<ModulusTrace, Failure> {
    Ok(ModulusTrace::from_csv(&read_text(path)?)?)
}

pub fn generate(a: &GenerateArgs) -> Result<(), Failure> {
    let mut cfg = GeneratorConfig { seed: a.seed, test_radii: vec![a.rho], ..GeneratorConfig::default() };
    if let Some(z) = a.max_zeros {
        cfg.max_zero_count = z;
    }
    let spec = match a.family {
        Family::PowerSeries => {
            if let Some(d) = a.degree {
                cfg.max_series_degree = d;
            }
            random_power_series_spec(&cfg, a.order)?
        }
        Family::Factored => {
            if let Some(d) = a.degree {
                cfg.max_outer_degree = d;
            }
            random_factored_spec(&cfg, a.atoms, a.denominator)?
        }
        Family::Rational => random_rational_spec(&cfg)?,
    };
    emit(a.out.as_deref(), &(spec.to_json() + "\n"))
}

pub fn sample(a: &SampleArgs) -> Result<(), Failure> {
    let spec = load_spec(&a.spec)?;
    let noisy = |t: ModulusTrace, label: u64| -> Result<ModulusTrace, Failure> {
        if a.noise == 0.0 {
            Ok(t)
        } else {
            Ok(add_noise(&t, a.noise, holophase::rng::SeedStream::new(a.seed).fork(label).next_u64())?)
        }
    };
    match a.domain {
        Domain::Segment => {
            let alpha = a.alpha.ok_or_else(|| Failure::usage("--alpha is required for segment sampling"))?;
            let rotated_path =
                a.out_rotated.as_deref().ok_or_else(|| Failure::usage("--out-rotated is required for segment sampling"))?;
            if a.rho.is_some() {
                return Err(Failure::usage("--rho applies to circle sampling only"));
            }
            let base = SegmentSpec::new(parse_complex(&a.midpoint)?, a.half_length, 0.0)?;
            let pair = SegmentPair::new(base, alpha)?;
            let (ti, ta) = sample_segment(&spec, &pair, a.samples)?;
            let (ti, ta) = (noisy(ti, 0)?, noisy(ta, 1)?);
            write_atomic(&a.out, &ti.to_csv())?;
            write_atomic(rotated_path, &ta.to_csv())
        }
        Domain::Circle => {
            let rho = a.rho.ok_or_else(|| Failure::usage("--rho is required for circle sampling"))?;
            if a.alpha.is_some() || a.out_rotated.is_some() {
                return Err(Failure::usage("--alpha and --out-rotated apply to segment sampling only"));
            }
            let t = sample_circle_with(&spec, rho, a.samples, a.allow_zeros, Default::default())?;
            write_atomic(&a.out, &noisy(t, 0)?.to_csv())
        }
    }
}

pub fn reconstruct_segments(a: &SegmentArgs) -> Result<(), Failure> {
    let base = load_trace(&a.base)?;
    let rotated = load_trace(&a.rotated)?;
    let header_alpha = match base.domain() {
        TraceDomain::Segment { pair, .. } => pair.rotation_angle,
        TraceDomain::Circle { .. } => return Err(holophase::Error::Data("expected segment traces".into()).into()),
    };
    if let Some(alpha) = a.alpha {
        if (alpha - header_alpha).abs() > 1e-12 * alpha.abs().max(1.0) {
            return Err(holophase::Error::Inconsistent(format!("--alpha {alpha} differs from the trace header {header_alpha}")).into());
        }
    }
    let opts = SegmentOptions { residual_tol: a.tol, ..SegmentOptions::default() };
    let (spec, solve) = reconstruct_from_segments_with(&base, &rotated, header_alpha, a.degree, &opts)?;
    let report = SegmentReport::new(&spec, &solve);
    write_outputs(&spec, &report, a.out.as_deref(), a.report.as_deref(), a.format)
}

fn write_outputs<R: Serialize>(
    spec: &FunctionSpec,
    report: &R,
    out: Option<&Path>,
    report_path: Option<&Path>,
    format: crate::Format,
) -> Result<(), Failure> {
    let report = render(report, format)?;
    let spec = spec.to_json() + "\n";
    // both outputs are rendered before either file is touched
    match (out, report_path) {
        (Some(o), Some(r)) => {
            write_atomic(o, &spec)?;
            write_atomic(r, &report)
        }
        (Some(o), None) => {
            write_atomic(o, &spec)?;
            emit(None, &report)
        }
        (None, r) => {
            if let Some(r) = r {
                write_atomic(r, &report)?;
            }
            emit(None, &spec)
        }
    }
}

pub fn reconstruct_circles(a: &CircleArgs) -> Result<(), Failure> {
    let data = CirclePairData::new(load_trace(&a.outer)?, load_trace(&a.inner)?)?;
    if let Some(rho) = a.rho {
        if (rho - data.rho()).abs() > 1e-12 {
            return Err(holophase::Error::Inconsistent(format!("--rho {rho} differs from the trace header {}", data.rho())).into());
        }
    }
    let opts = ReconstructOptions { max_zeros: a.max_zeros, tol: a.tol, seed: a.seed, ..ReconstructOptions::default() };
    let (spec, report) = reconstruct_from_circles_with(&data, &opts)?;
    write_outputs(&spec, &report, a.out.as_deref(), a.report.as_deref(), a.format)
}

pub fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let verdict = verify_equivalence(&load_spec(&a.f)?, &load_spec(&a.g)?, a.rho, a.tol)?;
    emit(a.out.as_deref(), &render(&verdict, a.format)?)
}

#[derive(Serialize)]
struct GaugeOutcome {
    c: Option<Complex64>,
    m: Option<i32>,
    ratio_deviation: Option<f64>,
    /// Set when the gauge could not be concluded.
    error: Option<String>,
    error_kind: Option<&'static str>,
}

#[derive(Serialize)]
struct LemmaReport {
    matched: bool,
    deviation_unit: f64,
    deviation_inner: f64,
    rho: f64,
    divisor_f: Vec<(Complex64, i64)>,
    divisor_g: Vec<(Complex64, i64)>,
    gauge: GaugeOutcome,
    orbit: Option<Vec<i64>>,
}

pub fn lemma(a: &LemmaArgs) -> Result<(), Failure> {
    let f = RationalFunctionSpec::try_from(&load_spec(&a.f)?)?;
    let g = RationalFunctionSpec::try_from(&load_spec(&a.g)?)?;
    let m = modulus_match_on_circles(&f, &g, a.rho, a.samples, a.tol)?;
    let gauge = match conclude_gauge(&f, &g, a.rho) {
        Ok(c) => GaugeOutcome { c: Some(c.c), m: Some(c.m), ratio_deviation: Some(c.ratio_deviation), error: None, error_kind: None },
        Err(e @ (holophase::Error::DivisorMismatch(_) | holophase::Error::GaugeDichotomy { .. })) => GaugeOutcome {
            c: match &e {
                holophase::Error::GaugeDichotomy { c, .. } => Some(*c),
                _ => None,
            },
            m: match &e {
                holophase::Error::GaugeDichotomy { m, .. } => Some(*m),
                _ => None,
            },
            ratio_deviation: None,
            error_kind: Some(e.kind()),
            error: Some(e.to_string()),
        },
        Err(e) => return Err(e.into()),
    };
    let orbit = match &a.orbit_start {
        Some(s) => Some(reflection_orbit(&f, &g, parse_complex(s)?, a.rho, a.orbit_len)?),
        None => None,
    };
    let report = LemmaReport {
        matched: m.matched,
        deviation_unit: m.deviation_unit,
        deviation_inner: m.deviation_inner,
        rho: m.rho,
        divisor_f: f.divisor().entries().to_vec(),
        divisor_g: g.divisor().entries().to_vec(),
        gauge,
        orbit,
    };
    emit(a.out.as_deref(), &render(&report, a.format)?)
}
