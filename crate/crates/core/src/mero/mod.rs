//! Divisor calculus for rational functions, and the rule that equal moduli
//! on two concentric circles force `G = c z^m F`.
//!
//! If two rational functions have equal modulus on `T` and on `ρT`, they share
//! every zero and pole away from the origin and differ by `c z^m`; the two
//! circle conditions then force `|c| = 1` and `|c| ρ^m = 1`, hence `m = 0`.
//! This module makes each step of that argument checkable on concrete inputs.

mod divisor;
mod rational;

pub use divisor::{divisor_arithmetic, Divisor, DivisorOp};
pub use rational::{multiplicity, RationalFunctionSpec};

use crate::disc::WeightedPoint;
use crate::fourier::uniform_angles;
use crate::rng::SeedStream;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Points closer than this are the same divisor point.
pub const MERGE_TOL: f64 = 1e-10;

/// Ratio constancy and modulus tolerance for [`conclude_gauge`].
pub const GAUGE_TOL: f64 = 1e-10;

const GAUGE_PROBES: usize = 8;
const PROBE_CLEARANCE: f64 = 1e-2;
const PROBE_SEED: u64 = 0x6d65_726f;

/// Outcome of [`modulus_match_on_circles`]. Deviations are
/// `max | |G|/|F| − 1 |` over the samples, reported for the circles of the
/// normalized problem (`ρ < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusMatch {
    pub matched: bool,
    /// On the unit circle.
    pub deviation_unit: f64,
    /// On the circle of radius `ρ` (or `1/ρ` after normalization).
    pub deviation_inner: f64,
    /// Inner radius actually used.
    pub rho: f64,
}

/// Maps a `ρ > 1` problem to `1/ρ < 1` by `F(z) ↦ F(ρz)`, which sends the
/// pair `{T, ρT}` to `{(1/ρ)T, T}`.
fn normalize(f: &RationalFunctionSpec, g: &RationalFunctionSpec, rho: f64) -> Result<(RationalFunctionSpec, RationalFunctionSpec, f64)> {
    if !(rho.is_finite() && rho > 0.0) || (rho - 1.0).abs() < MERGE_TOL {
        return Err(Error::Data(format!("rho must be positive and different from 1, got {rho}")));
    }
    if rho < 1.0 {
        return Ok((f.clone(), g.clone(), rho));
    }
    Ok((f.dilate(rho)?, g.dilate(rho)?, 1.0 / rho))
}

fn circle_deviation(f: &RationalFunctionSpec, g: &RationalFunctionSpec, radius: f64, n: usize) -> Result<f64> {
    for spec in [f, g] {
        for p in spec.denominator_zeros() {
            if (p.point.norm() - radius).abs() < MERGE_TOL {
                return Err(Error::Domain {
                    point: p.point,
                    reason: format!("pole on the circle of radius {radius}"),
                });
            }
        }
    }
    let mut worst: f64 = 0.0;
    for theta in uniform_angles(n) {
        let z = Complex64::from_polar(radius, theta);
        let (lf, lg) = (f.log_modulus(z)?, g.log_modulus(z)?);
        let dev = if lf == f64::NEG_INFINITY && lg == f64::NEG_INFINITY {
            0.0
        } else {
            (lg - lf).exp_m1().abs()
        };
        worst = worst.max(if dev.is_nan() { f64::INFINITY } else { dev });
    }
    Ok(worst)
}

/// Compares `|F|` and `|G|` at `n` equispaced angles on `T` and on `ρT`.
pub fn modulus_match_on_circles(
    f: &RationalFunctionSpec,
    g: &RationalFunctionSpec,
    rho: f64,
    n: usize,
    tol: f64,
) -> Result<ModulusMatch> {
    if n == 0 {
        return Err(Error::Data("need at least one sample per circle".into()));
    }
    let (f, g, rho) = normalize(f, g, rho)?;
    let deviation_unit = circle_deviation(&f, &g, 1.0, n)?;
    let deviation_inner = circle_deviation(&f, &g, rho, n)?;
    Ok(ModulusMatch {
        matched: deviation_unit <= tol && deviation_inner <= tol,
        deviation_unit,
        deviation_inner,
        rho,
    })
}

/// `G = c z^m F` as concluded from the two-circle data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeConclusion {
    pub c: Complex64,
    pub m: i32,
    /// Largest `|c_j − c| / |c|` over the probe points.
    pub ratio_deviation: f64,
}

fn probe_points(f: &RationalFunctionSpec, g: &RationalFunctionSpec, lo: f64, hi: f64) -> Result<Vec<Complex64>> {
    let avoid: Vec<Complex64> = f.divisor().points().chain(g.divisor().points()).collect();
    let mut rng = SeedStream::new(PROBE_SEED);
    let mut out = Vec::with_capacity(GAUGE_PROBES);
    for _ in 0..10_000 {
        if out.len() == GAUGE_PROBES {
            break;
        }
        let r = rng.uniform_in(lo, hi);
        let z = Complex64::from_polar(r, rng.uniform_in(0.0, std::f64::consts::TAU));
        let clear = avoid.iter().all(|p| (z - p).norm() >= PROBE_CLEARANCE)
            && r - lo >= PROBE_CLEARANCE
            && hi - r >= PROBE_CLEARANCE;
        if clear {
            out.push(z);
        }
    }
    if out.len() < GAUGE_PROBES {
        return Err(Error::Data("could not place probe points clear of the divisor in the annulus".into()));
    }
    Ok(out)
}

/// Recovers `c` and `m` with `G = c z^m F` and checks the two circle
/// conditions `|c| = 1` (unit circle) and `|c| ρ^m = 1` (inner circle).
///
/// A nonconstant ratio, or differing divisors away from the origin, means the
/// inputs cannot be modulus-matched and is reported as
/// [`Error::DivisorMismatch`]. A constant ratio violating either circle
/// condition is [`Error::GaugeDichotomy`].
pub fn conclude_gauge(f: &RationalFunctionSpec, g: &RationalFunctionSpec, rho: f64) -> Result<GaugeConclusion> {
    if !(rho.is_finite() && rho > 0.0) || (rho - 1.0).abs() < MERGE_TOL {
        return Err(Error::Data(format!("rho must be positive and different from 1, got {rho}")));
    }
    let origin = Complex64::new(0.0, 0.0);
    let quotient = divisor_arithmetic(&g.divisor(), &f.divisor(), DivisorOp::Quotient);
    let m = quotient.multiplicity(origin);
    if let Some((p, k)) = quotient.entries().iter().find(|(p, _)| p.norm() > MERGE_TOL) {
        return Err(Error::DivisorMismatch(format!("G/F has multiplicity {k} at {p}")));
    }
    let m = i32::try_from(m).map_err(|_| Error::Data("origin multiplicity out of range".into()))?;
    let probes = probe_points(f, g, rho.min(1.0), rho.max(1.0))?;
    let ratios = probes
        .iter()
        .map(|&z| Ok(g.eval(z)? / (z.powi(m) * f.eval(z)?)))
        .collect::<Result<Vec<_>>>()?;
    let c = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let ratio_deviation = ratios.iter().map(|r| (r - c).norm() / c.norm()).fold(0.0, f64::max);
    if !(ratio_deviation <= GAUGE_TOL) {
        return Err(Error::DivisorMismatch(format!("G/(z^{m} F) varies by {ratio_deviation:.3e}")));
    }
    let abs_c = c.norm();
    let abs_c_rho_m = abs_c * rho.powi(m);
    if (abs_c - 1.0).abs() > GAUGE_TOL || (abs_c_rho_m - 1.0).abs() > GAUGE_TOL {
        return Err(Error::GaugeDichotomy { c, m, abs_c, abs_c_rho_m });
    }
    Ok(GaugeConclusion { c, m, ratio_deviation })
}

/// Multiplicities `m_{F/G}(ρ^{2k} z₀)` for `k = 0..=k_max`.
///
/// Matching moduli on both circles make `F/G` invariant under reflection in
/// both, so any nonzero entry repeats along the whole orbit; for rational
/// inputs the chain is simply read off the quotient divisor.
pub fn reflection_orbit(
    f: &RationalFunctionSpec,
    g: &RationalFunctionSpec,
    z0: Complex64,
    rho: f64,
    k_max: usize,
) -> Result<Vec<i64>> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Data(format!("reflection orbit needs 0 < rho < 1, got {rho}")));
    }
    if z0.norm() <= MERGE_TOL {
        return Err(Error::Data("orbit start must be nonzero".into()));
    }
    let q = divisor_arithmetic(&f.divisor(), &g.divisor(), DivisorOp::Quotient);
    let step = rho * rho;
    Ok((0..=k_max).map(|k| q.multiplicity(z0 * step.powi(k as i32))).collect())
}

/// `F` with a single zero `a` moved to `1/ā` and rescaled by `|a|` so that
/// `|F|` is unchanged on the unit circle.
pub fn reflect_zero(f: &RationalFunctionSpec, a: Complex64) -> Result<RationalFunctionSpec> {
    if a.norm() <= MERGE_TOL {
        return Err(Error::Data("cannot reflect a zero at the origin".into()));
    }
    let Some(idx) = f.numerator_zeros().iter().position(|w| (w.point - a).norm() <= MERGE_TOL) else {
        return Err(Error::Data(format!("{a} is not a zero of F")));
    };
    let mut zeros = f.numerator_zeros().to_vec();
    zeros[idx].mult -= 1;
    zeros.push(WeightedPoint::simple(1.0 / a.conj()));
    zeros.retain(|w| w.mult > 0);
    // |ζ − 1/ā| = |a − ζ|/|a| on |ζ| = 1
    RationalFunctionSpec::new(zeros, f.denominator_zeros().to_vec(), f.scale() * a.norm())
}
