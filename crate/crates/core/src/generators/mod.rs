//! Seeded synthetic functions and independent oracles for the test suites.
//!
//! Every draw comes from a [`SeedStream`] forked per purpose, so a given
//! `(seed, config)` always produces the same spec.

mod oracles;

pub use oracles::{best_gauge_distance, gauge_aligned_sup_error, optimal_assignment_error};

use crate::disc::{
    Atom, AtomicSingularInner, FiniteBlaschkeProduct, FunctionSpec, PowerSeries, RhoFactor, TrigPolyLogModulus,
    WeightedPoint,
};
use crate::rng::SeedStream;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

const ATOM_SEPARATION: f64 = 0.1;
const ZERO_SEPARATION: f64 = 0.05;
const MAX_REJECTIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_zero_count: usize,
    pub max_pole_count: usize,
    pub max_origin_order: u32,
    pub max_series_degree: usize,
    pub max_outer_degree: usize,
    pub max_atoms: usize,
    /// Radii of generated disc zeros.
    pub zero_radius_band: (f64, f64),
    pub coefficient_bound: f64,
    /// Circles that zeros must stay away from.
    pub test_radii: Vec<f64>,
    /// Minimum `|ln(|a|/r)|` between a zero `a` and each test radius `r`.
    pub circle_clearance: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_zero_count: 5,
            max_pole_count: 4,
            max_origin_order: 2,
            max_series_degree: 8,
            max_outer_degree: 6,
            max_atoms: 3,
            zero_radius_band: (0.1, 0.95),
            coefficient_bound: 1.0,
            test_radii: vec![0.6],
            circle_clearance: 0.06,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.zero_radius_band;
        if !(lo > 0.0 && lo < hi && hi < 1.0) {
            return Err(Error::Data(format!("zero radius band ({lo}, {hi}) must lie inside (0, 1)")));
        }
        if !(self.coefficient_bound > 0.0 && self.coefficient_bound.is_finite()) {
            return Err(Error::Data("coefficient bound must be positive".into()));
        }
        if !(self.circle_clearance >= 0.0) || self.test_radii.iter().any(|r| !(*r > 0.0)) {
            return Err(Error::Data("test radii must be positive and the clearance nonnegative".into()));
        }
        Ok(())
    }

    fn stream(&self, purpose: u64) -> SeedStream {
        SeedStream::new(self.seed).fork(purpose)
    }

    fn clear_of_test_circles(&self, r: f64) -> bool {
        self.test_radii.iter().all(|t| (r / t).ln().abs() >= self.circle_clearance)
    }
}

/// `z^k exp(φ(z))` with `φ` of degree `max_series_degree`, every coefficient
/// uniform in the disc of radius `coefficient_bound`.
pub fn random_power_series_spec(cfg: &GeneratorConfig, k: u32) -> Result<FunctionSpec> {
    cfg.validate()?;
    let mut rng = cfg.stream(1);
    let coeffs = (0..=cfg.max_series_degree).map(|_| rng.in_disc(cfg.coefficient_bound)).collect();
    FunctionSpec::power_series(k, PowerSeries::new(coeffs))
}

fn random_zeros(cfg: &GeneratorConfig, rng: &mut SeedStream, count: usize) -> Result<Vec<WeightedPoint>> {
    let (lo, hi) = cfg.zero_radius_band;
    let mut zeros: Vec<WeightedPoint> = Vec::with_capacity(count);
    for _ in 0..MAX_REJECTIONS {
        if zeros.len() == count {
            return Ok(zeros);
        }
        let a = Complex64::from_polar(rng.uniform_in(lo, hi), rng.uniform_in(0.0, TAU));
        if cfg.clear_of_test_circles(a.norm()) && zeros.iter().all(|w| (w.point - a).norm() >= ZERO_SEPARATION) {
            zeros.push(WeightedPoint::simple(a));
        }
    }
    Err(Error::Data("could not place zeros with the requested clearances".into()))
}

fn random_atoms(rng: &mut SeedStream, count: usize, taken: &mut Vec<f64>) -> Result<AtomicSingularInner> {
    let mut atoms = Vec::with_capacity(count);
    for _ in 0..MAX_REJECTIONS {
        if atoms.len() == count {
            return AtomicSingularInner::new(atoms);
        }
        let theta = rng.uniform_in(0.0, TAU);
        if taken.iter().all(|t| crate::disc::angle_distance(*t, theta) >= ATOM_SEPARATION) {
            taken.push(theta);
            atoms.push(Atom { theta, mass: rng.uniform_in(0.05, 0.5) });
        }
    }
    Err(Error::Data("could not place separated atoms".into()))
}

fn random_outer(cfg: &GeneratorConfig, rng: &mut SeedStream) -> Result<TrigPolyLogModulus> {
    let b = cfg.coefficient_bound;
    let mean = rng.uniform_in(-b, b);
    let (mut cos, mut sin) = (Vec::new(), Vec::new());
    for n in 1..=cfg.max_outer_degree {
        // analytic coefficient cos_n − i sin_n uniform in the disc of radius b/n
        let c = rng.in_disc(b / n as f64);
        cos.push(c.re);
        sin.push(-c.im);
    }
    TrigPolyLogModulus::new(mean, cos, sin)
}

/// `e^{iγ} z^k B S_num O / S_den`.
///
/// The zero count is uniform in `0..=max_zero_count` and `k` in
/// `0..=max_origin_order`; zeros keep `circle_clearance` from every test radius
/// and each other's company beyond 0.05; atoms (numerator and denominator)
/// are at least 0.1 rad apart.
pub fn random_factored_spec(cfg: &GeneratorConfig, with_atoms: bool, with_denominator: bool) -> Result<FunctionSpec> {
    cfg.validate()?;
    let mut rng = cfg.stream(2);
    let k = rng.int_upto(cfg.max_origin_order as usize) as u32;
    let count = rng.int_upto(cfg.max_zero_count);
    let zeros = random_zeros(cfg, &mut rng, count)?;
    let outer = random_outer(cfg, &mut rng)?;
    let mut taken = Vec::new();
    let num = if with_atoms && cfg.max_atoms > 0 {
        let n = 1 + rng.int_upto(cfg.max_atoms - 1);
        random_atoms(&mut rng, n, &mut taken)?
    } else {
        AtomicSingularInner::empty()
    };
    let den = if with_denominator && cfg.max_atoms > 0 {
        let n = 1 + rng.int_upto(cfg.max_atoms - 1);
        random_atoms(&mut rng, n, &mut taken)?
    } else {
        AtomicSingularInner::empty()
    };
    let gauge = rng.uniform_in(0.0, TAU);
    let blaschke = FiniteBlaschkeProduct::new(k, zeros, 0.0)?;
    Ok(FunctionSpec::factored(blaschke, outer, num, den).with_gauge(gauge))
}

/// Random rational function with up to `max_zero_count` zeros and
/// `max_pole_count` poles in `|z| < 2`, all at least 0.05 away from the unit
/// circle and every test circle, and from each other.
pub fn random_rational_spec(cfg: &GeneratorConfig) -> Result<FunctionSpec> {
    cfg.validate()?;
    let mut rng = cfg.stream(3);
    let nz = rng.int_upto(cfg.max_zero_count);
    let np = rng.int_upto(cfg.max_pole_count);
    let mut radii = cfg.test_radii.clone();
    radii.push(1.0);
    let mut pts: Vec<Complex64> = Vec::new();
    for _ in 0..MAX_REJECTIONS {
        if pts.len() == nz + np {
            break;
        }
        let p = rng.in_disc(2.0);
        let clear = radii.iter().all(|r| (p.norm() - r).abs() >= 0.05) && p.norm() >= 0.05;
        if clear && pts.iter().all(|q| (q - p).norm() >= ZERO_SEPARATION) {
            pts.push(p);
        }
    }
    if pts.len() < nz + np {
        return Err(Error::Data("could not place rational zeros and poles".into()));
    }
    let scale = Complex64::from_polar(rng.uniform_in(0.5, 2.0), rng.uniform_in(0.0, TAU));
    let zeros = pts[..nz].iter().map(|&p| WeightedPoint::simple(p)).collect();
    let poles = pts[nz..].iter().map(|&p| WeightedPoint::simple(p)).collect();
    FunctionSpec::rational(zeros, poles, scale)
}

/// `e^{iλ} f`: same modulus everywhere.
pub fn make_gauge_variant(spec: &FunctionSpec, lambda: f64) -> FunctionSpec {
    spec.clone().with_gauge(spec.gauge_phase + lambda)
}

/// `f · ρ(z − a′)/(ρ² − ā′z)`: same modulus on `ρT`, different on `T`.
pub fn make_single_circle_impostor(spec: &FunctionSpec, a_prime: Complex64, rho: f64) -> Result<FunctionSpec> {
    if !(a_prime.norm() < rho) {
        return Err(Error::Domain { point: a_prime, reason: format!("impostor zero must satisfy |a'| < rho = {rho}") });
    }
    Ok(spec.clone().with_rho_factor(RhoFactor::new(a_prime, rho, 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_circle, sample_segment, SegmentPair};

    #[test]
    fn degree_zero_series_is_a_scaled_monomial() {
        let cfg = GeneratorConfig { max_series_degree: 0, ..GeneratorConfig::default() };
        let f = random_power_series_spec(&cfg, 3).unwrap();
        let crate::disc::SpecKind::PowerSeries { origin_order, exponent } = &f.kind else { panic!() };
        assert_eq!(*origin_order, 3);
        assert_eq!(exponent.coefficients.len(), 1);
        let z = Complex64::new(0.3, 0.1);
        assert!((f.eval(z).unwrap() - z.powu(3) * exponent.coefficients[0].exp()).norm() < 1e-15);
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GeneratorConfig::default().with_seed(42);
        assert_eq!(random_power_series_spec(&cfg, 1).unwrap(), random_power_series_spec(&cfg, 1).unwrap());
        let a = random_factored_spec(&cfg, true, true).unwrap();
        assert_eq!(a.to_json(), random_factored_spec(&cfg, true, true).unwrap().to_json());
        assert_ne!(a, random_factored_spec(&cfg.with_seed(43), true, true).unwrap());
    }

    #[test]
    fn series_trace_matches_direct_eval() {
        let f = random_power_series_spec(&GeneratorConfig::default().with_seed(7), 2).unwrap();
        let (i, _) = sample_segment(&f, &SegmentPair::canonical(1.0).unwrap(), 33).unwrap();
        for (t, v) in i.parameters().iter().zip(i.values()) {
            let z = Complex64::new(*t, 0.0);
            // |z^2 e^{φ}| = t^2 e^{Re φ(t)}
            let crate::disc::SpecKind::PowerSeries { exponent, .. } = &f.kind else { panic!() };
            let want = t * t * exponent.eval(z).re.exp();
            assert!((v - want).abs() <= 1e-13 * want.max(1e-300));
        }
    }

    #[test]
    fn factored_contract() {
        for seed in 0..20 {
            let cfg = GeneratorConfig::default().with_seed(seed);
            let plain = random_factored_spec(&cfg, false, false).unwrap();
            assert!(!plain.has_singular_part());
            let full = random_factored_spec(&cfg, true, true).unwrap();
            let crate::disc::SpecKind::Factored(f) = &full.kind else { panic!() };
            assert!(!f.numerator_atoms.is_empty() && !f.denominator_atoms.is_empty());
            let angles = full.boundary_atoms();
            for (i, a) in angles.iter().enumerate() {
                for b in &angles[i + 1..] {
                    assert!(crate::disc::angle_distance(*a, *b) >= 0.1);
                }
            }
            for w in f.blaschke.zeros() {
                assert!((w.point.norm() / 0.6).ln().abs() >= 0.06);
            }
        }
    }

    #[test]
    fn gauge_variants_keep_traces() {
        let f = random_factored_spec(&GeneratorConfig::default().with_seed(3), true, false).unwrap();
        let t = sample_circle(&f, 0.6, 64).unwrap();
        for lambda in [0.0, std::f64::consts::FRAC_PI_4, 1.0] {
            let g = make_gauge_variant(&f, lambda);
            assert_eq!(sample_circle(&g, 0.6, 64).unwrap(), t);
        }
    }

    #[test]
    fn impostor_contract() {
        let f = random_factored_spec(&GeneratorConfig::default().with_seed(5), false, false).unwrap();
        let g = make_single_circle_impostor(&f, Complex64::new(0.3, 0.0), 0.6).unwrap();
        let (tf, tg) = (sample_circle(&f, 0.6, 128).unwrap(), sample_circle(&g, 0.6, 128).unwrap());
        for (a, b) in tf.values().iter().zip(tg.values()) {
            assert!((a - b).abs() <= 1e-13 * a);
        }
        let (uf, ug) = (sample_circle(&f, 1.0, 128).unwrap(), sample_circle(&g, 1.0, 128).unwrap());
        let dev = uf.values().iter().zip(ug.values()).map(|(a, b)| (b / a - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev > 1e-2);
        assert!(matches!(make_single_circle_impostor(&f, Complex64::new(0.6, 0.0), 0.6), Err(Error::Domain { .. })));
    }

    #[test]
    fn invalid_config() {
        let cfg = GeneratorConfig { zero_radius_band: (0.5, 1.2), ..GeneratorConfig::default() };
        assert!(random_factored_spec(&cfg, false, false).is_err());
    }
}
