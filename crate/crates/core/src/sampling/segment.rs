use super::{ModulusTrace, SegmentSide, TraceDomain};
use crate::disc::{FunctionSpec, PowerSeries, SpecKind, WeightedPoint};
use crate::par::Execution;
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Open segment `{z₀ + r e^{iβ} t : t ∈ (−1, 1)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentSpec {
    pub midpoint: Complex64,
    pub half_length: f64,
    pub direction_angle: f64,
}

impl SegmentSpec {
    pub fn new(midpoint: Complex64, half_length: f64, direction_angle: f64) -> Result<Self> {
        crate::disc::check_finite(midpoint, "segment midpoint")?;
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::Data(format!("segment half-length must be positive, got {half_length}")));
        }
        if !direction_angle.is_finite() {
            return Err(Error::Data("segment direction is not finite".into()));
        }
        Ok(Self { midpoint, half_length, direction_angle })
    }

    /// `(−1, 1)` on the real axis.
    pub fn canonical() -> Self {
        Self { midpoint: Complex64::new(0.0, 0.0), half_length: 1.0, direction_angle: 0.0 }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        self.midpoint + Complex64::from_polar(self.half_length * t, self.direction_angle)
    }
}

/// A base segment and its rotation by `α` about the common midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentPair {
    pub base: SegmentSpec,
    pub rotation_angle: f64,
}

impl SegmentPair {
    pub fn new(base: SegmentSpec, rotation_angle: f64) -> Result<Self> {
        if !rotation_angle.is_finite() {
            return Err(Error::Data("rotation angle is not finite".into()));
        }
        let r = rotation_angle.rem_euclid(PI);
        if r.min(PI - r) < PROXIMITY_TOL {
            return Err(Error::Data(format!(
                "rotation angle {rotation_angle} is a multiple of π: the segments coincide"
            )));
        }
        Ok(Self { base, rotation_angle })
    }

    pub fn canonical(alpha: f64) -> Result<Self> {
        Self::new(SegmentSpec::canonical(), alpha)
    }

    /// Pairs two explicit segments. Only a rotation about the shared midpoint
    /// with equal lengths is accepted; other intersecting configurations are
    /// outside what the two-segment uniqueness result covers.
    pub fn from_segments(base: SegmentSpec, other: SegmentSpec) -> Result<Self> {
        let scale = 1.0 + base.midpoint.norm();
        if (base.midpoint - other.midpoint).norm() > 1e-12 * scale {
            return Err(Error::Data("segments must share their midpoint".into()));
        }
        if (base.half_length - other.half_length).abs() > 1e-12 * base.half_length {
            return Err(Error::Data("the second segment must be a rotation of the first (equal lengths)".into()));
        }
        Self::new(base, other.direction_angle - base.direction_angle)
    }

    pub fn rotated(&self) -> SegmentSpec {
        SegmentSpec { direction_angle: self.base.direction_angle + self.rotation_angle, ..self.base }
    }
}

/// `w ↦ z₀ + r e^{iβ} w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub midpoint: Complex64,
    pub half_length: f64,
    pub direction_angle: f64,
}

impl AffineMap {
    pub fn identity() -> Self {
        Self { midpoint: Complex64::new(0.0, 0.0), half_length: 1.0, direction_angle: 0.0 }
    }

    pub fn slope(&self) -> Complex64 {
        Complex64::from_polar(self.half_length, self.direction_angle)
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        self.midpoint + self.slope() * w
    }

    pub fn invert(&self, z: Complex64) -> Complex64 {
        (z - self.midpoint) / self.slope()
    }

    /// Exact spec of `w ↦ f(z₀ + r e^{iβ} w)`.
    ///
    /// Supported for rational specs and for power series whose origin zero is
    /// preserved (`k = 0` or `z₀ = 0`).
    pub fn pull_back(&self, spec: &FunctionSpec) -> Result<FunctionSpec> {
        let s = self.slope();
        if !spec.rho_factors.is_empty() {
            return Err(Error::Data("pull-back of rho-factors is not supported".into()));
        }
        let pulled = match &spec.kind {
            SpecKind::Rational { zeros, poles, scale } => {
                let map = |list: &[WeightedPoint]| -> Vec<WeightedPoint> {
                    list.iter().map(|w| WeightedPoint::new(self.invert(w.point), w.mult)).collect()
                };
                let degree: i64 = zeros.iter().map(|w| w.mult as i64).sum::<i64>()
                    - poles.iter().map(|w| w.mult as i64).sum::<i64>();
                FunctionSpec::rational(map(zeros), map(poles), *scale * s.powi(degree as i32))?
            }
            SpecKind::PowerSeries { origin_order, exponent } => {
                if *origin_order > 0 && self.midpoint.norm() > 0.0 {
                    return Err(Error::Data("z^k with k > 0 does not stay in power-series form off the origin".into()));
                }
                // φ(z₀ + s w) = Σ_m w^m s^m Σ_{n≥m} a_n C(n, m) z₀^{n−m}
                let a = &exponent.coefficients;
                let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
                for (n, an) in a.iter().enumerate() {
                    let mut binom = 1.0;
                    for (m, slot) in out.iter_mut().enumerate().take(n + 1) {
                        *slot += an * binom * self.midpoint.powu((n - m) as u32) * s.powu(m as u32);
                        binom = binom * (n - m) as f64 / (m + 1) as f64;
                    }
                }
                let mut series = PowerSeries::new(out);
                // (s w)^k = w^k e^{k log s}
                series.add_term(0, *origin_order as f64 * s.ln());
                FunctionSpec::power_series(*origin_order, series)?
            }
            SpecKind::Factored(_) => {
                return Err(Error::Data("factored specs live on the unit disc and are not pulled back".into()))
            }
        };
        Ok(pulled.with_gauge(spec.gauge_phase))
    }
}

/// Affine substitution mapping the canonical pair `(−1,1)`, `e^{iα}(−1,1)`
/// onto `pair`, and the canonical pair itself.
pub fn normalize_segment_pair(pair: &SegmentPair) -> Result<(AffineMap, SegmentPair)> {
    let b = SegmentSpec::new(pair.base.midpoint, pair.base.half_length, pair.base.direction_angle)?;
    let map = AffineMap { midpoint: b.midpoint, half_length: b.half_length, direction_angle: b.direction_angle };
    Ok((map, SegmentPair::canonical(pair.rotation_angle)?))
}

/// `n` Chebyshev points of the first kind in `(−1, 1)`, increasing.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|j| -((2 * j + 1) as f64 * PI / (2 * n) as f64).cos()).collect()
}

pub fn sample_segment(spec: &FunctionSpec, pair: &SegmentPair, n_points: usize) -> Result<(ModulusTrace, ModulusTrace)> {
    sample_segment_with(spec, pair, n_points, Execution::default())
}

/// Traces `|f|` at Chebyshev nodes of the open segments `I` and `I_α`.
pub fn sample_segment_with(
    spec: &FunctionSpec,
    pair: &SegmentPair,
    n_points: usize,
    exec: Execution,
) -> Result<(ModulusTrace, ModulusTrace)> {
    if n_points < 2 {
        return Err(Error::Data(format!("need at least 2 nodes per segment, got {n_points}")));
    }
    let (map, canonical) = normalize_segment_pair(pair)?;
    let nodes = chebyshev_nodes(n_points);
    let rot = Complex64::cis(canonical.rotation_angle);
    let side = |dir: Complex64, side: SegmentSide| -> Result<ModulusTrace> {
        let values = exec
            .map_slice(&nodes, |&t| spec.modulus(map.apply(dir * t)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        ModulusTrace::new(TraceDomain::Segment { pair: *pair, side }, nodes.clone(), values)
    };
    Ok((side(Complex64::new(1.0, 0.0), SegmentSide::Base)?, side(rot, SegmentSide::Rotated)?))
}
