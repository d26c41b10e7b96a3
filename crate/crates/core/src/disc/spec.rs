use super::{
    angle_distance, check_finite, rho_factor, AtomicSingularInner, FiniteBlaschkeProduct, PowerSeries,
    TrigPolyLogModulus, WeightedPoint,
};
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;

/// Extra factor `(ρ(z − a)/(ρ² − ā z))^mult`, unimodular on `|z| = ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoFactor {
    pub zero: Complex64,
    pub rho: f64,
    pub mult: u32,
}

impl RhoFactor {
    pub fn new(zero: Complex64, rho: f64, mult: u32) -> Result<Self> {
        check_finite(zero, "rho-factor zero")?;
        if !(rho.is_finite() && rho > 0.0) || mult == 0 {
            return Err(Error::Data(format!("rho-factor needs rho > 0 and mult > 0, got {rho}, {mult}")));
        }
        Ok(Self { zero, rho, mult })
    }

    /// The reflected pole `ρ²/ā` (none when `a = 0`).
    pub fn pole(&self) -> Option<Complex64> {
        (self.zero.norm() > 0.0).then(|| self.rho * self.rho / self.zero.conj())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        rho_factor(self.zero, self.rho, z).powu(self.mult)
    }

    pub fn log_modulus(&self, z: Complex64) -> f64 {
        let num = self.rho * (z - self.zero).norm();
        let den = (self.rho * self.rho - self.zero.conj() * z).norm();
        self.mult as f64 * (num / den).ln()
    }
}

/// Nevanlinna-form factors `B S_num O / S_den`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Factored {
    pub blaschke: FiniteBlaschkeProduct,
    pub outer: TrigPolyLogModulus,
    pub numerator_atoms: AtomicSingularInner,
    pub denominator_atoms: AtomicSingularInner,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecKind {
    /// `z^k exp(φ(z))` with `φ` a polynomial.
    PowerSeries { origin_order: u32, exponent: PowerSeries },
    /// `scale ∏(z − z_i)^{m_i} / ∏(z − p_j)^{n_j}`.
    Rational {
        zeros: Vec<WeightedPoint>,
        poles: Vec<WeightedPoint>,
        scale: Complex64,
    },
    Factored(Factored),
}

/// A parametric holomorphic or meromorphic function with an explicit gauge
/// phase `e^{iγ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub gauge_phase: f64,
    pub kind: SpecKind,
    pub rho_factors: Vec<RhoFactor>,
}

impl FunctionSpec {
    fn with_kind(kind: SpecKind) -> Self {
        Self { gauge_phase: 0.0, kind, rho_factors: Vec::new() }
    }

    pub fn power_series(origin_order: u32, exponent: PowerSeries) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::Data("exponent coefficients must be finite".into()));
        }
        Ok(Self::with_kind(SpecKind::PowerSeries { origin_order, exponent }))
    }

    /// Builds a rational spec, merging repeated points and cancelling common
    /// zeros and poles.
    pub fn rational(zeros: Vec<WeightedPoint>, poles: Vec<WeightedPoint>, scale: Complex64) -> Result<Self> {
        check_finite(scale, "rational scale")?;
        if scale.norm() == 0.0 {
            return Err(Error::Data("rational scale must be nonzero".into()));
        }
        let mut signed = Vec::with_capacity(zeros.len() + poles.len());
        for (list, sign) in [(&zeros, 1i64), (&poles, -1i64)] {
            for wp in list {
                check_finite(wp.point, "rational zero/pole")?;
                if wp.mult == 0 {
                    return Err(Error::Data(format!("point {} has multiplicity 0", wp.point)));
                }
                signed.push((wp.point, sign * wp.mult as i64));
            }
        }
        let merged = merge_signed(signed, crate::mero::MERGE_TOL);
        let zeros = merged.iter().filter(|(_, m)| *m > 0).map(|&(p, m)| WeightedPoint::new(p, m as u32)).collect();
        let poles = merged.iter().filter(|(_, m)| *m < 0).map(|&(p, m)| WeightedPoint::new(p, (-m) as u32)).collect();
        Ok(Self::with_kind(SpecKind::Rational { zeros, poles, scale }))
    }

    pub fn factored(
        blaschke: FiniteBlaschkeProduct,
        outer: TrigPolyLogModulus,
        numerator_atoms: AtomicSingularInner,
        denominator_atoms: AtomicSingularInner,
    ) -> Self {
        Self::with_kind(SpecKind::Factored(Factored { blaschke, outer, numerator_atoms, denominator_atoms }))
    }

    /// Blaschke product times outer function, no singular parts.
    pub fn blaschke_outer(blaschke: FiniteBlaschkeProduct, outer: TrigPolyLogModulus) -> Self {
        Self::factored(blaschke, outer, AtomicSingularInner::empty(), AtomicSingularInner::empty())
    }

    pub fn with_gauge(mut self, gauge_phase: f64) -> Self {
        self.gauge_phase = gauge_phase;
        self
    }

    pub fn with_rho_factor(mut self, factor: RhoFactor) -> Self {
        self.rho_factors.push(factor);
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpecKind::PowerSeries { .. } => "power_series",
            SpecKind::Rational { .. } => "rational",
            SpecKind::Factored(_) => "factored",
        }
    }

    pub fn has_singular_part(&self) -> bool {
        matches!(&self.kind, SpecKind::Factored(f) if !f.numerator_atoms.is_empty() || !f.denominator_atoms.is_empty())
    }

    /// Unit-gauge value; `eval = e^{iγ} · eval_ungauged`.
    pub fn eval_ungauged(&self, z: Complex64) -> Result<Complex64> {
        check_finite(z, "evaluation point")?;
        let mut acc = match &self.kind {
            SpecKind::PowerSeries { origin_order, exponent } => z.powu(*origin_order) * exponent.eval(z).exp(),
            SpecKind::Rational { zeros, poles, scale } => {
                let mut acc = *scale;
                for p in poles {
                    let d = z - p.point;
                    if d.norm() < PROXIMITY_TOL {
                        return Err(Error::Domain { point: z, reason: format!("pole of order {} at {}", p.mult, p.point) });
                    }
                    acc /= d.powu(p.mult);
                }
                for q in zeros {
                    acc *= (z - q.point).powu(q.mult);
                }
                acc
            }
            SpecKind::Factored(f) => {
                if z.norm() >= 1.0 {
                    return Err(Error::Domain {
                        point: z,
                        reason: "factored functions are evaluated inside the open unit disc; use the boundary log-modulus on the circle".into(),
                    });
                }
                f.blaschke.eval(z) * (f.numerator_atoms.exponent(z) - f.denominator_atoms.exponent(z) + f.outer.log_outer(z)).exp()
            }
        };
        for rf in &self.rho_factors {
            if let Some(p) = rf.pole() {
                if (z - p).norm() < PROXIMITY_TOL {
                    return Err(Error::Domain { point: z, reason: format!("pole of a rho-factor at {p}") });
                }
            }
            acc *= rf.eval(z);
        }
        Ok(acc)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(Complex64::cis(self.gauge_phase) * self.eval_ungauged(z)?)
    }

    /// `|f(z)|`, independent of the gauge bit for bit.
    pub fn modulus(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval_ungauged(z)?.norm())
    }

    /// `log|f(z)|` accumulated factor by factor (no overflow for large
    /// exponents); `−∞` at zeros.
    pub fn log_modulus(&self, z: Complex64) -> Result<f64> {
        check_finite(z, "evaluation point")?;
        let mut acc = match &self.kind {
            SpecKind::PowerSeries { origin_order, exponent } => {
                let lead = if *origin_order == 0 { 0.0 } else { *origin_order as f64 * z.norm().ln() };
                lead + exponent.eval(z).re
            }
            SpecKind::Rational { zeros, poles, scale } => {
                let mut acc = scale.norm().ln();
                for p in poles {
                    let d = (z - p.point).norm();
                    if d < PROXIMITY_TOL {
                        return Err(Error::Domain { point: z, reason: format!("pole at {}", p.point) });
                    }
                    acc -= p.mult as f64 * d.ln();
                }
                for q in zeros {
                    acc += q.mult as f64 * (z - q.point).norm().ln();
                }
                acc
            }
            SpecKind::Factored(f) => {
                if z.norm() >= 1.0 {
                    return Err(Error::Domain { point: z, reason: "outside the open unit disc".into() });
                }
                f.blaschke.log_modulus(z) + f.numerator_atoms.log_modulus(z) - f.denominator_atoms.log_modulus(z)
                    + f.outer.log_outer(z).re
            }
        };
        for rf in &self.rho_factors {
            if let Some(p) = rf.pole() {
                if (z - p).norm() < PROXIMITY_TOL {
                    return Err(Error::Domain { point: z, reason: format!("pole of a rho-factor at {p}") });
                }
            }
            acc += rf.log_modulus(z);
        }
        Ok(acc)
    }

    /// Radial-limit log-modulus `log|f*(e^{iθ})|`.
    pub fn boundary_log_modulus(&self, theta: f64) -> Result<f64> {
        if !theta.is_finite() {
            return Err(Error::Data("boundary angle is not finite".into()));
        }
        let zeta = Complex64::cis(theta);
        let singular = |reason: String| Error::Singularity { theta, reason };
        for (point, _) in self.divisor() {
            if (point - zeta).norm() < PROXIMITY_TOL {
                return Err(singular(format!("zero or pole {point} on the unit circle")));
            }
        }
        let base = match &self.kind {
            SpecKind::PowerSeries { exponent, .. } => exponent.eval(zeta).re,
            SpecKind::Rational { .. } => {
                // rho-factors are added below; strip them here
                let bare = FunctionSpec { rho_factors: Vec::new(), ..self.clone() };
                bare.log_modulus(zeta)?
            }
            SpecKind::Factored(f) => {
                for atoms in [&f.numerator_atoms, &f.denominator_atoms] {
                    if atoms.nearest_atom_distance(theta) < PROXIMITY_TOL {
                        return Err(singular("singular atom at this angle".into()));
                    }
                }
                // Blaschke and singular factors are unimodular on the circle.
                f.outer.value(theta)
            }
        };
        Ok(base + self.rho_factors.iter().map(|rf| rf.log_modulus(zeta)).sum::<f64>())
    }

    /// Known zeros (positive) and poles (negative) with multiplicity, merged.
    /// Singular atoms are boundary singularities, not divisor points, and are
    /// reported by [`FunctionSpec::boundary_atoms`].
    pub fn divisor(&self) -> Vec<(Complex64, i64)> {
        let mut pts: Vec<(Complex64, i64)> = Vec::new();
        let origin = Complex64::new(0.0, 0.0);
        match &self.kind {
            SpecKind::PowerSeries { origin_order, .. } => pts.push((origin, *origin_order as i64)),
            SpecKind::Rational { zeros, poles, .. } => {
                pts.extend(zeros.iter().map(|w| (w.point, w.mult as i64)));
                pts.extend(poles.iter().map(|w| (w.point, -(w.mult as i64))));
            }
            SpecKind::Factored(f) => {
                pts.push((origin, f.blaschke.origin_order as i64));
                pts.extend(f.blaschke.zeros().iter().map(|w| (w.point, w.mult as i64)));
            }
        }
        for rf in &self.rho_factors {
            pts.push((rf.zero, rf.mult as i64));
            if let Some(p) = rf.pole() {
                pts.push((p, -(rf.mult as i64)));
            }
        }
        merge_signed(pts, crate::mero::MERGE_TOL)
    }

    /// Angles of all singular atoms (numerator and denominator).
    pub fn boundary_atoms(&self) -> Vec<f64> {
        match &self.kind {
            SpecKind::Factored(f) => f
                .numerator_atoms
                .atoms()
                .iter()
                .chain(f.denominator_atoms.atoms())
                .map(|a| a.theta)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Whether the function is only defined inside the unit disc.
    pub fn is_disc_only(&self) -> bool {
        matches!(self.kind, SpecKind::Factored(_))
    }

    /// Closest divisor point to the circle `|z| = r`, with its distance.
    pub fn nearest_divisor_point_to_circle(&self, r: f64) -> Option<(Complex64, f64)> {
        self.divisor()
            .into_iter()
            .map(|(p, _)| (p, (p.norm() - r).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Fails when an atom sits within tolerance of any of `angles`.
    pub(crate) fn check_atoms_clear(&self, angles: &[f64]) -> Result<()> {
        for a in self.boundary_atoms() {
            if let Some(t) = angles.iter().find(|t| angle_distance(**t, a) < PROXIMITY_TOL) {
                return Err(Error::Singularity { theta: *t, reason: "singular atom at a sampled angle".into() });
            }
        }
        Ok(())
    }
}

/// Sums multiplicities of points closer than `tol`, dropping zero totals.
/// The first occurrence of a cluster is its representative.
pub(crate) fn merge_signed(points: Vec<(Complex64, i64)>, tol: f64) -> Vec<(Complex64, i64)> {
    let mut out: Vec<(Complex64, i64)> = Vec::new();
    for (p, m) in points {
        if m == 0 {
            continue;
        }
        match out.iter_mut().find(|(q, _)| (*q - p).norm() <= tol) {
            Some(entry) => entry.1 += m,
            None => out.push((p, m)),
        }
    }
    out.retain(|(_, m)| *m != 0);
    out
}

/// Evaluates `spec` at `z`.
pub fn eval(spec: &FunctionSpec, z: Complex64) -> Result<Complex64> {
    spec.eval(z)
}

/// Boundary log-modulus of `spec` at angle `theta`.
pub fn eval_boundary_log_modulus(spec: &FunctionSpec, theta: f64) -> Result<f64> {
    spec.boundary_log_modulus(theta)
}
