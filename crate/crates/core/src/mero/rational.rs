use super::{Divisor, MERGE_TOL};
use crate::disc::{FunctionSpec, SpecKind, WeightedPoint};
use crate::{Error, Result, PROXIMITY_TOL};
use num_complex::Complex64;

/// `scale · ∏(z − a_i)^{m_i} / ∏(z − b_j)^{n_j}` with common points cancelled.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunctionSpec {
    numerator_zeros: Vec<WeightedPoint>,
    denominator_zeros: Vec<WeightedPoint>,
    scale: Complex64,
}

impl RationalFunctionSpec {
    pub fn new(numerator_zeros: Vec<WeightedPoint>, denominator_zeros: Vec<WeightedPoint>, scale: Complex64) -> Result<Self> {
        Self::try_from(&FunctionSpec::rational(numerator_zeros, denominator_zeros, scale)?)
    }

    pub fn numerator_zeros(&self) -> &[WeightedPoint] {
        &self.numerator_zeros
    }

    pub fn denominator_zeros(&self) -> &[WeightedPoint] {
        &self.denominator_zeros
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn divisor(&self) -> Divisor {
        Divisor::new(
            self.numerator_zeros
                .iter()
                .map(|w| (w.point, w.mult as i64))
                .chain(self.denominator_zeros.iter().map(|w| (w.point, -(w.mult as i64))))
                .collect(),
        )
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.to_function_spec().eval(z)
    }

    pub fn log_modulus(&self, z: Complex64) -> Result<f64> {
        self.to_function_spec().log_modulus(z)
    }

    pub fn to_function_spec(&self) -> FunctionSpec {
        FunctionSpec {
            gauge_phase: 0.0,
            kind: SpecKind::Rational {
                zeros: self.numerator_zeros.clone(),
                poles: self.denominator_zeros.clone(),
                scale: self.scale,
            },
            rho_factors: Vec::new(),
        }
    }

    /// `c · F`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self { scale: self.scale * c, ..self.clone() }
    }

    /// `z^m · F`.
    pub fn times_power_of_z(&self, m: i32) -> Self {
        let origin = WeightedPoint::new(Complex64::new(0.0, 0.0), m.unsigned_abs());
        let (zeros, poles) = if m >= 0 { (vec![origin], vec![]) } else { (vec![], vec![origin]) };
        self.times(&Self { numerator_zeros: zeros, denominator_zeros: poles, scale: Complex64::new(1.0, 0.0) })
    }

    pub fn times(&self, other: &Self) -> Self {
        let zeros = self.numerator_zeros.iter().chain(&other.numerator_zeros).copied().filter(|w| w.mult > 0).collect();
        let poles = self.denominator_zeros.iter().chain(&other.denominator_zeros).copied().filter(|w| w.mult > 0).collect();
        Self::new(zeros, poles, self.scale * other.scale).expect("product of valid rational functions")
    }

    /// `z ↦ F(s z)` for real `s > 0`.
    pub fn dilate(&self, s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Data(format!("dilation factor must be positive, got {s}")));
        }
        let shrink = |w: &WeightedPoint| WeightedPoint::new(w.point / s, w.mult);
        let degree: i64 = self.numerator_zeros.iter().map(|w| w.mult as i64).sum::<i64>()
            - self.denominator_zeros.iter().map(|w| w.mult as i64).sum::<i64>();
        let scale = self.scale * s.powi(degree as i32);
        Ok(Self {
            numerator_zeros: self.numerator_zeros.iter().map(shrink).collect(),
            denominator_zeros: self.denominator_zeros.iter().map(shrink).collect(),
            scale,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_function_spec().to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::try_from(&FunctionSpec::from_json(text)?)
    }
}

/// Rational specs convert directly, with the gauge folded into the scale.
/// ρ-scaled factors convert too: `ρ(z − a)/(ρ² − āz) = −(ρ/ā)(z − a)/(z − ρ²/ā)`,
/// and `z/ρ` when `a = 0`.
impl TryFrom<&FunctionSpec> for RationalFunctionSpec {
    type Error = Error;

    fn try_from(spec: &FunctionSpec) -> Result<Self> {
        let SpecKind::Rational { zeros, poles, scale } = &spec.kind else {
            return Err(Error::Data(format!("expected a rational spec, got {}", spec.kind_name())));
        };
        let mut zeros = zeros.clone();
        let mut poles = poles.clone();
        let mut scale = scale * Complex64::cis(spec.gauge_phase);
        for rf in &spec.rho_factors {
            zeros.push(WeightedPoint::new(rf.zero, rf.mult));
            match rf.pole() {
                Some(p) if rf.zero.norm() > PROXIMITY_TOL => {
                    poles.push(WeightedPoint::new(p, rf.mult));
                    scale *= (-rf.rho / rf.zero.conj()).powu(rf.mult);
                }
                _ => scale /= rf.rho.powi(rf.mult as i32),
            }
        }
        let merged = FunctionSpec::rational(zeros, poles, scale)?;
        let SpecKind::Rational { zeros, poles, scale } = merged.kind else {
            unreachable!("rational constructor returns a rational spec")
        };
        Ok(Self { numerator_zeros: zeros, denominator_zeros: poles, scale })
    }
}

/// `m_F(z₀)`: zero order minus pole order at `z₀`.
pub fn multiplicity(spec: &RationalFunctionSpec, z0: Complex64) -> i64 {
    let count = |list: &[WeightedPoint]| -> i64 {
        list.iter().filter(|w| (w.point - z0).norm() <= MERGE_TOL).map(|w| w.mult as i64).sum()
    };
    count(&spec.numerator_zeros) - count(&spec.denominator_zeros)
}
