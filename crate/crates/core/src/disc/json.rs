//! JSON document for [`FunctionSpec`].

use super::{
    Atom, AtomicSingularInner, Factored, FiniteBlaschkeProduct, FunctionSpec, PowerSeries, RhoFactor, SpecKind,
    TrigPolyLogModulus, WeightedPoint,
};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    PowerSeries,
    Rational,
    Factored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub re: f64,
    pub im: f64,
    pub mult: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub theta: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoFactorDoc {
    pub re: f64,
    pub im: f64,
    pub rho: f64,
    pub mult: u32,
}

/// Wire form of a [`FunctionSpec`]. Fields that do not belong to the declared
/// kind must be absent; unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub kind: KindTag,
    #[serde(default)]
    pub gauge_phase: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_coeffs: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<PointDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<Vec<PointDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<TrigPolyLogModulus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms_num: Option<Vec<AtomDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms_den: Option<Vec<AtomDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_factors: Option<Vec<RhoFactorDoc>>,
}

fn points(list: &[WeightedPoint]) -> Vec<PointDoc> {
    list.iter().map(|w| PointDoc { re: w.point.re, im: w.point.im, mult: w.mult }).collect()
}

fn atoms(s: &AtomicSingularInner) -> Vec<AtomDoc> {
    s.atoms().iter().map(|a| AtomDoc { theta: a.theta, mass: a.mass }).collect()
}

impl From<&FunctionSpec> for SpecDocument {
    fn from(spec: &FunctionSpec) -> Self {
        let mut doc = SpecDocument {
            kind: KindTag::PowerSeries,
            gauge_phase: spec.gauge_phase,
            origin_order: None,
            exponent_coeffs: None,
            zeros: None,
            poles: None,
            scale: None,
            outer: None,
            atoms_num: None,
            atoms_den: None,
            rho_factors: None,
        };
        match &spec.kind {
            SpecKind::PowerSeries { origin_order, exponent } => {
                doc.origin_order = Some(*origin_order);
                doc.exponent_coeffs = Some(exponent.coefficients.iter().map(|c| [c.re, c.im]).collect());
            }
            SpecKind::Rational { zeros, poles, scale } => {
                doc.kind = KindTag::Rational;
                doc.zeros = Some(points(zeros));
                doc.poles = Some(points(poles));
                doc.scale = Some(ComplexDoc { re: scale.re, im: scale.im });
            }
            SpecKind::Factored(f) => {
                doc.kind = KindTag::Factored;
                doc.gauge_phase += f.blaschke.gauge_phase;
                doc.origin_order = Some(f.blaschke.origin_order);
                doc.zeros = Some(points(f.blaschke.zeros()));
                doc.outer = Some(f.outer.clone());
                doc.atoms_num = Some(atoms(&f.numerator_atoms));
                doc.atoms_den = Some(atoms(&f.denominator_atoms));
            }
        }
        if !spec.rho_factors.is_empty() {
            doc.rho_factors = Some(
                spec.rho_factors
                    .iter()
                    .map(|r| RhoFactorDoc { re: r.zero.re, im: r.zero.im, rho: r.rho, mult: r.mult })
                    .collect(),
            );
        }
        doc
    }
}

fn to_points(list: Vec<PointDoc>) -> Vec<WeightedPoint> {
    list.into_iter().map(|p| WeightedPoint::new(Complex64::new(p.re, p.im), p.mult)).collect()
}

fn to_atoms(list: Option<Vec<AtomDoc>>) -> Result<AtomicSingularInner> {
    AtomicSingularInner::new(
        list.unwrap_or_default().into_iter().map(|a| Atom { theta: a.theta, mass: a.mass }).collect(),
    )
}

impl TryFrom<SpecDocument> for FunctionSpec {
    type Error = Error;

    fn try_from(doc: SpecDocument) -> Result<Self> {
        let stray = |name: &str| Err(Error::Data(format!("field `{name}` does not apply to kind {:?}", doc.kind)));
        let mut spec = match doc.kind {
            KindTag::PowerSeries => {
                if doc.zeros.is_some() || doc.poles.is_some() || doc.scale.is_some() {
                    return stray("zeros/poles/scale");
                }
                if doc.outer.is_some() || doc.atoms_num.is_some() || doc.atoms_den.is_some() {
                    return stray("outer/atoms");
                }
                let coeffs = doc.exponent_coeffs.unwrap_or_default();
                FunctionSpec::power_series(
                    doc.origin_order.unwrap_or(0),
                    PowerSeries::new(coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
                )?
            }
            KindTag::Rational => {
                if doc.origin_order.is_some() || doc.exponent_coeffs.is_some() {
                    return stray("origin_order/exponent_coeffs");
                }
                if doc.outer.is_some() || doc.atoms_num.is_some() || doc.atoms_den.is_some() {
                    return stray("outer/atoms");
                }
                let scale = doc.scale.map(|s| Complex64::new(s.re, s.im)).unwrap_or(Complex64::new(1.0, 0.0));
                FunctionSpec::rational(
                    to_points(doc.zeros.unwrap_or_default()),
                    to_points(doc.poles.unwrap_or_default()),
                    scale,
                )?
            }
            KindTag::Factored => {
                if doc.exponent_coeffs.is_some() || doc.poles.is_some() || doc.scale.is_some() {
                    return stray("exponent_coeffs/poles/scale");
                }
                let blaschke = FiniteBlaschkeProduct::new(
                    doc.origin_order.unwrap_or(0),
                    to_points(doc.zeros.unwrap_or_default()),
                    0.0,
                )?;
                let outer = doc.outer.unwrap_or_default();
                let outer = TrigPolyLogModulus::new(outer.mean, outer.cos_coeffs, outer.sin_coeffs)?;
                FunctionSpec {
                    gauge_phase: 0.0,
                    kind: SpecKind::Factored(Factored {
                        blaschke,
                        outer,
                        numerator_atoms: to_atoms(doc.atoms_num)?,
                        denominator_atoms: to_atoms(doc.atoms_den)?,
                    }),
                    rho_factors: Vec::new(),
                }
            }
        };
        if !doc.gauge_phase.is_finite() {
            return Err(Error::Data("gauge_phase is not finite".into()));
        }
        spec.gauge_phase = doc.gauge_phase;
        for r in doc.rho_factors.unwrap_or_default() {
            spec.rho_factors.push(RhoFactor::new(Complex64::new(r.re, r.im), r.rho, r.mult)?);
        }
        Ok(spec)
    }
}

impl FunctionSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecDocument::from(self)).expect("spec documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| Error::Data(format!("malformed spec JSON: {e}")))?;
        FunctionSpec::try_from(doc)
    }
}
