use super::{SegmentPair, SegmentSpec};
use crate::{Error, Result};
use num_complex::Complex64;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentSide {
    /// The base segment `I`.
    Base,
    /// The rotated segment `I_α`.
    Rotated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceDomain {
    /// Parameters are canonical `t ∈ (−1, 1)`; the physical point is
    /// `z₀ + r e^{iβ} t` on the base or `z₀ + r e^{iβ} e^{iα} t` on the
    /// rotated segment.
    Segment { pair: SegmentPair, side: SegmentSide },
    /// Parameters are angles `θ ∈ [0, 2π)` on `|z| = rho`.
    Circle { rho: f64 },
}

/// Sampled `|f|` along a segment or circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTrace {
    domain: TraceDomain,
    parameters: Vec<f64>,
    values: Vec<f64>,
}

impl ModulusTrace {
    pub fn new(domain: TraceDomain, parameters: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if parameters.len() != values.len() {
            return Err(Error::Data(format!(
                "trace has {} parameters but {} values",
                parameters.len(),
                values.len()
            )));
        }
        if parameters.iter().any(|p| !p.is_finite()) {
            return Err(Error::Data("trace parameters must be finite".into()));
        }
        if let Some(w) = parameters.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::Data(format!("trace parameters not strictly increasing at index {}", w + 1)));
        }
        if let Some(j) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Data(format!("trace value {j} is negative or not finite: {}", values[j])));
        }
        Ok(Self { domain, parameters, values })
    }

    pub fn domain(&self) -> &TraceDomain {
        &self.domain
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Circle radius, if this is a circle trace.
    pub fn rho(&self) -> Option<f64> {
        match self.domain {
            TraceDomain::Circle { rho } => Some(rho),
            TraceDomain::Segment { .. } => None,
        }
    }

    /// Same domain and parameters, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.domain, self.parameters.clone(), values)
    }

    /// Serializes to the trace CSV format: `#` header lines describing the
    /// domain, then `param,value` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.domain {
            TraceDomain::Circle { rho } => {
                out.push_str("# domain=circle\n");
                let _ = writeln!(out, "# rho={rho:?}");
            }
            TraceDomain::Segment { pair, side } => {
                out.push_str("# domain=segment\n");
                let b = &pair.base;
                let _ = writeln!(
                    out,
                    "# midpoint={},half_length={:?},beta={:?},alpha={:?}",
                    format_complex(b.midpoint),
                    b.half_length,
                    b.direction_angle,
                    pair.rotation_angle
                );
                let _ = writeln!(out, "# side={}", if *side == SegmentSide::Base { "I" } else { "Ialpha" });
            }
        }
        for (p, v) in self.parameters.iter().zip(&self.values) {
            let _ = writeln!(out, "{p:.16e},{v:.16e}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut domain_kind: Option<String> = None;
        let mut rho: Option<f64> = None;
        let mut geometry: Option<(Complex64, f64, f64, f64)> = None;
        let mut side = SegmentSide::Base;
        let mut parameters = Vec::new();
        let mut values = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                for field in header.split(',') {
                    let Some((key, value)) = field.trim().split_once('=') else { continue };
                    let (key, value) = (key.trim(), value.trim());
                    match key {
                        "domain" => domain_kind = Some(value.to_string()),
                        "rho" => rho = Some(parse_f64(value, lineno)?),
                        "midpoint" => {
                            let g = geometry.get_or_insert((Complex64::new(0.0, 0.0), 1.0, 0.0, 0.0));
                            g.0 = parse_complex(value)
                                .ok_or_else(|| Error::Data(format!("line {}: bad midpoint `{value}`", lineno + 1)))?;
                        }
                        "half_length" => geometry.get_or_insert((Complex64::new(0.0, 0.0), 1.0, 0.0, 0.0)).1 = parse_f64(value, lineno)?,
                        "beta" => geometry.get_or_insert((Complex64::new(0.0, 0.0), 1.0, 0.0, 0.0)).2 = parse_f64(value, lineno)?,
                        "alpha" => geometry.get_or_insert((Complex64::new(0.0, 0.0), 1.0, 0.0, 0.0)).3 = parse_f64(value, lineno)?,
                        "side" => {
                            side = match value {
                                "I" => SegmentSide::Base,
                                "Ialpha" => SegmentSide::Rotated,
                                other => return Err(Error::Data(format!("line {}: unknown side `{other}`", lineno + 1))),
                            }
                        }
                        _ => {}
                    }
                }
                continue;
            }
            if line.eq_ignore_ascii_case("param,value") {
                continue;
            }
            let (p, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Data(format!("line {}: expected `param,value`", lineno + 1)))?;
            parameters.push(parse_f64(p.trim(), lineno)?);
            values.push(parse_f64(v.trim(), lineno)?);
        }
        let domain = match domain_kind.as_deref() {
            Some("circle") => TraceDomain::Circle {
                rho: rho.ok_or_else(|| Error::Data("circle trace without `# rho=` header".into()))?,
            },
            Some("segment") => {
                let (mid, half, beta, alpha) =
                    geometry.ok_or_else(|| Error::Data("segment trace without geometry header".into()))?;
                let pair = SegmentPair::new(SegmentSpec::new(mid, half, beta)?, alpha)?;
                TraceDomain::Segment { pair, side }
            }
            Some(other) => return Err(Error::Data(format!("unknown trace domain `{other}`"))),
            None => return Err(Error::Data("trace CSV lacks a `# domain=` header".into())),
        };
        Self::new(domain, parameters, values)
    }
}

fn parse_f64(s: &str, lineno: usize) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Data(format!("line {}: `{s}` is not a number", lineno + 1)))
}

fn format_complex(z: Complex64) -> String {
    format!("{:?}{:+?}i", z.re, z.im)
}

/// Parses `a+bi` / `a-bi` as written by [`format_complex`].
fn parse_complex(s: &str) -> Option<Complex64> {
    let body = s.strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'))?;
    let re = body[..split].parse().ok()?;
    let im = body[split..].trim_start_matches('+').parse().ok()?;
    Some(Complex64::new(re, im))
}
