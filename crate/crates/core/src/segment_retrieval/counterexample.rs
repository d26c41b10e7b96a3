use crate::disc::{FunctionSpec, SpecKind};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A companion `g = f · e^{iλ z^q}` with the same modulus as `f` on both
/// segments of the `α = πp/q` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub spec: FunctionSpec,
    pub alpha: f64,
    /// `λ = 0`: `g` is `f` itself.
    pub degenerate: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// On real `t`, `Re(iλ t^q) = 0`, and on `e^{iα} t` with `qα = πp`,
/// `Re(iλ t^q e^{iπp}) = 0` as well, so both traces are unchanged while
/// `g/f = e^{iλ z^q}` is not constant.
pub fn rational_alpha_counterexample(spec: &FunctionSpec, p: i64, q: u32, lambda: f64) -> Result<Counterexample> {
    if q == 0 {
        return Err(Error::Data("q must be positive".into()));
    }
    if gcd(p.unsigned_abs(), q as u64) != 1 {
        return Err(Error::Data(format!("p = {p} and q = {q} are not coprime")));
    }
    if !lambda.is_finite() {
        return Err(Error::Data("lambda is not finite".into()));
    }
    let alpha = PI * p as f64 / q as f64;
    let SpecKind::PowerSeries { origin_order, exponent } = &spec.kind else {
        return Err(Error::Data("the counterexample is built from a power-series spec".into()));
    };
    if lambda == 0.0 {
        return Ok(Counterexample { spec: spec.clone(), alpha, degenerate: true });
    }
    let mut exponent = exponent.clone();
    exponent.add_term(q as usize, Complex64::new(0.0, lambda));
    let g = FunctionSpec {
        kind: SpecKind::PowerSeries { origin_order: *origin_order, exponent },
        ..spec.clone()
    };
    Ok(Counterexample { spec: g, alpha, degenerate: false })
}
