use super::{check_finite, WeightedPoint};
use crate::{Error, Result};
use num_complex::Complex64;

/// `e^{iγ} z^k ∏ ((a/|a|)(a − z)/(1 − ā z))^m` over finitely many zeros
/// `0 < |a| < 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiniteBlaschkeProduct {
    pub origin_order: u32,
    zeros: Vec<WeightedPoint>,
    pub gauge_phase: f64,
}

impl FiniteBlaschkeProduct {
    pub fn new(origin_order: u32, zeros: Vec<WeightedPoint>, gauge_phase: f64) -> Result<Self> {
        for z in &zeros {
            check_finite(z.point, "Blaschke zero")?;
            let r = z.point.norm();
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Data(format!(
                    "Blaschke zero {} must satisfy 0 < |a| < 1 (origin zeros go in origin_order)",
                    z.point
                )));
            }
            if z.mult == 0 {
                return Err(Error::Data(format!("Blaschke zero {} has multiplicity 0", z.point)));
            }
        }
        if !gauge_phase.is_finite() {
            return Err(Error::Data("Blaschke gauge phase is not finite".into()));
        }
        Ok(Self { origin_order, zeros, gauge_phase })
    }

    pub fn zeros(&self) -> &[WeightedPoint] {
        &self.zeros
    }

    /// Total number of zeros in the disc, origin included.
    pub fn degree(&self) -> u32 {
        self.origin_order + self.zeros.iter().map(|z| z.mult).sum::<u32>()
    }

    /// Defined on the whole plane except the reflected poles `1/ā`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::cis(self.gauge_phase) * z.powu(self.origin_order);
        for wp in &self.zeros {
            let a = wp.point;
            let f = (a / a.norm()) * (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z);
            acc *= f.powu(wp.mult);
        }
        acc
    }

    pub fn log_modulus(&self, z: Complex64) -> f64 {
        let mut acc = if self.origin_order == 0 { 0.0 } else { self.origin_order as f64 * z.norm().ln() };
        for wp in &self.zeros {
            let a = wp.point;
            let f = ((a - z).norm() / (Complex64::new(1.0, 0.0) - a.conj() * z).norm()).ln();
            acc += wp.mult as f64 * f;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sample() -> FiniteBlaschkeProduct {
        FiniteBlaschkeProduct::new(
            2,
            vec![
                WeightedPoint::simple(Complex64::new(0.5, 0.0)),
                WeightedPoint::new(Complex64::new(-0.2, 0.7), 2),
            ],
            0.3,
        )
        .unwrap()
    }

    #[test]
    fn vanishes_at_its_zero() {
        let b = FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(Complex64::new(0.5, 0.0))], 0.0).unwrap();
        assert_eq!(b.eval(Complex64::new(0.5, 0.0)).norm(), 0.0);
    }

    #[test]
    fn unimodular_on_circle_and_contracting_inside() {
        let b = sample();
        for j in 0..256 {
            let z = Complex64::cis(TAU * j as f64 / 256.0);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-13);
            for r in [0.1, 0.5, 0.9, 0.999] {
                assert!(b.eval(z * r).norm() < 1.0);
            }
        }
    }

    #[test]
    fn rejects_zeros_outside_punctured_disc() {
        assert!(FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(Complex64::new(0.0, 0.0))], 0.0).is_err());
        assert!(FiniteBlaschkeProduct::new(0, vec![WeightedPoint::simple(Complex64::new(1.0, 0.0))], 0.0).is_err());
        assert!(FiniteBlaschkeProduct::new(0, vec![WeightedPoint::new(Complex64::new(0.3, 0.0), 0)], 0.0).is_err());
    }

    #[test]
    fn log_modulus_matches_eval() {
        let b = sample();
        let z = Complex64::new(0.31, -0.44);
        assert!((b.log_modulus(z) - b.eval(z).norm().ln()).abs() < 1e-13);
    }
}
