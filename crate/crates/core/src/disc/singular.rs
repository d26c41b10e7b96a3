use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// A boundary point mass `mass · δ_{e^{iθ}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub theta: f64,
    pub mass: f64,
}

/// Singular inner function of a finite atomic measure:
/// `S(z) = exp(Σ m_j (z + ζ_j)/(z − ζ_j))`, `ζ_j = e^{iθ_j}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomicSingularInner {
    atoms: Vec<Atom>,
}

impl AtomicSingularInner {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let atoms = atoms
            .into_iter()
            .map(|a| {
                if !(a.mass.is_finite() && a.mass > 0.0) {
                    return Err(Error::Data(format!("atom mass must be positive, got {}", a.mass)));
                }
                if !a.theta.is_finite() {
                    return Err(Error::Data("atom angle is not finite".into()));
                }
                Ok(Atom { theta: a.theta.rem_euclid(TAU), mass: a.mass })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { atoms })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Exponent `Σ m (z + ζ)/(z − ζ)`; its real part is `Σ m (|z|² − 1)/|z − ζ|²`.
    pub fn exponent(&self, z: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| {
                let zeta = Complex64::cis(a.theta);
                a.mass * (z + zeta) / (z - zeta)
            })
            .sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.exponent(z).exp()
    }

    pub fn log_modulus(&self, z: Complex64) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.mass * (z.norm_sqr() - 1.0) / (z - Complex64::cis(a.theta)).norm_sqr())
            .sum()
    }

    /// Angular distance from `theta` to the nearest atom (∞ when empty).
    pub fn nearest_atom_distance(&self, theta: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| super::angle_distance(a.theta, theta))
            .fold(f64::INFINITY, f64::min)
    }
}
