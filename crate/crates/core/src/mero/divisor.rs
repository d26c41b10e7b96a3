use super::MERGE_TOL;
use crate::disc::merge_signed;
use num_complex::Complex64;
use serde::Serialize;

/// Finitely many points with nonzero integer multiplicities: zeros positive,
/// poles negative. Points closer than [`MERGE_TOL`] are merged; entries are
/// kept sorted by real then imaginary part, so equality ignores input order.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Divisor {
    entries: Vec<(Complex64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorOp {
    Product,
    Quotient,
}

impl Divisor {
    pub fn new(points: Vec<(Complex64, i64)>) -> Self {
        let mut entries = merge_signed(points, MERGE_TOL);
        entries.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        Self { entries }
    }

    pub fn entries(&self) -> &[(Complex64, i64)] {
        &self.entries
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.entries.iter().map(|(p, _)| *p)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Multiplicity at `z`; 0 when `z` is not a divisor point.
    pub fn multiplicity(&self, z: Complex64) -> i64 {
        self.entries.iter().filter(|(p, _)| (*p - z).norm() <= MERGE_TOL).map(|(_, m)| m).sum()
    }

    /// Total degree: zeros minus poles.
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

/// Divisor of `F·G` (`Product`) or `F/G` (`Quotient`).
pub fn divisor_arithmetic(f: &Divisor, g: &Divisor, op: DivisorOp) -> Divisor {
    let sign = match op {
        DivisorOp::Product => 1,
        DivisorOp::Quotient => -1,
    };
    let points = f.entries.iter().copied().chain(g.entries.iter().map(|&(p, m)| (p, sign * m))).collect();
    Divisor::new(points)
}
