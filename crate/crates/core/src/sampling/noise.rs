use super::ModulusTrace;
use crate::rng::SeedStream;
use crate::{Error, Result};

/// Multiplicative noise `v (1 + level · u)`, `u` uniform in `[−1, 1]`,
/// clamped at zero. Deterministic per seed.
pub fn add_noise(trace: &ModulusTrace, level: f64, seed: u64) -> Result<ModulusTrace> {
    if !(level.is_finite() && level >= 0.0) {
        return Err(Error::Data(format!("noise level must be nonnegative, got {level}")));
    }
    if level == 0.0 {
        return Ok(trace.clone());
    }
    let mut rng = SeedStream::new(seed);
    let values = trace
        .values()
        .iter()
        .map(|v| (v * (1.0 + level * rng.uniform_in(-1.0, 1.0))).max(0.0))
        .collect();
    trace.with_values(values)
}
