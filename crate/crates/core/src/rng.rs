//! Counter-based SplitMix64 stream.
//!
//! Draw number `i` (starting at 0) of a stream with seed `s` is
//! `mix(s + (i + 1) * 0x9E3779B97F4A7C15)` with the standard SplitMix64
//! finalizer. Uniform reals take the top 53 bits. The scheme is small enough to
//! reimplement in any language, which keeps generated corpora reproducible
//! outside Rust.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SeedStream {
    seed: u64,
    counter: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Independent stream for a labelled sub-task (trial index, component).
    pub fn fork(&self, label: u64) -> Self {
        Self::new(mix(self.seed ^ mix(label.wrapping_add(GOLDEN))))
    }

    pub fn draws(&self) -> u64 {
        self.counter
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `0..=max`.
    pub fn int_upto(&mut self, max: usize) -> usize {
        ((self.uniform() * (max as f64 + 1.0)) as usize).min(max)
    }

    /// Uniform point of the closed disc of the given radius.
    pub fn in_disc(&mut self, radius: f64) -> num_complex::Complex64 {
        let r = radius * self.uniform().sqrt();
        num_complex::Complex64::from_polar(r, std::f64::consts::TAU * self.uniform())
    }
}
