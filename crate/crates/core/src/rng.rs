//! The project-wide pseudo-random stream.
//!
//! xoshiro256++ seeded through SplitMix64, uniform doubles from the top 53
//! bits, normals from the Marsaglia polar method. All three are fixed so
//! generated data and artificial points reproduce across platforms.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub const GENERATOR: &str = "xoshiro256++/splitmix64-seeded";
pub const UNIFORM_TRANSFORM: &str = "top-53-bits";
pub const NORMAL_TRANSFORM: &str = "marsaglia-polar";

#[derive(Debug, Clone)]
pub struct Stream {
    inner: Xoshiro256PlusPlus,
    spare_normal: Option<f64>,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    /// A stream for `seed` advanced by `2^128` steps, statistically
    /// independent of `Stream::new(seed)` for any realistic draw count.
    pub fn jumped(seed: u64) -> Self {
        let mut inner = Xoshiro256PlusPlus::seed_from_u64(seed);
        inner.jump();
        Self {
            inner,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[lo, hi]`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        (lo + (hi - lo) * self.uniform()).clamp(lo, hi)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * f);
                return u * f;
            }
        }
    }
}
