//! Per-sample random streams.
//!
//! Generator: ChaCha with 8 rounds (`rand_chacha` 0.9). The key comes from
//! `SeedableRng::seed_from_u64(seed)` and sample `i` reads stream `i`, so
//! sample `i` sees the same numbers whether samples are drawn serially, in
//! parallel or out of order.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifies the generator and stream layout in reports.
pub const RNG_NAME: &str = "chacha8/rand_chacha-0.9/seed_from_u64/stream=sample-index";

#[derive(Debug, Clone)]
pub struct SampleStream {
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64, sample: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Poisson variate by sequential inversion of the CDF. Callers keep the
    /// mean small enough that `exp(-mean)` does not underflow.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        let u = self.uniform();
        let mut k = 0u64;
        let mut p = libm::exp(-mean);
        let mut cdf = p;
        while u >= cdf {
            k += 1;
            p *= mean / k as f64;
            if p == 0.0 {
                break;
            }
            cdf += p;
        }
        k
    }
}
