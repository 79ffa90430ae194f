//! Seeded randomness for the graph generators and other sampling.
//!
//! Every generator draws from ChaCha8 keyed with the 64-bit seed in bytes
//! 0..8 and the replica index in bytes 8..16 (both little-endian, remaining
//! key bytes zero), on a stream number fixed per generator family
//! ([`STREAM_ER`], [`STREAM_BA`], [`STREAM_WS`]). Values are derived from the
//! raw 64-bit outputs as follows, so other implementations can reproduce
//! every graph:
//!
//! * a float in `[0, 1)` is the top 53 bits of one output times `2^-53`;
//! * an integer in `[0, bound)` uses Lemire's widening multiply: the high
//!   word of `x * bound`, redrawing while the low word is below
//!   `2^64 mod bound`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const STREAM_ER: u64 = 1;
pub const STREAM_BA: u64 = 2;
pub const STREAM_WS: u64 = 3;
/// Picking endpoints or other sample choices outside the generators.
pub const STREAM_PICK: u64 = 4;

#[derive(Clone, Debug)]
pub struct StreamRng(ChaCha8Rng);

impl StreamRng {
    pub fn new(seed: u64, replica: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&replica.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream);
        StreamRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform integer in `[0, bound)`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = u128::from(self.next_u64()) * u128::from(bound);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }
}
