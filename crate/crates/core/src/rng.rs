//! Deterministic random streams.
//!
//! Every stream is a [`ChaCha8Rng`] seeded through `SeedableRng::seed_from_u64`,
//! which expands the 64-bit seed with PCG32. Both steps are value-stable across
//! `rand_chacha` releases, so a seed pins the full draw sequence.
//!
//! Replication `r` of an experiment with base seed `b` draws from
//!
//! ```text
//! seed_from_u64(b ^ REPLICATION_MULTIPLIER.wrapping_mul(r + 1))
//! ```
//!
//! and the bandit instance comes from `seed_from_u64(instance_seed)`. Changing
//! either rule changes every published number, and requires a version bump.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Odd 64-bit multiplier (the golden-ratio constant) used to spread replication indices.
pub const REPLICATION_MULTIPLIER: u64 = 0x9E37_79B9_7F4A_7C15;

/// An RNG wrapper that counts how many words the wrapped generator produced.
///
/// `next_u32` and `next_u64` each count as one word; `fill_bytes` counts one
/// word per started 8-byte chunk.
#[derive(Debug, Clone)]
pub struct CountingRng<R> {
    inner: R,
    words: u64,
}

impl<R> CountingRng<R> {
    pub fn new(inner: R) -> Self {
        Self { inner, words: 0 }
    }

    /// Words consumed so far.
    pub fn words(&self) -> u64 {
        self.words
    }

    pub fn into_inner(self) -> R {
        self.inner
    }
}

impl<R: RngCore> RngCore for CountingRng<R> {
    fn next_u32(&mut self) -> u32 {
        self.words += 1;
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.words += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.words += dst.len().div_ceil(8) as u64;
        self.inner.fill_bytes(dst)
    }
}

/// The stream type used throughout the crate.
pub type Stream = CountingRng<ChaCha8Rng>;

/// Stream seeded directly from a 64-bit seed.
pub fn stream_from_seed(seed: u64) -> Stream {
    CountingRng::new(ChaCha8Rng::seed_from_u64(seed))
}

/// Seed material for replication `r` under `base_seed`.
pub fn replication_seed(base_seed: u64, replication: u64) -> u64 {
    base_seed ^ REPLICATION_MULTIPLIER.wrapping_mul(replication.wrapping_add(1))
}

/// Independent stream owned by replication `r`.
pub fn replication_stream(base_seed: u64, replication: u64) -> Stream {
    stream_from_seed(replication_seed(base_seed, replication))
}

/// Stream used to draw a bandit instance.
pub fn instance_stream(instance_seed: u64) -> Stream {
    stream_from_seed(instance_seed)
}
