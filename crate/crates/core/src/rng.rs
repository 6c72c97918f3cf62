//! Deterministic random streams.
//!
//! Every stochastic routine in this crate draws from an [`RngStream`], a
//! seeded ChaCha12 generator. The same seed always reproduces the same draw
//! sequence, on every platform, so a `(instance, budget, seed)` triple fully
//! determines an algorithm run.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// FNV-1a offset basis.
const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
/// FNV-1a prime.
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Stable 64-bit FNV-1a over raw bytes. Used to derive seeds; independent of
/// `std` hasher internals so derived seeds never change between builds.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Incremental seed derivation from heterogeneous parts.
#[derive(Debug, Clone, Copy)]
pub struct SeedMix(u64);

impl SeedMix {
    pub fn new() -> Self {
        SeedMix(FNV_OFFSET)
    }

    pub fn push_u64(mut self, v: u64) -> Self {
        for b in v.to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
        self
    }

    pub fn push_str(mut self, s: &str) -> Self {
        for &b in s.as_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
        // Length terminator keeps "ab"+"c" distinct from "a"+"bc".
        self.push_u64(s.len() as u64)
    }

    pub fn finish(self) -> u64 {
        self.0
    }
}

impl Default for SeedMix {
    fn default() -> Self {
        Self::new()
    }
}

/// A seeded, reproducible pseudo-random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent stream from this stream's seed and an index.
    /// Unlike drawing from `self`, this does not advance the parent stream.
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream::new(SeedMix::new().push_u64(self.seed).push_u64(index).finish())
    }

    /// Draws `k` distinct values from `pool` by partial Fisher-Yates; the
    /// returned order is the draw order. `k` is clamped to `pool.len()`.
    pub fn sample_without_replacement(&mut self, pool: &[usize], k: usize) -> Vec<usize> {
        let mut v = pool.to_vec();
        let k = k.min(v.len());
        for i in 0..k {
            let j = i + self.inner.gen_range(0..v.len() - i);
            v.swap(i, j);
        }
        v.truncate(k);
        v
    }

    /// Uniform shuffle of `0..n`.
    pub fn shuffled_indices(&mut self, n: usize) -> Vec<usize> {
        let pool: Vec<usize> = (0..n).collect();
        self.sample_without_replacement(&pool, n)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Uniform draw from `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw from `[-width, width]`.
    pub fn symmetric(&mut self, width: f64) -> f64 {
        (self.inner.gen::<f64>() * 2.0 - 1.0) * width
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
