//! Seed splitting.
//!
//! Every randomized routine receives a single `u64`. Sub-builders get their
//! own seed from [`SeedStream::fork`], which mixes the parent seed with a
//! counter through SplitMix64. The i-th fork of a given seed is therefore
//! fixed, so any sub-builder can be replayed in isolation from
//! `(parent seed, fork index)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th child of `seed`.
pub fn derive(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct SeedStream {
    seed: u64,
    forks: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream { seed, forks: 0 }
    }

    pub fn fork(&mut self) -> u64 {
        let s = derive(self.seed, self.forks);
        self.forks += 1;
        s
    }

    pub fn fork_rng(&mut self) -> Rng {
        rng(self.fork())
    }
}
