//! Seed splitting.
//!
//! A run is driven by one 64-bit seed. Every consumer derives its own stream
//! with [`StreamSeed::derive`], keyed by a static label and an index (round,
//! ring, trial, ...). Derivation is a SplitMix64 finalizer over the parent
//! seed, an FNV-1a hash of the label and the index, so streams do not depend on
//! the order in which they are created.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StreamSeed(pub u64);

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xCBF2_9CE4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

impl StreamSeed {
    pub fn derive(self, label: &str, index: u64) -> StreamSeed {
        StreamSeed(splitmix(splitmix(self.0 ^ fnv1a(label)) ^ splitmix(index)))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}
