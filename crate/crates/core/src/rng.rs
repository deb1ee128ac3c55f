//! Seeded random streams.
//!
//! Every random quantity in the crate comes from a [`ChaCha8Rng`] keyed by
//! `ChaCha8Rng::seed_from_u64(s)`, where `s` is a sub-seed derived from a
//! root seed and a path of integer tags:
//!
//! ```text
//! s_0 = root
//! s_{k+1} = splitmix64(s_k ^ splitmix64(tag_k + 0x9E3779B97F4A7C15 * (k + 1)))
//! ```
//!
//! ChaCha is counter based, so distinct keys give independent streams, and
//! both SplitMix64 and ChaCha8 are defined on integers only. Outputs are
//! therefore identical on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-seed from `root` by walking `path`.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    path.iter().enumerate().fold(root, |acc, (k, &tag)| {
        let salt = splitmix64(tag.wrapping_add(GOLDEN_GAMMA.wrapping_mul(k as u64 + 1)));
        splitmix64(acc ^ salt)
    })
}

pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
