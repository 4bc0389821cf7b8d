//! Seeded randomness.
//!
//! Every random stream in the crate is a [`ChaCha8Rng`] (portable, fixed
//! algorithm). A stream is addressed by `(seed, stream)`: the seed is expanded
//! with `SeedableRng::seed_from_u64` and the stream id selects one of ChaCha's
//! 2^64 independent streams. Per-trial and per-player sub-seeds are derived by
//! counter through [`derive_seed`].
//!
//! Random graphs decide each vertex pair with [`pair_hash`], a stateless
//! SplitMix64-style mixer, so a pair can be queried without generating the
//! whole graph.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream ids reserved for the two sides of a game.
pub const PAINTER_STREAM: u64 = 1;
pub const CORRECTOR_STREAM: u64 = 2;

pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sub-seed number `index` of `master`: the `index`-th output of stream 0.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_word_pos(2 * index as u128);
    rand::RngCore::next_u64(&mut rng)
}

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform 64-bit value attached to the unordered pair `{u, v}` under `seed`.
#[inline]
pub fn pair_hash(seed: u64, u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    mix64(mix64(seed) ^ ((a as u64) << 32 | b as u64))
}

/// Threshold `t` such that `x < t` for a uniform `x: u64` has probability `p`.
/// `p = 1` is handled by callers (`u64::MAX` would miss one value).
pub fn bernoulli_threshold(p: f64) -> u64 {
    if p <= 0.0 {
        0
    } else if p >= 1.0 {
        u64::MAX
    } else {
        (p * 18_446_744_073_709_551_616.0) as u64
    }
}
