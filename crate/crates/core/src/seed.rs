//! Position-based seed derivation.
//!
//! Every random draw in a sweep is keyed by where it sits in the experiment
//! (master seed, realization index, purpose), never by which worker runs it.
//! That keeps results identical for any worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sub-stream identifiers within one keyed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Angles = 0,
    Gains = 1,
    Shadowing = 2,
    Bits = 3,
    Noise = 4,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold a list of indices into a 64-bit key under `master`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &x| splitmix64(acc ^ splitmix64(x)))
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
