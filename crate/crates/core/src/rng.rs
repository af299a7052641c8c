//! Seeded random streams.
//!
//! Every random choice in the crate draws from ChaCha8 (`rand_chacha`), a
//! counter-based generator: `seed_from_u64(seed)` fixes the key and
//! `set_stream(id)` selects one of 2⁶⁴ independent streams under that key.
//! Replicates, sweep points and cohort draws each take their own stream id,
//! so results do not depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, id: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Combines a base stream id with a sub-index, for nested replicate loops.
pub fn substream(base: u64, index: u64) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)
}
