//! Seed handling. Every random procedure takes a `u64` seed; replicate `i` of
//! a run with seed `s` uses ChaCha stream `i` under key `s`, so replicate
//! streams are independent and do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn replicate_rng(seed: u64, replicate: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate.wrapping_add(1));
    rng
}
