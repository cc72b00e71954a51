//! Seeded random streams.
//!
//! Every stochastic component draws from ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`. ChaCha8's output is specified at the bit
//! level, so a given seed replays the same stream on every platform. Uniform
//! reals are produced as `lo + (hi - lo) * u` where `u` is the 53-bit
//! `[0, 1)` draw from `Rng::gen::<f64>()`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type PlannerRng = ChaCha8Rng;

/// Stream id used by the random-environment generator, so that an
/// environment and a planner seeded with the same integer do not share draws.
pub const ENVIRONMENT_STREAM: u64 = 0x0065_6e76_6972_6f6e;

pub fn seeded(seed: u64) -> PlannerRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn seeded_stream(seed: u64, stream: u64) -> PlannerRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[inline]
pub fn uniform(rng: &mut PlannerRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}
