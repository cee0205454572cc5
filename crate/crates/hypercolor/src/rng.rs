//! Seeded random streams. Every replica gets its own ChaCha20 stream id
//! under the run's seed, so results do not depend on thread scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const RNG_NAME: &str = "ChaCha20";

pub fn stream(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
