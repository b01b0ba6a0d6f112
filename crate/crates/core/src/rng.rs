//! Seed derivation. Every random stream in a run is a ChaCha8 generator keyed
//! by (master seed, island, purpose), so streams never interfere and a run is
//! reproducible across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random streams owned by one island.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    /// Exploration draws made by the island's agent.
    Decisions = 0,
    /// Task instance generation and in-episode randomness.
    Tasks = 1,
    /// Phase ordering for the sorting randomizer.
    Schedule = 2,
    /// Obstacle placement in the gridworld.
    Layout = 3,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, island: usize, stream: Stream) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ island as u64) ^ stream as u64)
}

pub fn island_rng(master: u64, island: usize, stream: Stream) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, island, stream))
}
