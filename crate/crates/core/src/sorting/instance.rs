use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Every generated instance holds this many values.
pub const INSTANCE_LEN: usize = 20;

/// Number of near-neighbour swaps applied to an almost-sorted instance.
pub const ALMOS_SWAPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DataKind {
    /// Uniform over `[0, 10^6]`.
    RandL,
    /// Uniform over `[1, 35]`.
    RandS,
    /// Sorted draws from `[0, 10^6]` with a few local swaps.
    AlmoS,
}

impl DataKind {
    pub const ALL: [DataKind; 3] = [DataKind::RandL, DataKind::RandS, DataKind::AlmoS];

    /// Largest value an instance of this kind can hold. Counting sort sizes
    /// its count array from this.
    pub fn max_value(self) -> u32 {
        match self {
            DataKind::RandS => 35,
            DataKind::RandL | DataKind::AlmoS => 1_000_000,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DataKind::RandL => "RandL",
            DataKind::RandS => "RandS",
            DataKind::AlmoS => "AlmoS",
        }
    }
}

impl fmt::Display for DataKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DataKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DataKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown data kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortInstance {
    pub values: Vec<u32>,
    pub kind: DataKind,
    pub seed: u64,
}

/// Draws a fresh instance seed from `rng` and generates from it.
pub fn generate_instance<R: Rng + ?Sized>(kind: DataKind, rng: &mut R) -> SortInstance {
    generate_from_seed(kind, rng.random(), ALMOS_SWAPS)
}

pub fn generate_from_seed(kind: DataKind, seed: u64, almos_swaps: usize) -> SortInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = match kind {
        DataKind::RandL => (0..INSTANCE_LEN).map(|_| rng.random_range(0..=1_000_000)).collect(),
        DataKind::RandS => (0..INSTANCE_LEN).map(|_| rng.random_range(1..=35)).collect(),
        DataKind::AlmoS => {
            let mut v: Vec<u32> = (0..INSTANCE_LEN).map(|_| rng.random_range(0..=1_000_000)).collect();
            v.sort_unstable();
            for _ in 0..almos_swaps {
                let i = rng.random_range(0..INSTANCE_LEN - 1);
                let j = (i + rng.random_range(1..=2)).min(INSTANCE_LEN - 1);
                v.swap(i, j);
            }
            v
        }
    };
    SortInstance { values, kind, seed }
}
