//! The greedy baseline and the four experimental regimes.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use crate::archipelago::{AlgorithmId, CiaRegistry, ExplorationKind, IslandState};
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// Copy the registry's best algorithm after every episode.
    Greedy,
    /// Yielory-gated switching.
    LatentYield,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeConfig {
    pub use_yielory: bool,
    pub use_g_island: bool,
    pub selector: Selector,
}

impl RegimeConfig {
    pub fn new(use_yielory: bool, use_g_island: bool, selector: Selector) -> Result<Self> {
        let consistent = match selector {
            Selector::LatentYield => use_yielory,
            Selector::Greedy => !use_yielory,
        };
        if !consistent {
            return Err(CoreError::InvalidParam {
                field: "regime",
                reason: format!("selector {selector:?} is incompatible with use_yielory={use_yielory}"),
            });
        }
        Ok(Self {
            use_yielory,
            use_g_island,
            selector,
        })
    }
}

/// The four regimes compared in the reference experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// No Yielory and no G-Island.
    Greedy,
    /// No Yielory, with a G-Island.
    GreedyG,
    /// With Yielory, no G-Island.
    Yielory,
    /// With Yielory and a G-Island.
    YieloryG,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Greedy, Regime::GreedyG, Regime::Yielory, Regime::YieloryG];

    pub fn config(self) -> RegimeConfig {
        let (use_yielory, use_g_island, selector) = match self {
            Regime::Greedy => (false, false, Selector::Greedy),
            Regime::GreedyG => (false, true, Selector::Greedy),
            Regime::Yielory => (true, false, Selector::LatentYield),
            Regime::YieloryG => (true, true, Selector::LatentYield),
        };
        RegimeConfig {
            use_yielory,
            use_g_island,
            selector,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Greedy => "greedy",
            Regime::GreedyG => "greedy-g",
            Regime::Yielory => "yielory",
            Regime::YieloryG => "yielory-g",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Greedy => "No Yielory and No G-Island",
            Regime::GreedyG => "No Yielory and With G-Island",
            Regime::Yielory => "With Yielory and No G-Island",
            Regime::YieloryG => "With Yielory and G-Island",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown regime `{s}` (expected greedy, greedy-g, yielory or yielory-g)"))
    }
}

/// The registry's best algorithm, or the island's own when nothing has been
/// reported yet. Ties between islands are broken uniformly at random.
pub fn greedy_select(registry: &CiaRegistry, island: &mut IslandState) -> AlgorithmId {
    let tied: Vec<AlgorithmId> = registry
        .tied_best()
        .into_iter()
        .map(|e| e.algorithm.clone())
        .collect();
    tied.choose(&mut island.rng)
        .cloned()
        .unwrap_or_else(|| island.active().clone())
}

/// Greedy G-Island rule: whenever its own score trails the registry's best,
/// jump to a random algorithm no island is running (or, failing that, any
/// other algorithm in its repertoire).
pub fn greedy_g_target(
    registry: &CiaRegistry,
    island: &mut IslandState,
) -> Option<(AlgorithmId, ExplorationKind)> {
    let best = registry.best_entry()?.perf;
    if island.perf() >= best {
        return None;
    }
    let mut active = registry.active_algorithms();
    active.insert(island.active().clone());
    let unused: Vec<AlgorithmId> = island
        .repertoire()
        .iter()
        .filter(|a| !active.contains(*a))
        .cloned()
        .collect();
    if let Some(a) = unused.choose(&mut island.rng) {
        return Some((a.clone(), ExplorationKind::GSpecial));
    }
    let others: Vec<AlgorithmId> = island
        .repertoire()
        .iter()
        .filter(|a| *a != island.active())
        .cloned()
        .collect();
    others
        .choose(&mut island.rng)
        .map(|a| (a.clone(), ExplorationKind::Intrinsic))
}
