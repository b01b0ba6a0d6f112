use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archipelago::{AlgorithmId, ExplorationKind, IslandCounters};
use crate::baselines::Regime;
use crate::yield_core::DecisionKind;

use super::config::Domain;

/// The decision branch taken after an episode. Extrinsic targets are not
/// recorded here; the next row of the same island shows them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionTag {
    Exploit,
    ExploitSaturated,
    IntrinsicExplore,
    ExtrinsicExplore,
    GreedyHold,
    GreedySwitch,
}

impl DecisionTag {
    pub const ALL: [DecisionTag; 6] = [
        DecisionTag::Exploit,
        DecisionTag::ExploitSaturated,
        DecisionTag::IntrinsicExplore,
        DecisionTag::ExtrinsicExplore,
        DecisionTag::GreedyHold,
        DecisionTag::GreedySwitch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecisionTag::Exploit => "exploit",
            DecisionTag::ExploitSaturated => "exploit_saturated",
            DecisionTag::IntrinsicExplore => "intrinsic_explore",
            DecisionTag::ExtrinsicExplore => "extrinsic_explore",
            DecisionTag::GreedyHold => "greedy_hold",
            DecisionTag::GreedySwitch => "greedy_switch",
        }
    }
}

impl From<&DecisionKind> for DecisionTag {
    fn from(kind: &DecisionKind) -> Self {
        match kind {
            DecisionKind::Exploit => DecisionTag::Exploit,
            DecisionKind::ExploitSaturated => DecisionTag::ExploitSaturated,
            DecisionKind::IntrinsicExplore => DecisionTag::IntrinsicExplore,
            DecisionKind::ExtrinsicExplore(_) => DecisionTag::ExtrinsicExplore,
        }
    }
}

impl fmt::Display for DecisionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecisionTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecisionTag::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| format!("unknown decision `{s}`"))
    }
}

/// One island's episode.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeRecord {
    pub episode: usize,
    pub island: usize,
    /// The algorithm that ran this episode.
    pub algorithm: AlgorithmId,
    /// Data kind (sorting) or world label (gridworld).
    pub phase: String,
    pub raw_credit: f64,
    pub norm_credit: f64,
    /// `None` while the window is too short.
    pub sigma: Option<f64>,
    /// Yielory level after the decision; `None` when the regime has none.
    pub yielons: Option<f64>,
    pub decision: DecisionTag,
    pub switched: bool,
    pub exploration: ExplorationKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IslandSummary {
    pub island: usize,
    pub credits: f64,
    pub switches: u64,
    pub intrinsic: u64,
    pub extrinsic: u64,
    pub g_special: u64,
}

impl IslandSummary {
    pub fn from_counters(island: usize, c: &IslandCounters) -> Self {
        Self {
            island,
            credits: c.total_credit,
            switches: c.switches,
            intrinsic: c.intrinsic,
            extrinsic: c.extrinsic,
            g_special: c.g_special,
        }
    }
}

/// Per-island totals plus run metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub regime: Regime,
    pub episodes: usize,
    pub domain: Domain,
    pub deterministic: bool,
    pub islands: Vec<IslandSummary>,
    /// Set when a domain failure cut the run short.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunSummary {
    pub fn empty(seed: u64, regime: Regime, episodes: usize, domain: Domain, deterministic: bool, islands: usize) -> Self {
        Self {
            seed,
            regime,
            episodes,
            domain,
            deterministic,
            islands: (0..islands)
                .map(|island| IslandSummary {
                    island,
                    ..Default::default()
                })
                .collect(),
            error: None,
        }
    }

    /// Re-aggregates totals from a trace, in record order.
    pub fn from_records(
        records: &[EpisodeRecord],
        seed: u64,
        regime: Regime,
        episodes: usize,
        domain: Domain,
        deterministic: bool,
        islands: usize,
    ) -> Self {
        let mut s = Self::empty(seed, regime, episodes, domain, deterministic, islands);
        for r in records {
            let Some(i) = s.islands.get_mut(r.island) else { continue };
            i.credits += r.norm_credit;
            if r.switched {
                i.switches += 1;
            }
            match r.exploration {
                ExplorationKind::Intrinsic => i.intrinsic += 1,
                ExplorationKind::Extrinsic => i.extrinsic += 1,
                ExplorationKind::GSpecial => i.g_special += 1,
                ExplorationKind::None => {}
            }
        }
        s
    }

    pub fn total_credits(&self) -> f64 {
        self.islands.iter().map(|i| i.credits).sum()
    }

    pub fn total_switches(&self) -> u64 {
        self.islands.iter().map(|i| i.switches).sum()
    }

    pub fn total_extrinsic(&self) -> u64 {
        self.islands.iter().map(|i| i.extrinsic).sum()
    }
}
