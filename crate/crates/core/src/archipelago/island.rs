use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;

use super::{AlgorithmId, Repertoire};
use crate::error::{CoreError, Result};
use crate::yield_core::{CreditWindow, NormalizationState, YieldParams, Yielory};

/// How an island arrived at a new algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExplorationKind {
    None,
    Intrinsic,
    Extrinsic,
    /// The G-Island's draw from algorithms no island is running.
    GSpecial,
}

impl ExplorationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Intrinsic => "intrinsic",
            Self::Extrinsic => "extrinsic",
            Self::GSpecial => "g-special",
        }
    }
}

impl fmt::Display for ExplorationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExplorationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(Self::None),
            "intrinsic" => Ok(Self::Intrinsic),
            "extrinsic" => Ok(Self::Extrinsic),
            "g-special" => Ok(Self::GSpecial),
            other => Err(format!("unknown exploration kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IslandCounters {
    pub total_credit: f64,
    pub switches: u64,
    pub intrinsic: u64,
    pub extrinsic: u64,
    pub g_special: u64,
    pub failures: u64,
}

/// One island: an agent, its repertoire, its Yielory and credit history.
///
/// Islands running the greedy baseline carry no Yielory at all.
#[derive(Debug, Clone)]
pub struct IslandState {
    pub id: usize,
    pub is_g_island: bool,
    repertoire: Repertoire,
    active: AlgorithmId,
    yielory: Option<Yielory>,
    pub(crate) window: CreditWindow,
    pub(crate) norm: NormalizationState,
    pub(crate) rng: ChaCha8Rng,
    pub counters: IslandCounters,
}

impl IslandState {
    pub fn new(
        id: usize,
        repertoire: Repertoire,
        start: AlgorithmId,
        is_g_island: bool,
        yielory: Option<Yielory>,
        window_capacity: usize,
        rng: ChaCha8Rng,
    ) -> Result<Self> {
        if !repertoire.contains(&start) {
            return Err(CoreError::InvalidRepertoire(format!(
                "start algorithm `{start}` is not in island {id}'s repertoire"
            )));
        }
        Ok(Self {
            id,
            is_g_island,
            repertoire,
            active: start,
            yielory,
            window: CreditWindow::new(window_capacity),
            norm: NormalizationState::new(),
            rng,
            counters: IslandCounters::default(),
        })
    }

    pub fn active(&self) -> &AlgorithmId {
        &self.active
    }

    pub fn repertoire(&self) -> &Repertoire {
        &self.repertoire
    }

    pub fn yielory(&self) -> Option<Yielory> {
        self.yielory
    }

    pub(crate) fn set_yielory(&mut self, y: Yielory) {
        self.yielory = Some(y);
    }

    pub fn yielons(&self) -> Option<f64> {
        self.yielory.map(|y| y.level())
    }

    pub fn window(&self) -> &CreditWindow {
        &self.window
    }

    pub fn normalization(&self) -> &NormalizationState {
        &self.norm
    }

    /// Performance score advertised to the registry.
    pub fn perf(&self) -> f64 {
        self.window.mean()
    }

    /// Makes `target` the active algorithm, importing it if foreign, and
    /// resets the window and Yielory. Counts as a switch even when the
    /// target equals the current algorithm (degenerate repertoire).
    pub fn switch_to(&mut self, target: AlgorithmId, kind: ExplorationKind, params: &YieldParams) {
        self.repertoire.insert(target.clone());
        self.active = target;
        self.window.clear();
        if self.yielory.is_some() {
            self.yielory = Some(Yielory::initial(params));
        }
        self.counters.switches += 1;
        match kind {
            ExplorationKind::Intrinsic => self.counters.intrinsic += 1,
            ExplorationKind::Extrinsic => self.counters.extrinsic += 1,
            ExplorationKind::GSpecial => self.counters.g_special += 1,
            ExplorationKind::None => {}
        }
    }
}
