use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archipelago::AlgorithmId;
use crate::baselines::Regime;
use crate::error::{CoreError, Result};
use crate::gridworld::{Boundary, EpisodeConfig, LearnerKind, LearnerSpec};
use crate::sorting::{PhaseSchedule, PhaseSpan, SortAlgorithm};
use crate::yield_core::YieldParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    #[default]
    Sorting,
    Gridworld,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Sorting => "sorting",
            Domain::Gridworld => "gridworld",
        }
    }

    /// Every algorithm the domain knows.
    pub fn algorithms(self) -> Vec<AlgorithmId> {
        match self {
            Domain::Sorting => SortAlgorithm::ALL.iter().map(|a| a.id()).collect(),
            Domain::Gridworld => LearnerSpec::all().iter().map(|s| s.id()).collect(),
        }
    }

    fn check_algorithm(self, id: &AlgorithmId) -> Result<()> {
        match self {
            Domain::Sorting => SortAlgorithm::from_id(id).map(|_| ()),
            Domain::Gridworld => LearnerSpec::from_id(id).map(|_| ()),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sorting" => Ok(Domain::Sorting),
            "gridworld" => Ok(Domain::Gridworld),
            other => Err(format!("unknown domain `{other}`")),
        }
    }
}

/// A generated gridworld.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldSpec {
    pub width: usize,
    pub height: usize,
    pub obstacles: usize,
    pub boundary: Boundary,
}

impl Default for WorldSpec {
    fn default() -> Self {
        Self {
            width: 20,
            height: 20,
            obstacles: 30,
            boundary: Boundary::Walled,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IslandConfig {
    pub start: AlgorithmId,
    /// Empty means every algorithm of the domain.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repertoire: Vec<AlgorithmId>,
    #[serde(default)]
    pub g_island: bool,
    /// Sorting only. Absent means a random order of the three data kinds,
    /// drawn per island from the seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<PhaseSpan>>,
    /// Gridworld only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<WorldSpec>,
}

impl IslandConfig {
    fn starting(start: AlgorithmId, g_island: bool) -> Self {
        Self {
            start,
            repertoire: Vec::new(),
            g_island,
            schedule: None,
            world: None,
        }
    }

    /// The repertoire with the domain default applied.
    pub fn repertoire_for(&self, domain: Domain) -> Vec<AlgorithmId> {
        if self.repertoire.is_empty() {
            domain.algorithms()
        } else {
            self.repertoire.clone()
        }
    }
}

/// A complete experiment. Parsed from TOML; missing keys take defaults and
/// unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub domain: Domain,
    pub seed: u64,
    pub episodes: usize,
    pub regime: Regime,
    /// Lock-step rounds. Off runs islands on free threads and the output is
    /// not reproducible.
    pub deterministic: bool,
    /// Permit more than one G-Island.
    pub allow_multiple_g: bool,
    pub output: PathBuf,
    pub params: YieldParams,
    /// Gridworld episode and inner-learner settings.
    pub gridworld: EpisodeConfig,
    /// Empty means the domain's default layout.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub islands: Vec<IslandConfig>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::defaults_for(Domain::Sorting)
    }
}

impl ExperimentConfig {
    /// Defaults with the domain's standard island layout filled in.
    pub fn defaults_for(domain: Domain) -> Self {
        Self {
            domain,
            seed: 0,
            episodes: 300,
            regime: Regime::YieloryG,
            deterministic: true,
            allow_multiple_g: false,
            output: PathBuf::from("out"),
            params: YieldParams::default(),
            gridworld: EpisodeConfig::default(),
            islands: default_islands(domain),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        Self::parse(text, Path::new("<config>"))
    }

    fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut cfg: Self = toml::from_str(text).map_err(|e| CoreError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if cfg.islands.is_empty() {
            cfg.islands = default_islands(cfg.domain);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config is always serializable")
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let g = &self.gridworld;
        if !(g.battery_drain > 0.0 && g.battery_drain <= 100.0) {
            return Err(CoreError::config("gridworld.battery_drain", "must be in (0, 100]"));
        }
        if g.streak_length == 0 {
            return Err(CoreError::config("gridworld.streak_length", "must be positive"));
        }
        if !(0.0..=1.0).contains(&g.epsilon) {
            return Err(CoreError::config("gridworld.epsilon", "must be in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&g.gamma) {
            return Err(CoreError::config("gridworld.gamma", "must be in [0, 1]"));
        }
        if !(g.credit_per_streak >= 0.0 && g.credit_per_streak.is_finite()) {
            return Err(CoreError::config("gridworld.credit_per_streak", "must be finite and non-negative"));
        }
        if self.islands.is_empty() {
            return Err(CoreError::config("islands", "at least one island is required"));
        }
        let g_count = self.islands.iter().filter(|i| i.g_island).count();
        if g_count > 1 && !self.allow_multiple_g {
            return Err(CoreError::config(
                "islands",
                format!("{g_count} G-Islands flagged; set allow_multiple_g to permit more than one"),
            ));
        }
        for (n, island) in self.islands.iter().enumerate() {
            let field = |name: &str| format!("islands[{n}].{name}");
            self.domain
                .check_algorithm(&island.start)
                .map_err(|e| CoreError::config(field("start"), e.to_string()))?;
            let repertoire = island.repertoire_for(self.domain);
            let mut seen = BTreeSet::new();
            for id in &repertoire {
                self.domain
                    .check_algorithm(id)
                    .map_err(|e| CoreError::config(field("repertoire"), e.to_string()))?;
                if !seen.insert(id) {
                    return Err(CoreError::config(field("repertoire"), format!("`{id}` listed twice")));
                }
            }
            if !repertoire.contains(&island.start) {
                return Err(CoreError::config(
                    field("start"),
                    format!("`{}` is not in the repertoire", island.start),
                ));
            }
            match self.domain {
                Domain::Sorting => {
                    if island.world.is_some() {
                        return Err(CoreError::config(field("world"), "only valid for the gridworld domain"));
                    }
                    if let Some(spans) = &island.schedule {
                        PhaseSchedule::new(spans.clone())
                            .map_err(|e| CoreError::config(field("schedule"), e.to_string()))?;
                    }
                }
                Domain::Gridworld => {
                    if island.schedule.is_some() {
                        return Err(CoreError::config(field("schedule"), "only valid for the sorting domain"));
                    }
                    let w = island.world.unwrap_or_default();
                    let min = if w.boundary == Boundary::Walled { 3 } else { 1 };
                    if w.width < min || w.height < min {
                        return Err(CoreError::config(
                            field("world"),
                            format!("a {:?} world needs at least {min}x{min} cells", w.boundary),
                        ));
                    }
                    if w.obstacles >= free_cells(&w) {
                        return Err(CoreError::config(
                            field("world.obstacles"),
                            format!("{} obstacles leave no free cell", w.obstacles),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn free_cells(w: &WorldSpec) -> usize {
    match w.boundary {
        Boundary::Walled => (w.width - 2) * (w.height - 2),
        Boundary::Wrapped => w.width * w.height,
    }
}

fn default_islands(domain: Domain) -> Vec<IslandConfig> {
    match domain {
        Domain::Sorting => [SortAlgorithm::Counting, SortAlgorithm::Insertion, SortAlgorithm::Quick]
            .iter()
            .enumerate()
            .map(|(i, a)| IslandConfig::starting(a.id(), i == 1))
            .collect(),
        Domain::Gridworld => [
            (LearnerKind::QLearning, 0.1),
            (LearnerKind::Sarsa, 0.1),
            (LearnerKind::DoubleQ, 0.1),
            (LearnerKind::QLearning, 0.7),
        ]
        .iter()
        .enumerate()
        .map(|(i, &(kind, alpha))| {
            let mut island = IslandConfig::starting(LearnerSpec { kind, alpha }.id(), i == 1);
            island.world = Some(WorldSpec::default());
            island
        })
        .collect(),
    }
}

/// Reads and validates a TOML experiment file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CoreError::io(path, e))?;
    ExperimentConfig::parse(&text, path)
}
