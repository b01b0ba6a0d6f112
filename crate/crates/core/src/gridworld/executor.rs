use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;

use super::episode::{run_episode, EpisodeConfig};
use super::learner::{Learner, LearnerSpec};
use super::world::{GridWorld, PERCEPTS};
use crate::archipelago::{AlgorithmId, TaskExecutor, TaskOutcome};
use crate::error::Result;

/// One island's world. Each learner's tables persist here while the learner
/// is inactive.
#[derive(Debug)]
pub struct GridworldExecutor {
    world: GridWorld,
    learners: BTreeMap<AlgorithmId, Learner>,
    cfg: EpisodeConfig,
    rng: ChaCha8Rng,
    label: String,
}

impl GridworldExecutor {
    pub fn new(world: GridWorld, cfg: EpisodeConfig, rng: ChaCha8Rng, label: impl Into<String>) -> Self {
        Self {
            world,
            learners: BTreeMap::new(),
            cfg,
            rng,
            label: label.into(),
        }
    }

    pub fn world(&self) -> &GridWorld {
        &self.world
    }

    pub fn learner(&self, id: &AlgorithmId) -> Option<&Learner> {
        self.learners.get(id)
    }
}

impl TaskExecutor for GridworldExecutor {
    fn execute(&mut self, _episode: usize, algorithm: &AlgorithmId) -> Result<TaskOutcome> {
        let spec = LearnerSpec::from_id(algorithm)?;
        let learner = self
            .learners
            .entry(algorithm.clone())
            .or_insert_with(|| Learner::new(spec, PERCEPTS, 4));
        let out = run_episode(learner, &mut self.world, &self.cfg, &mut self.rng);
        Ok(TaskOutcome {
            raw_credit: out.raw_credit,
            phase: self.label.clone(),
        })
    }
}
