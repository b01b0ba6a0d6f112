use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{generate_from_seed, raw_credit, run_sort, PhaseSchedule, SortAlgorithm, ALMOS_SWAPS};
use crate::archipelago::{AlgorithmId, TaskExecutor, TaskOutcome};
use crate::error::Result;

/// One island's randomizer plus the instrumented sorts.
#[derive(Debug, Clone)]
pub struct SortingExecutor {
    schedule: PhaseSchedule,
    rng: ChaCha8Rng,
}

impl SortingExecutor {
    pub fn new(schedule: PhaseSchedule, rng: ChaCha8Rng) -> Self {
        Self { schedule, rng }
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }
}

impl TaskExecutor for SortingExecutor {
    fn execute(&mut self, episode: usize, algorithm: &AlgorithmId) -> Result<TaskOutcome> {
        SortAlgorithm::from_id(algorithm)?;
        let kind = self.schedule.kind_at(episode);
        // The instance stream does not depend on the algorithm, so every
        // regime sees the same inputs for a given seed.
        let instance = generate_from_seed(kind, self.rng.random(), ALMOS_SWAPS);
        let (_, counters) = run_sort(algorithm, &instance)?;
        Ok(TaskOutcome {
            raw_credit: raw_credit(&counters),
            phase: kind.label().to_string(),
        })
    }
}
