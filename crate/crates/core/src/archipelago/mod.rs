//! Islands, repertoires, the central registry and the exploration policies.

mod algorithm;
mod cia;
mod explore;
mod island;
mod step;

pub use algorithm::{AlgorithmId, Repertoire};
pub use cia::{CiaEntry, CiaRegistry};
pub use explore::{extrinsic_explore, g_island_explore, g_special_draw, intrinsic_explore, GChoice};
pub use island::{ExplorationKind, IslandCounters, IslandState};
pub use step::{execute_instance, settle_instance, step_island, StepContext, TaskExecutor, TaskOutcome};
