//! Latent-yield adaptive algorithm switching.
//!
//! Each island runs one algorithm from its repertoire over a stream of task
//! instances. Normalized credits feed a sliding window whose mean slope (the
//! squeezing factor) charges or drains a bounded store of Yielons, the
//! Yielory. A drained Yielory, or a flat window of poor credits, forces the
//! island to explore: either a random pick from its own repertoire or an
//! import of the best algorithm advertised by the central registry. One
//! designated G-Island prefers algorithms nobody else is running.
//!
//! Two task domains ship with the crate: instrumented sorting and a tabular
//! reinforcement-learning gridworld. The [`harness`] module drives whole
//! experiments and writes traces.

pub mod archipelago;
pub mod baselines;
pub mod error;
pub mod gridworld;
pub mod harness;
pub mod rng;
pub mod sorting;
pub mod yield_core;

pub use archipelago::{
    AlgorithmId, CiaEntry, CiaRegistry, ExplorationKind, IslandState, Repertoire, TaskExecutor,
    TaskOutcome,
};
pub use baselines::{Regime, RegimeConfig, Selector};
pub use error::{CoreError, Result};
pub use harness::{EpisodeRecord, ExperimentConfig, RunSummary};
pub use yield_core::{
    decide, squeezing_factor, update_yielons, CreditWindow, DecisionKind, NormalizationState,
    SwitchDecision, YieldParams, Yielory,
};
