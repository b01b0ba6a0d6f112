//! Experiment configuration, orchestration and output.

mod compare;
mod config;
mod output;
mod record;
mod run;

pub use compare::{compare_regimes, CellStats, Comparison, ComparisonCell, ComparisonRow};
pub use config::{load_config, Domain, ExperimentConfig, IslandConfig, WorldSpec};
pub use output::{read_trace, write_outputs, write_plotdata, write_summary, TraceWriter, TRACE_HEADER};
pub use record::{DecisionTag, EpisodeRecord, IslandSummary, RunSummary};
pub use run::{build_executors, generate_world, island_schedule, run_experiment, run_experiment_with, RunOutput};
