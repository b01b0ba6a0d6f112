//! Battery-limited obstacle avoidance on a grid, learned by six tabular
//! reinforcement learners (Q-learning, SARSA and double Q-learning, each at
//! two learning rates).

mod episode;
mod executor;
mod learner;
mod world;

pub use episode::{run_episode, EpisodeConfig, EpisodeOutcome, StepTrace};
pub use executor::GridworldExecutor;
pub use learner::{
    double_q_update, q_update, sarsa_update, Learner, LearnerKind, LearnerSpec, QTable, Transition, ALPHAS,
};
pub use world::{Action, Boundary, GridWorld, Position, PERCEPTS};
