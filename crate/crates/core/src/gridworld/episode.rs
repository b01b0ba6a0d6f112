use rand::Rng;
use serde::{Deserialize, Serialize};

use super::learner::{Learner, Transition};
use super::world::{Action, GridWorld, Position};

/// Episode and inner-learner constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EpisodeConfig {
    /// Battery percentage points consumed per action.
    pub battery_drain: f64,
    /// Collision-free moves that make one streak.
    pub streak_length: usize,
    /// Raw credit per completed streak.
    pub credit_per_streak: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub collision_reward: f64,
    pub move_reward: f64,
}

impl Default for EpisodeConfig {
    fn default() -> Self {
        Self {
            battery_drain: 2.5,
            streak_length: 10,
            credit_per_streak: 10.0,
            epsilon: 0.1,
            gamma: 0.9,
            collision_reward: -10.0,
            move_reward: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTrace {
    pub position: Position,
    pub action: Action,
    pub collided: bool,
    pub battery: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeOutcome {
    pub raw_credit: f64,
    pub streaks: usize,
    pub trace: Vec<StepTrace>,
}

/// Runs one battery charge (100%) of actions, updating the learner after
/// every step. The next action is chosen before each update, which SARSA
/// needs and the off-policy learners do not mind. The robot stays where the
/// episode leaves it.
pub fn run_episode<R: Rng + ?Sized>(
    learner: &mut Learner,
    world: &mut GridWorld,
    cfg: &EpisodeConfig,
    rng: &mut R,
) -> EpisodeOutcome {
    let mut battery = 100.0;
    let mut streak = 0;
    let mut streaks = 0;
    let mut trace = Vec::new();
    let mut state = world.perceive();
    let mut action = learner.select_action(state, cfg.epsilon, rng);
    while battery > 0.0 && cfg.battery_drain > 0.0 {
        let collided = world.try_move(Action::from_index(action));
        battery -= cfg.battery_drain;
        let reward = if collided {
            streak = 0;
            cfg.collision_reward
        } else {
            streak += 1;
            if streak == cfg.streak_length {
                streaks += 1;
                streak = 0;
            }
            cfg.move_reward
        };
        trace.push(StepTrace {
            position: world.robot(),
            action: Action::from_index(action),
            collided,
            battery,
        });
        let next_state = world.perceive();
        let t = Transition {
            state,
            action,
            reward,
            next_state,
        };
        let coin = rng.random::<bool>();
        let next_action = learner.select_action(next_state, cfg.epsilon, rng);
        learner.learn(&t, next_action, coin, cfg.gamma);
        state = next_state;
        action = next_action;
    }
    EpisodeOutcome {
        raw_credit: streaks as f64 * cfg.credit_per_streak,
        streaks,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::{Boundary, LearnerSpec, PERCEPTS};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn learner(i: usize) -> Learner {
        Learner::new(LearnerSpec::all()[i], PERCEPTS, 4)
    }

    #[test]
    fn obstacle_free_world_earns_full_credit() {
        let cfg = EpisodeConfig::default();
        for i in 0..6 {
            let mut world = GridWorld::open(20, 20, Boundary::Wrapped).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let out = run_episode(&mut learner(i), &mut world, &cfg, &mut rng);
            assert_eq!(out.streaks, 4);
            assert_eq!(out.raw_credit, 40.0);
        }
    }

    #[test]
    fn boxed_in_robot_earns_nothing() {
        let cfg = EpisodeConfig::default();
        for i in 0..6 {
            let mut world = GridWorld::from_text("###\n#R#\n###", Boundary::Walled).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let out = run_episode(&mut learner(i), &mut world, &cfg, &mut rng);
            assert_eq!(out.raw_credit, 0.0);
            assert!(out.trace.iter().all(|s| s.collided));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn episode_invariants(seed in any::<u64>(), which in 0usize..6, obstacles in 0usize..120) {
            let cfg = EpisodeConfig::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut world = GridWorld::generate(20, 20, obstacles, Boundary::Walled, &mut rng).unwrap();
            let mut l = learner(which);
            for _ in 0..3 {
                let out = run_episode(&mut l, &mut world, &cfg, &mut rng);
                prop_assert_eq!(out.trace.len(), 40);
                prop_assert_eq!(out.trace.last().unwrap().battery, 0.0);
                prop_assert!(out.raw_credit % 10.0 == 0.0 && (0.0..=40.0).contains(&out.raw_credit));
                for s in &out.trace {
                    prop_assert!(!world.is_blocked(s.position));
                }
                for t in l.tables() {
                    for s in 0..PERCEPTS {
                        prop_assert!(t.row(s).iter().all(|v| v.is_finite()));
                    }
                }
            }
        }
    }

    /// Most learners converge within a few episodes, so a single world's
    /// halves differ only by noise. Each learner gets 20 fixed worlds; the
    /// late half may not trail the early half by more than three standard
    /// errors, and pooled over learners it must improve.
    #[test]
    fn learners_do_not_degrade_in_a_fixed_world() {
        let cfg = EpisodeConfig::default();
        let worlds = 20;
        let mut pooled = 0.0;
        for i in 0..6 {
            let diffs: Vec<f64> = (0..worlds)
                .map(|w| {
                    let mut rng = ChaCha8Rng::seed_from_u64(1000 * i as u64 + w);
                    let mut world = GridWorld::generate(20, 20, 30, Boundary::Walled, &mut rng).unwrap();
                    let mut l = learner(i);
                    let c: Vec<f64> = (0..200)
                        .map(|_| run_episode(&mut l, &mut world, &cfg, &mut rng).raw_credit)
                        .collect();
                    (c[150..].iter().sum::<f64>() - c[..50].iter().sum::<f64>()) / 50.0
                })
                .collect();
            let n = diffs.len() as f64;
            let mean = diffs.iter().sum::<f64>() / n;
            let se = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt() / n.sqrt();
            assert!(mean >= -3.0 * se, "{}: mean change {mean:.2} (se {se:.2})", LearnerSpec::all()[i]);
            pooled += mean;
        }
        assert!(pooled > 0.0, "pooled change {pooled:.2}");
    }
}
