use super::{
    extrinsic_explore, g_island_explore, intrinsic_explore, AlgorithmId, CiaRegistry,
    ExplorationKind, GChoice, IslandState,
};
use crate::baselines::{greedy_g_target, greedy_select, RegimeConfig, Selector};
use crate::error::{CoreError, Result};
use crate::harness::{DecisionTag, EpisodeRecord};
use crate::yield_core::{decide, DecisionKind, YieldParams, Yielory};

/// Result of running one task instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskOutcome {
    /// Non-negative raw credit; larger is better.
    pub raw_credit: f64,
    /// Label of the input regime or environment, for traces.
    pub phase: String,
}

/// A task domain bound to one island: runs the next instance with the given
/// algorithm.
pub trait TaskExecutor: Send {
    fn execute(&mut self, episode: usize, algorithm: &AlgorithmId) -> Result<TaskOutcome>;
}

#[derive(Debug, Clone, Copy)]
pub struct StepContext<'a> {
    pub params: &'a YieldParams,
    pub regime: RegimeConfig,
}

/// Runs the island's active algorithm on the next instance. Failures bump
/// the failure counter and leave everything else untouched.
pub fn execute_instance(
    island: &mut IslandState,
    executor: &mut dyn TaskExecutor,
    episode: usize,
) -> Result<TaskOutcome> {
    let fail = |island: &mut IslandState, reason: String| {
        island.counters.failures += 1;
        CoreError::Domain {
            island: island.id,
            episode,
            reason,
        }
    };
    match executor.execute(episode, island.active()) {
        Ok(o) if o.raw_credit.is_finite() && o.raw_credit >= 0.0 => Ok(o),
        Ok(o) => Err(fail(island, format!("invalid raw credit {}", o.raw_credit))),
        Err(e) => Err(fail(island, e.to_string())),
    }
}

/// Folds an executed instance into the island: normalization, the switching
/// decision, any switch, and the registry report. The report credits the
/// performance to the algorithm that earned it and carries the
/// post-decision Yielon count; a switch is recorded separately.
pub fn settle_instance(
    island: &mut IslandState,
    registry: &mut CiaRegistry,
    episode: usize,
    outcome: TaskOutcome,
    ctx: &StepContext<'_>,
) -> Result<EpisodeRecord> {
    let algorithm = island.active().clone();
    let norm_credit = island.norm.normalize_or_zero(&algorithm, outcome.raw_credit)?;
    island.window.push(norm_credit)?;
    island.counters.total_credit += norm_credit;
    let perf = island.perf();

    let (decision, sigma, exploration) = match ctx.regime.selector {
        Selector::LatentYield => latent_step(island, registry, norm_credit, ctx),
        Selector::Greedy => greedy_step(island, registry, ctx),
    };

    registry.report(island.id, algorithm.clone(), island.yielons(), perf)?;
    if island.active() != &algorithm {
        registry.mark_active(island.id, island.active().clone())?;
    }

    Ok(EpisodeRecord {
        episode,
        island: island.id,
        algorithm,
        phase: outcome.phase,
        raw_credit: outcome.raw_credit,
        norm_credit,
        sigma,
        yielons: island.yielons(),
        decision,
        switched: exploration != ExplorationKind::None,
        exploration,
    })
}

/// One full instance on one island.
pub fn step_island(
    island: &mut IslandState,
    registry: &mut CiaRegistry,
    executor: &mut dyn TaskExecutor,
    episode: usize,
    ctx: &StepContext<'_>,
) -> Result<EpisodeRecord> {
    let outcome = execute_instance(island, executor, episode)?;
    settle_instance(island, registry, episode, outcome, ctx)
}

fn latent_step(
    island: &mut IslandState,
    registry: &CiaRegistry,
    norm_credit: f64,
    ctx: &StepContext<'_>,
) -> (DecisionTag, Option<f64>, ExplorationKind) {
    let params = ctx.params;
    let yielory = island.yielory().unwrap_or_else(|| Yielory::initial(params));
    let best = registry.query_best();
    let current = island.active().clone();
    let (d, updated) = decide(&mut island.window, yielory, norm_credit, best.as_ref(), &current, params);
    island.set_yielory(updated);

    let diversify = island.is_g_island && ctx.regime.use_g_island;
    let exploration = match &d.kind {
        DecisionKind::Exploit | DecisionKind::ExploitSaturated => ExplorationKind::None,
        DecisionKind::IntrinsicExplore => {
            let (target, kind) = if diversify {
                match g_island_explore(island, registry, d.trigger_level, params) {
                    GChoice::Special(a) => (a, ExplorationKind::GSpecial),
                    GChoice::Fallback(a) => (a, ExplorationKind::Intrinsic),
                }
            } else {
                (intrinsic_explore(island), ExplorationKind::Intrinsic)
            };
            island.switch_to(target, kind, params);
            kind
        }
        DecisionKind::ExtrinsicExplore(best) => {
            if diversify {
                let (target, kind) = match g_island_explore(island, registry, d.trigger_level, params) {
                    GChoice::Special(a) => (a, ExplorationKind::GSpecial),
                    GChoice::Fallback(a) => (a, ExplorationKind::Intrinsic),
                };
                island.switch_to(target, kind, params);
                kind
            } else {
                extrinsic_explore(island, best, params);
                ExplorationKind::Extrinsic
            }
        }
    };
    (DecisionTag::from(&d.kind), d.sigma, exploration)
}

fn greedy_step(
    island: &mut IslandState,
    registry: &CiaRegistry,
    ctx: &StepContext<'_>,
) -> (DecisionTag, Option<f64>, ExplorationKind) {
    let target = if island.is_g_island && ctx.regime.use_g_island {
        greedy_g_target(registry, island)
    } else {
        let best = greedy_select(registry, island);
        (&best != island.active()).then_some((best, ExplorationKind::Extrinsic))
    };
    match target {
        Some((algo, kind)) => {
            island.switch_to(algo, kind, ctx.params);
            (DecisionTag::GreedySwitch, None, kind)
        }
        None => (DecisionTag::GreedyHold, None, ExplorationKind::None),
    }
}
