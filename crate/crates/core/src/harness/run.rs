use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use crate::archipelago::{
    execute_instance, settle_instance, CiaRegistry, IslandState, Repertoire, StepContext, TaskExecutor,
};
use crate::baselines::Selector;
use crate::error::{CoreError, Result};
use crate::gridworld::{GridWorld, GridworldExecutor};
use crate::rng::{island_rng, Stream};
use crate::sorting::{PhaseSchedule, SortingExecutor};
use crate::yield_core::Yielory;

use super::config::{Domain, ExperimentConfig};
use super::record::{EpisodeRecord, IslandSummary, RunSummary};

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Ordered by episode, then island.
    pub records: Vec<EpisodeRecord>,
    pub summary: RunSummary,
}

impl RunOutput {
    pub fn is_complete(&self) -> bool {
        self.summary.error.is_none()
    }
}

/// The world an island of a gridworld run is built on.
pub fn generate_world(cfg: &ExperimentConfig, island: usize) -> Result<GridWorld> {
    let spec = cfg
        .islands
        .get(island)
        .ok_or(CoreError::UnknownIsland(island))?
        .world
        .unwrap_or_default();
    let mut rng = island_rng(cfg.seed, island, Stream::Layout);
    GridWorld::generate(spec.width, spec.height, spec.obstacles, spec.boundary, &mut rng)
}

/// The phase schedule an island of a sorting run follows.
pub fn island_schedule(cfg: &ExperimentConfig, island: usize) -> Result<PhaseSchedule> {
    let ic = cfg.islands.get(island).ok_or(CoreError::UnknownIsland(island))?;
    match &ic.schedule {
        Some(spans) => PhaseSchedule::new(spans.clone()),
        None => Ok(PhaseSchedule::random(
            cfg.episodes,
            &mut island_rng(cfg.seed, island, Stream::Schedule),
        )),
    }
}

/// One task executor per island, seeded from the config.
pub fn build_executors(cfg: &ExperimentConfig) -> Result<Vec<Box<dyn TaskExecutor>>> {
    (0..cfg.islands.len())
        .map(|i| -> Result<Box<dyn TaskExecutor>> {
            let rng = island_rng(cfg.seed, i, Stream::Tasks);
            Ok(match cfg.domain {
                Domain::Sorting => Box::new(SortingExecutor::new(island_schedule(cfg, i)?, rng)),
                Domain::Gridworld => Box::new(GridworldExecutor::new(
                    generate_world(cfg, i)?,
                    cfg.gridworld.clone(),
                    rng,
                    format!("grid-{i}"),
                )),
            })
        })
        .collect()
}

fn build_islands(cfg: &ExperimentConfig) -> Result<Vec<IslandState>> {
    let regime = cfg.regime.config();
    let window = match regime.selector {
        Selector::Greedy => 1,
        Selector::LatentYield => cfg.params.window_size,
    };
    cfg.islands
        .iter()
        .enumerate()
        .map(|(i, ic)| {
            IslandState::new(
                i,
                Repertoire::new(ic.repertoire_for(cfg.domain))?,
                ic.start.clone(),
                ic.g_island,
                regime.use_yielory.then(|| Yielory::initial(&cfg.params)),
                window,
                island_rng(cfg.seed, i, Stream::Decisions),
            )
        })
        .collect()
}

/// Runs the experiment described by `cfg` with its own executors and
/// collects every record.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput> {
    run_experiment_with(cfg, build_executors(cfg)?, &mut |_| Ok(()))
}

/// Runs `cfg` on the given executors, handing each record to `sink` as soon
/// as its round completes (deterministic mode) or after all islands finish
/// (free-running mode).
///
/// Invalid configs are errors. A domain failure stops the run; the records
/// produced so far are kept and the summary carries the error.
pub fn run_experiment_with(
    cfg: &ExperimentConfig,
    mut executors: Vec<Box<dyn TaskExecutor>>,
    sink: &mut dyn FnMut(&EpisodeRecord) -> Result<()>,
) -> Result<RunOutput> {
    cfg.validate()?;
    if executors.len() != cfg.islands.len() {
        return Err(CoreError::config(
            "islands",
            format!("{} executors for {} islands", executors.len(), cfg.islands.len()),
        ));
    }
    let mut islands = build_islands(cfg)?;
    let mut registry = CiaRegistry::new(islands.len());
    for island in &islands {
        registry.report(island.id, island.active().clone(), island.yielons(), island.perf())?;
    }
    let ctx = StepContext {
        params: &cfg.params,
        regime: cfg.regime.config(),
    };

    let (records, failure) = if cfg.deterministic {
        lock_step(cfg.episodes, &mut islands, &mut registry, &mut executors, &ctx, sink)?
    } else {
        let (records, failure) = free_running(cfg.episodes, &mut islands, registry, &mut executors, &ctx);
        for r in &records {
            sink(r)?;
        }
        (records, failure)
    };

    let summary = RunSummary {
        seed: cfg.seed,
        regime: cfg.regime,
        episodes: cfg.episodes,
        domain: cfg.domain,
        deterministic: cfg.deterministic,
        islands: islands
            .iter()
            .map(|i| IslandSummary::from_counters(i.id, &i.counters))
            .collect(),
        error: failure.map(|e| e.to_string()),
    };
    Ok(RunOutput { records, summary })
}

/// Every island completes episode j before any island starts j + 1. Islands
/// settle in index order, so later islands see earlier islands' reports
/// from the same round.
fn lock_step(
    episodes: usize,
    islands: &mut [IslandState],
    registry: &mut CiaRegistry,
    executors: &mut [Box<dyn TaskExecutor>],
    ctx: &StepContext<'_>,
    sink: &mut dyn FnMut(&EpisodeRecord) -> Result<()>,
) -> Result<(Vec<EpisodeRecord>, Option<CoreError>)> {
    let mut records = Vec::with_capacity(episodes * islands.len());
    for episode in 0..episodes {
        for (island, exec) in islands.iter_mut().zip(executors.iter_mut()) {
            let step = execute_instance(island, exec.as_mut(), episode)
                .and_then(|o| settle_instance(island, registry, episode, o, ctx));
            match step {
                Ok(r) => {
                    sink(&r)?;
                    records.push(r);
                }
                Err(e) => return Ok((records, Some(e))),
            }
        }
    }
    Ok((records, None))
}

/// Each island on its own thread, sharing the registry behind a lock. The
/// interleaving, and so the output, is not reproducible.
fn free_running(
    episodes: usize,
    islands: &mut [IslandState],
    registry: CiaRegistry,
    executors: &mut [Box<dyn TaskExecutor>],
    ctx: &StepContext<'_>,
) -> (Vec<EpisodeRecord>, Option<CoreError>) {
    let registry = Mutex::new(registry);
    let abort = AtomicBool::new(false);
    let results: Vec<(Vec<EpisodeRecord>, Option<CoreError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = islands
            .iter_mut()
            .zip(executors.iter_mut())
            .map(|(island, exec)| {
                let (registry, abort) = (&registry, &abort);
                s.spawn(move || {
                    let mut records = Vec::with_capacity(episodes);
                    for episode in 0..episodes {
                        if abort.load(Ordering::Relaxed) {
                            break;
                        }
                        let step = execute_instance(island, exec.as_mut(), episode).and_then(|o| {
                            let mut reg = registry.lock().unwrap_or_else(|p| p.into_inner());
                            settle_instance(island, &mut reg, episode, o, ctx)
                        });
                        match step {
                            Ok(r) => records.push(r),
                            Err(e) => {
                                abort.store(true, Ordering::Relaxed);
                                return (records, Some(e));
                            }
                        }
                    }
                    (records, None)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("island thread panicked")).collect()
    });
    let mut failure = None;
    let mut records = Vec::new();
    for (r, e) in results {
        records.extend(r);
        failure = failure.or(e);
    }
    records.sort_by_key(|r| (r.episode, r.island));
    (records, failure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archipelago::{AlgorithmId, ExplorationKind, TaskOutcome};
    use crate::baselines::Regime;

    struct FailAt(usize);

    impl TaskExecutor for FailAt {
        fn execute(&mut self, episode: usize, _: &AlgorithmId) -> Result<TaskOutcome> {
            if episode == self.0 {
                return Err(CoreError::UnknownAlgorithm("broken".into()));
            }
            Ok(TaskOutcome {
                raw_credit: 1.0 + episode as f64,
                phase: "x".into(),
            })
        }
    }

    fn short(domain: Domain, regime: Regime, episodes: usize) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::defaults_for(domain);
        cfg.regime = regime;
        cfg.episodes = episodes;
        cfg.seed = 17;
        cfg
    }

    #[test]
    fn one_record_per_island_and_episode() {
        for domain in [Domain::Sorting, Domain::Gridworld] {
            let cfg = short(domain, Regime::YieloryG, 40);
            let out = run_experiment(&cfg).unwrap();
            let n = cfg.islands.len();
            assert_eq!(out.records.len(), 40 * n);
            for (k, r) in out.records.iter().enumerate() {
                assert_eq!((r.episode, r.island), (k / n, k % n));
            }
            assert!(out.is_complete());
        }
    }

    #[test]
    fn summary_matches_reaggregated_trace() {
        for regime in Regime::ALL {
            for domain in [Domain::Sorting, Domain::Gridworld] {
                let cfg = short(domain, regime, 120);
                let out = run_experiment(&cfg).unwrap();
                let again = RunSummary::from_records(
                    &out.records,
                    cfg.seed,
                    cfg.regime,
                    cfg.episodes,
                    cfg.domain,
                    true,
                    cfg.islands.len(),
                );
                assert_eq!(out.summary, again, "{regime} {domain}");
            }
        }
    }

    #[test]
    fn zero_episodes_is_vacuous() {
        let out = run_experiment(&short(Domain::Sorting, Regime::Yielory, 0)).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.summary.total_credits(), 0.0);
        assert_eq!(out.summary.islands.len(), 3);
    }

    #[test]
    fn same_seed_same_output() {
        let cfg = short(Domain::Gridworld, Regime::YieloryG, 60);
        assert_eq!(run_experiment(&cfg).unwrap(), run_experiment(&cfg).unwrap());
    }

    #[test]
    fn greedy_regimes_never_carry_yielons() {
        for regime in [Regime::Greedy, Regime::GreedyG] {
            let out = run_experiment(&short(Domain::Sorting, regime, 50)).unwrap();
            assert!(out.records.iter().all(|r| r.yielons.is_none() && r.sigma.is_none()));
        }
    }

    #[test]
    fn no_g_island_behaviour_without_the_flag() {
        for regime in [Regime::Greedy, Regime::Yielory] {
            let out = run_experiment(&short(Domain::Sorting, regime, 200)).unwrap();
            assert!(out.records.iter().all(|r| r.exploration != ExplorationKind::GSpecial));
        }
    }

    #[test]
    fn failure_keeps_partial_trace() {
        let cfg = short(Domain::Sorting, Regime::Yielory, 10);
        let mut executors = build_executors(&cfg).unwrap();
        executors[1] = Box::new(FailAt(4));
        let mut streamed = 0;
        let out = run_experiment_with(&cfg, executors, &mut |_| {
            streamed += 1;
            Ok(())
        })
        .unwrap();
        assert!(!out.is_complete());
        assert!(out.summary.error.as_deref().unwrap().contains("episode 4"));
        // rounds 0..4 complete plus island 0 of round 4
        assert_eq!(out.records.len(), 4 * 3 + 1);
        assert_eq!(streamed, out.records.len());
    }

    #[test]
    fn free_running_mode_completes() {
        let mut cfg = short(Domain::Sorting, Regime::YieloryG, 80);
        cfg.deterministic = false;
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.records.len(), 240);
        assert!(!out.summary.deterministic);
        let again = RunSummary::from_records(&out.records, cfg.seed, cfg.regime, 80, cfg.domain, false, 3);
        assert_eq!(out.summary, again);
    }
}
