use rand::seq::IndexedRandom;

use super::{AlgorithmId, CiaRegistry, ExplorationKind, IslandState};
use crate::yield_core::YieldParams;

/// Uniform draw from the repertoire minus the active algorithm. A singleton
/// repertoire returns the active algorithm.
pub fn intrinsic_explore(island: &mut IslandState) -> AlgorithmId {
    let others: Vec<AlgorithmId> = island
        .repertoire()
        .iter()
        .filter(|a| *a != island.active())
        .cloned()
        .collect();
    others
        .choose(&mut island.rng)
        .cloned()
        .unwrap_or_else(|| island.active().clone())
}

/// Switches to the archipelago's best algorithm, importing it into the local
/// repertoire when it is not already there.
pub fn extrinsic_explore(island: &mut IslandState, best: &AlgorithmId, params: &YieldParams) {
    island.switch_to(best.clone(), ExplorationKind::Extrinsic, params);
}

/// Outcome of a G-Island exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GChoice {
    /// Drawn from the G-Island's repertoire minus every active algorithm.
    Special(AlgorithmId),
    /// Neither diversity condition held, or nothing unused was available.
    Fallback(AlgorithmId),
}

/// The G-Island's diversity draw.
///
/// Fires when the G-Island lags the archipelago's mean Yielon count by more
/// than `delta_g`, or when it holds the top performance score while another
/// island runs the same algorithm. Draws uniformly from its repertoire
/// minus every algorithm currently active anywhere. `g_level` is the
/// G-Island's Yielon count at the moment exploration was triggered.
pub fn g_special_draw(
    island: &mut IslandState,
    registry: &CiaRegistry,
    g_level: f64,
    params: &YieldParams,
) -> Option<AlgorithmId> {
    let me = island.id;
    let levels: Vec<f64> = registry
        .entries()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| if i == me { Some(g_level) } else { e.as_ref().and_then(|e| e.yielons) })
        .collect();
    let mean = levels.iter().sum::<f64>() / levels.len().max(1) as f64;
    let lagging = mean - g_level > params.delta_g;

    let shared = registry
        .entries()
        .iter()
        .enumerate()
        .any(|(i, e)| i != me && e.as_ref().is_some_and(|e| &e.algorithm == island.active()));
    let leading_but_copied = registry.best_island() == Some(me) && shared;

    if !(lagging || leading_but_copied) {
        return None;
    }

    let mut active = registry.active_algorithms();
    active.insert(island.active().clone());
    let unused: Vec<AlgorithmId> = island
        .repertoire()
        .iter()
        .filter(|a| !active.contains(*a))
        .cloned()
        .collect();
    unused.choose(&mut island.rng).cloned()
}

/// G-Island exploration with fallback to an ordinary intrinsic draw.
pub fn g_island_explore(
    island: &mut IslandState,
    registry: &CiaRegistry,
    g_level: f64,
    params: &YieldParams,
) -> GChoice {
    match g_special_draw(island, registry, g_level, params) {
        Some(a) => GChoice::Special(a),
        None => GChoice::Fallback(intrinsic_explore(island)),
    }
}
