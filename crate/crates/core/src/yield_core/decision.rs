use super::{delta_test, squeezing_factor, update_yielons, CreditWindow, YielonUpdate, YieldParams, Yielory};
use crate::archipelago::AlgorithmId;

/// The registry's current best entry, as seen by a deciding island.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSnapshot {
    pub algorithm: AlgorithmId,
    /// `None` when the reporting island keeps no Yielory.
    pub yielons: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecisionKind {
    /// Keep the current algorithm (moving window, or sigma undefined).
    Exploit,
    /// Keep the current algorithm; the window is flat and credits are good.
    ExploitSaturated,
    /// Switch to a random other algorithm from the local repertoire.
    IntrinsicExplore,
    /// Import and switch to the archipelago's best algorithm.
    ExtrinsicExplore(AlgorithmId),
}

impl DecisionKind {
    pub fn is_exploration(&self) -> bool {
        matches!(self, Self::IntrinsicExplore | Self::ExtrinsicExplore(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchDecision {
    pub kind: DecisionKind,
    /// Whether the Yielory was reset to its initial level.
    pub yielory_reset: bool,
    /// Squeezing factor of the window, `None` when undefined.
    pub sigma: Option<f64>,
    /// Yielon count that drove the decision, before any reset.
    pub trigger_level: f64,
}

/// One step of the switching mechanism.
///
/// `window` must already contain `c_norm`. On any exploration the window is
/// cleared and the returned Yielory holds `upsilon_initial`.
pub fn decide(
    window: &mut CreditWindow,
    yielory: Yielory,
    c_norm: f64,
    best: Option<&BestSnapshot>,
    current: &AlgorithmId,
    params: &YieldParams,
) -> (SwitchDecision, Yielory) {
    let Some(sigma) = squeezing_factor(window) else {
        let decision = SwitchDecision {
            kind: DecisionKind::Exploit,
            yielory_reset: false,
            sigma: None,
            trigger_level: yielory.level(),
        };
        return (decision, yielory);
    };

    let (kind, updated) = if sigma.abs() > params.sigma_tol {
        (DecisionKind::Exploit, update_yielons(yielory, YielonUpdate::Squeeze(sigma), params))
    } else if delta_test(c_norm, params) >= 0.0 {
        (DecisionKind::ExploitSaturated, update_yielons(yielory, YielonUpdate::Saturated, params))
    } else {
        // Flat window of poor credits: look outside, unless the best is
        // already ours or its Yielory is indistinguishable from ours.
        let kind = match best {
            Some(b)
                if &b.algorithm != current
                    && b
                        .yielons
                        .map_or(true, |yb| (yb - yielory.level()).abs() >= params.epsilon) =>
            {
                DecisionKind::ExtrinsicExplore(b.algorithm.clone())
            }
            _ => DecisionKind::IntrinsicExplore,
        };
        (kind, yielory)
    };

    let trigger_level = updated.level();
    let kind = if kind.is_exploration() || updated.level() >= params.upsilon_min {
        kind
    } else {
        DecisionKind::IntrinsicExplore
    };

    if kind.is_exploration() {
        window.clear();
        let decision = SwitchDecision {
            kind,
            yielory_reset: true,
            sigma: Some(sigma),
            trigger_level,
        };
        return (decision, Yielory::initial(params));
    }
    let decision = SwitchDecision {
        kind,
        yielory_reset: false,
        sigma: Some(sigma),
        trigger_level,
    };
    (decision, updated)
}
