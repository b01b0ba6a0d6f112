//! The latent-yield mathematics: credit normalization, the squeezing factor,
//! Yielon dynamics and the per-instance switch decision.

mod credit;
mod decision;
mod params;
mod yielory;

pub use credit::{normalize_credit, squeezing_factor, CreditWindow, NormalizationState};
pub use decision::{decide, BestSnapshot, DecisionKind, SwitchDecision};
pub use params::YieldParams;
pub use yielory::{delta_test, update_yielons, YielonUpdate, Yielory};
