use std::collections::{BTreeMap, VecDeque};

use crate::archipelago::AlgorithmId;
use crate::error::{CoreError, Result};

/// Per-algorithm running maximum of raw credit, as observed by one agent.
///
/// Maxima persist across switches: coming back to an algorithm compares it
/// against everything it has ever done on this island.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormalizationState {
    best: BTreeMap<AlgorithmId, f64>,
}

impl NormalizationState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn best(&self, algo: &AlgorithmId) -> Option<f64> {
        self.best.get(algo).copied()
    }

    /// Folds `raw` into the running maximum for `algo` and returns
    /// `raw / max * 100`. The first instance of an algorithm, and any new
    /// best, score exactly 100.
    pub fn normalize(&mut self, algo: &AlgorithmId, raw: f64) -> Result<f64> {
        if !(raw.is_finite() && raw > 0.0) {
            return Err(CoreError::InvalidCredit(raw));
        }
        let max = self.best.entry(algo.clone()).or_insert(raw);
        if raw >= *max {
            *max = raw;
            return Ok(100.0);
        }
        Ok(raw / *max * 100.0)
    }

    /// Like [`normalize`](Self::normalize), but a raw credit of exactly zero
    /// maps to a normalized credit of zero and leaves the maxima untouched.
    /// Domains whose credit is a count (the gridworld) produce zeros.
    pub fn normalize_or_zero(&mut self, algo: &AlgorithmId, raw: f64) -> Result<f64> {
        if raw == 0.0 {
            return Ok(0.0);
        }
        self.normalize(algo, raw)
    }
}

pub fn normalize_credit(raw: f64, state: &mut NormalizationState, algo: &AlgorithmId) -> Result<f64> {
    state.normalize(algo, raw)
}

/// Sliding window over the most recent normalized credits.
#[derive(Debug, Clone, PartialEq)]
pub struct CreditWindow {
    entries: VecDeque<f64>,
    capacity: usize,
}

impl CreditWindow {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "window capacity must be positive");
        Self {
            entries: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn from_credits(capacity: usize, credits: &[f64]) -> Result<Self> {
        let mut w = Self::new(capacity);
        for &c in credits {
            w.push(c)?;
        }
        Ok(w)
    }

    /// Appends a credit, evicting the oldest one when full.
    pub fn push(&mut self, credit: f64) -> Result<()> {
        if !(0.0..=100.0).contains(&credit) {
            return Err(CoreError::CreditOutOfRange(credit));
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back(credit);
        Ok(())
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().copied()
    }

    pub fn last(&self) -> Option<f64> {
        self.entries.back().copied()
    }

    /// Mean of the credits currently held; zero for an empty window.
    pub fn mean(&self) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        self.entries.iter().sum::<f64>() / self.entries.len() as f64
    }
}

/// Mean of consecutive differences over the window. `None` while fewer than
/// two credits are held.
pub fn squeezing_factor(window: &CreditWindow) -> Option<f64> {
    let n = window.len();
    if n < 2 {
        return None;
    }
    let total: f64 = window
        .entries
        .iter()
        .zip(window.entries.iter().skip(1))
        .map(|(prev, next)| next - prev)
        .sum();
    Some(total / (n - 1) as f64)
}
