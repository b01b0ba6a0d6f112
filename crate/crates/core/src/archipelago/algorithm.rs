use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Stable algorithm identifier such as `sorting/quick` or `rl/sarsa/a0.7`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgorithmId(String);

impl AlgorithmId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for AlgorithmId {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Self::new(s))
    }
}

impl From<&str> for AlgorithmId {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

/// Ordered, duplicate-free, non-empty set of algorithms available on an island.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repertoire {
    algorithms: Vec<AlgorithmId>,
}

impl Repertoire {
    pub fn new(algorithms: impl IntoIterator<Item = AlgorithmId>) -> Result<Self> {
        let mut out: Vec<AlgorithmId> = Vec::new();
        for a in algorithms {
            if out.contains(&a) {
                return Err(CoreError::InvalidRepertoire(format!("duplicate algorithm `{a}`")));
            }
            out.push(a);
        }
        if out.is_empty() {
            return Err(CoreError::InvalidRepertoire("repertoire is empty".into()));
        }
        Ok(Self { algorithms: out })
    }

    pub fn contains(&self, algo: &AlgorithmId) -> bool {
        self.algorithms.contains(algo)
    }

    /// Adds `algo` if absent. Returns whether the repertoire grew.
    pub fn insert(&mut self, algo: AlgorithmId) -> bool {
        if self.contains(&algo) {
            return false;
        }
        self.algorithms.push(algo);
        true
    }

    pub fn len(&self) -> usize {
        self.algorithms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algorithms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AlgorithmId> {
        self.algorithms.iter()
    }

    pub fn as_slice(&self) -> &[AlgorithmId] {
        &self.algorithms
    }
}
