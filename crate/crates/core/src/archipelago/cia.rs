use std::collections::BTreeSet;

use super::AlgorithmId;
use crate::error::{CoreError, Result};
use crate::yield_core::BestSnapshot;

/// One island's latest report to the central registry.
#[derive(Debug, Clone, PartialEq)]
pub struct CiaEntry {
    /// The algorithm that earned `perf`.
    pub algorithm: AlgorithmId,
    /// What the island runs now; differs from `algorithm` right after a
    /// switch.
    pub active: AlgorithmId,
    pub yielons: Option<f64>,
    /// Mean normalized credit over the island's window as of its latest
    /// completed instance.
    pub perf: f64,
}

/// Passive registry tracking every island's latest performance, the
/// algorithm that earned it, its Yielon count and what it runs now. The best entry has the highest performance score; ties
/// go to the lowest island index.
#[derive(Debug, Clone, PartialEq)]
pub struct CiaRegistry {
    entries: Vec<Option<CiaEntry>>,
    best: Option<usize>,
}

impl CiaRegistry {
    pub fn new(islands: usize) -> Self {
        Self {
            entries: vec![None; islands],
            best: None,
        }
    }

    pub fn islands(&self) -> usize {
        self.entries.len()
    }

    pub fn report(
        &mut self,
        island: usize,
        algorithm: AlgorithmId,
        yielons: Option<f64>,
        perf: f64,
    ) -> Result<()> {
        let slot = self
            .entries
            .get_mut(island)
            .ok_or(CoreError::UnknownIsland(island))?;
        *slot = Some(CiaEntry {
            active: algorithm.clone(),
            algorithm,
            yielons,
            perf,
        });
        self.best = self
            .entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|e| (i, e.perf)))
            .fold(None, |acc: Option<(usize, f64)>, (i, p)| match acc {
                Some((_, bp)) if bp >= p => acc,
                _ => Some((i, p)),
            })
            .map(|(i, _)| i);
        Ok(())
    }

    /// Records a switch without touching the reported performance.
    pub fn mark_active(&mut self, island: usize, active: AlgorithmId) -> Result<()> {
        match self.entries.get_mut(island) {
            Some(Some(e)) => {
                e.active = active;
                Ok(())
            }
            _ => Err(CoreError::UnknownIsland(island)),
        }
    }

    pub fn entry(&self, island: usize) -> Option<&CiaEntry> {
        self.entries.get(island).and_then(Option::as_ref)
    }

    pub fn entries(&self) -> &[Option<CiaEntry>] {
        &self.entries
    }

    pub fn best_island(&self) -> Option<usize> {
        self.best
    }

    pub fn best_entry(&self) -> Option<&CiaEntry> {
        self.best.and_then(|i| self.entry(i))
    }

    /// The best algorithm and its Yielon count; `None` before any report.
    pub fn query_best(&self) -> Option<BestSnapshot> {
        self.best_entry().map(|e| BestSnapshot {
            algorithm: e.algorithm.clone(),
            yielons: e.yielons,
        })
    }

    /// Every entry whose performance equals the best one's, in island order.
    pub fn tied_best(&self) -> Vec<&CiaEntry> {
        let Some(top) = self.best_entry().map(|e| e.perf) else {
            return Vec::new();
        };
        self.entries.iter().flatten().filter(|e| e.perf == top).collect()
    }

    /// What every island runs now.
    pub fn active_algorithms(&self) -> BTreeSet<AlgorithmId> {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.active.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> AlgorithmId {
        AlgorithmId::new(s)
    }

    #[test]
    fn best_is_argmax() {
        let mut r = CiaRegistry::new(3);
        r.report(0, id("a"), Some(50.0), 70.0).unwrap();
        r.report(1, id("b"), Some(60.0), 90.0).unwrap();
        r.report(2, id("c"), Some(70.0), 80.0).unwrap();
        assert_eq!(r.best_island(), Some(1));
        let best = r.query_best().unwrap();
        assert_eq!(best.algorithm, id("b"));
        assert_eq!(best.yielons, Some(60.0));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let mut r = CiaRegistry::new(3);
        r.report(2, id("c"), None, 80.0).unwrap();
        r.report(1, id("b"), None, 90.0).unwrap();
        r.report(0, id("a"), None, 90.0).unwrap();
        assert_eq!(r.best_island(), Some(0));
    }

    #[test]
    fn singleton_is_its_own_best() {
        let mut r = CiaRegistry::new(1);
        r.report(0, id("a"), Some(10.0), 0.0).unwrap();
        assert_eq!(r.query_best().unwrap().algorithm, id("a"));
    }

    #[test]
    fn empty_registry_has_no_best() {
        let r = CiaRegistry::new(3);
        assert_eq!(r.query_best(), None);
    }

    #[test]
    fn unknown_island_rejected() {
        let mut r = CiaRegistry::new(2);
        assert!(matches!(r.report(2, id("a"), None, 1.0), Err(CoreError::UnknownIsland(2))));
    }

    #[test]
    fn overwrite_recomputes_best() {
        let mut r = CiaRegistry::new(2);
        r.report(0, id("a"), None, 90.0).unwrap();
        r.report(1, id("b"), None, 80.0).unwrap();
        r.report(0, id("a"), None, 10.0).unwrap();
        assert_eq!(r.best_island(), Some(1));
        assert_eq!(r.active_algorithms().len(), 2);
    }
}
