use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::DataKind;
use crate::error::{CoreError, Result};

/// Half-open episode span `[start, end)` fed with one data kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSpan {
    pub kind: DataKind,
    pub start: usize,
    pub end: usize,
}

/// Which data kind an island's randomizer produces at each episode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSchedule {
    spans: Vec<PhaseSpan>,
}

impl PhaseSchedule {
    /// Spans must be non-empty, contiguous and start at episode 0.
    pub fn new(spans: Vec<PhaseSpan>) -> Result<Self> {
        if spans.is_empty() {
            return Err(CoreError::InvalidSchedule("no phases".into()));
        }
        let mut expected = 0;
        for s in &spans {
            if s.start != expected {
                return Err(CoreError::InvalidSchedule(format!(
                    "phase starting at {} leaves a gap or overlap (expected {expected})",
                    s.start
                )));
            }
            if s.end <= s.start {
                return Err(CoreError::InvalidSchedule(format!(
                    "phase [{}, {}) is empty",
                    s.start, s.end
                )));
            }
            expected = s.end;
        }
        Ok(Self { spans })
    }

    /// Every data kind once, in random order, splitting `episodes` into
    /// near-equal consecutive phases.
    pub fn random<R: Rng + ?Sized>(episodes: usize, rng: &mut R) -> Self {
        let mut kinds = DataKind::ALL;
        kinds.shuffle(rng);
        Self::even(episodes, &kinds)
    }

    /// Consecutive near-equal phases in the given order.
    pub fn even(episodes: usize, kinds: &[DataKind]) -> Self {
        let n = kinds.len().max(1);
        let total = episodes.max(n);
        let spans = kinds
            .iter()
            .enumerate()
            .map(|(i, &kind)| PhaseSpan {
                kind,
                start: total * i / n,
                end: total * (i + 1) / n,
            })
            .collect();
        Self { spans }
    }

    pub fn spans(&self) -> &[PhaseSpan] {
        &self.spans
    }

    /// End of the last phase.
    pub fn len(&self) -> usize {
        self.spans.last().map_or(0, |s| s.end)
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Kind whose span contains `episode`; past the end, the last kind.
    pub fn kind_at(&self, episode: usize) -> DataKind {
        self.spans
            .iter()
            .find(|s| (s.start..s.end).contains(&episode))
            .or(self.spans.last())
            .map(|s| s.kind)
            .expect("schedule has at least one phase")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_split_is_three_hundreds() {
        let s = PhaseSchedule::even(300, &[DataKind::RandS, DataKind::AlmoS, DataKind::RandL]);
        let bounds: Vec<(usize, usize)> = s.spans().iter().map(|p| (p.start, p.end)).collect();
        assert_eq!(bounds, vec![(0, 100), (100, 200), (200, 300)]);
        assert_eq!(s.kind_at(0), DataKind::RandS);
        assert_eq!(s.kind_at(99), DataKind::RandS);
        assert_eq!(s.kind_at(100), DataKind::AlmoS);
        assert_eq!(s.kind_at(299), DataKind::RandL);
        assert_eq!(s.kind_at(1000), DataKind::RandL);
    }

    #[test]
    fn random_schedules_differ_by_seed() {
        let orders: std::collections::HashSet<Vec<DataKind>> = (0..20)
            .map(|seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                PhaseSchedule::random(300, &mut rng).spans().iter().map(|s| s.kind).collect()
            })
            .collect();
        assert!(orders.len() > 1);
    }

    #[test]
    fn rejects_gaps_and_empty_spans() {
        let k = DataKind::RandS;
        assert!(PhaseSchedule::new(vec![]).is_err());
        assert!(PhaseSchedule::new(vec![PhaseSpan { kind: k, start: 1, end: 5 }]).is_err());
        assert!(PhaseSchedule::new(vec![
            PhaseSpan { kind: k, start: 0, end: 5 },
            PhaseSpan { kind: k, start: 6, end: 9 }
        ])
        .is_err());
        assert!(PhaseSchedule::new(vec![PhaseSpan { kind: k, start: 0, end: 0 }]).is_err());
        assert!(PhaseSchedule::new(vec![PhaseSpan { kind: k, start: 0, end: 3 }]).is_ok());
    }

    #[test]
    fn even_spans_partition_odd_lengths() {
        let s = PhaseSchedule::even(500, &DataKind::ALL);
        assert_eq!(s.len(), 500);
        assert!(PhaseSchedule::new(s.spans().to_vec()).is_ok());
    }
}
