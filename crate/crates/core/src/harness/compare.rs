use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::Regime;
use crate::error::{CoreError, Result};

use super::config::{Domain, ExperimentConfig};
use super::run::run_experiment;

/// Mean and spread of one quantity over seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub mean: f64,
    /// Sample standard deviation; zero for a single seed.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl CellStats {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        if xs.is_empty() {
            return Self {
                mean: 0.0,
                std: 0.0,
                min: 0.0,
                max: 0.0,
            };
        }
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            std,
            min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonCell {
    pub island: usize,
    pub credits: CellStats,
    pub switches: CellStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub regime: Regime,
    pub islands: Vec<ComparisonCell>,
}

/// Regime x island matrix of credits and switches over seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub domain: Domain,
    pub episodes: usize,
    pub seeds: Vec<u64>,
    pub rows: Vec<ComparisonRow>,
}

/// Runs every config under every seed (seeds override the configs' own)
/// and aggregates per regime and island. Configs must share a domain and
/// an island count.
pub fn compare_regimes(configs: &[ExperimentConfig], seeds: &[u64]) -> Result<Comparison> {
    let first = configs
        .first()
        .ok_or_else(|| CoreError::config("configs", "nothing to compare"))?;
    if seeds.is_empty() {
        return Err(CoreError::config("seeds", "at least one seed is required"));
    }
    for c in configs {
        if c.domain != first.domain {
            return Err(CoreError::config(
                "domain",
                format!("cannot compare {} with {}", first.domain, c.domain),
            ));
        }
        if c.islands.len() != first.islands.len() {
            return Err(CoreError::config(
                "islands",
                format!("cannot compare {} islands with {}", first.islands.len(), c.islands.len()),
            ));
        }
        c.validate()?;
    }

    let jobs: Vec<(usize, u64)> = (0..configs.len())
        .flat_map(|c| seeds.iter().map(move |&s| (c, s)))
        .collect();
    let summaries = jobs
        .par_iter()
        .map(|&(c, seed)| {
            let mut cfg = configs[c].clone();
            cfg.seed = seed;
            cfg.deterministic = true;
            let out = run_experiment(&cfg)?;
            match out.summary.error {
                Some(e) => Err(CoreError::Domain {
                    island: usize::MAX,
                    episode: cfg.episodes,
                    reason: format!("seed {seed}: {e}"),
                }),
                None => Ok(out.summary),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let n = first.islands.len();
    let rows = configs
        .iter()
        .enumerate()
        .map(|(c, cfg)| {
            let runs = &summaries[c * seeds.len()..(c + 1) * seeds.len()];
            let islands = (0..n)
                .map(|i| {
                    let credits: Vec<f64> = runs.iter().map(|s| s.islands[i].credits).collect();
                    let switches: Vec<f64> = runs.iter().map(|s| s.islands[i].switches as f64).collect();
                    ComparisonCell {
                        island: i,
                        credits: CellStats::from_samples(&credits),
                        switches: CellStats::from_samples(&switches),
                    }
                })
                .collect();
            ComparisonRow {
                regime: cfg.regime,
                islands,
            }
        })
        .collect();
    Ok(Comparison {
        domain: first.domain,
        episodes: first.episodes,
        seeds: seeds.to_vec(),
        rows,
    })
}

impl Comparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison is always serializable")
    }
}

impl fmt::Display for Comparison {
    /// Plain-text table, one row per regime, `mean ± std` per island.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rows.first().map_or(0, |r| r.islands.len());
        let mut header = format!("{:<30}", "regime");
        for i in 0..n {
            let _ = write!(header, " | {:>21} {:>15}", format!("I{} credits", i + 1), "switches");
        }
        writeln!(
            f,
            "{} over {} seed(s), {} episodes",
            self.domain,
            self.seeds.len(),
            self.episodes
        )?;
        writeln!(f, "{header}")?;
        for row in &self.rows {
            write!(f, "{:<30}", row.regime.label())?;
            for c in &row.islands {
                write!(
                    f,
                    " | {:>12.1} ± {:<6.1} {:>7.1} ± {:<5.1}",
                    c.credits.mean, c.credits.std, c.switches.mean, c.switches.std
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_by_hand() {
        let s = CellStats::from_samples(&[1.0, 2.0, 3.0, 6.0]);
        assert_eq!(s.mean, 3.0);
        assert!((s.std - (14.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!((s.min, s.max), (1.0, 6.0));
        assert_eq!(CellStats::from_samples(&[4.0]).std, 0.0);
    }

    #[test]
    fn four_regimes_give_twelve_cells() {
        let configs: Vec<_> = Regime::ALL
            .iter()
            .map(|&r| {
                let mut c = ExperimentConfig::default();
                c.regime = r;
                c.episodes = 30;
                c
            })
            .collect();
        let cmp = compare_regimes(&configs, &[1, 2, 3]).unwrap();
        assert_eq!(cmp.rows.len(), 4);
        assert_eq!(cmp.rows.iter().map(|r| r.islands.len()).sum::<usize>(), 12);
        assert!(cmp.to_string().contains("With Yielory and G-Island"));
        let single = compare_regimes(&configs[..1], &[1]).unwrap();
        assert_eq!(single.rows.len(), 1);
    }

    #[test]
    fn mismatched_domains_rejected() {
        let a = ExperimentConfig::default();
        let b = ExperimentConfig::defaults_for(Domain::Gridworld);
        assert!(matches!(
            compare_regimes(&[a, b], &[1]),
            Err(CoreError::Config { field, .. }) if field == "domain"
        ));
    }
}
