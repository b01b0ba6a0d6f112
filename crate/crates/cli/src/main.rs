//! `yielon`: run and compare latent-yield switching experiments.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use yielon_core::harness::{
    build_executors, compare_regimes, generate_world, load_config, run_experiment_with, write_plotdata,
    write_summary, Domain, ExperimentConfig, TraceWriter,
};
use yielon_core::Regime;

#[derive(Parser)]
#[command(name = "yielon", version, about = "Latent-yield adaptive algorithm switching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write trace.csv, summary.json and plot data.
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run configs over several seeds and print a regime x island table.
    /// A single config is expanded to all four regimes unless --regime is
    /// given.
    Compare {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Number of consecutive seeds, starting at --seed (or the config's).
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print the default config as TOML.
    DumpDefaults {
        #[arg(long, default_value = "sorting")]
        domain: Domain,
    },
}

#[derive(Args, Default)]
struct Overrides {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    episodes: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// greedy, greedy-g, yielory or yielory-g.
    #[arg(long)]
    regime: Option<Regime>,
    /// Lock-step rounds with reproducible output. Pass `false` for
    /// free-running islands.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    deterministic: Option<bool>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(e) = self.episodes {
            cfg.episodes = e;
        }
        if let Some(o) = &self.out {
            cfg.output = o.clone();
        }
        if let Some(r) = self.regime {
            cfg.regime = r;
        }
        if let Some(d) = self.deterministic {
            cfg.deterministic = d;
        }
    }
}

fn load(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = load_config(path).with_context(|| format!("loading {}", path.display()))?;
    overrides.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

fn run(cfg: &ExperimentConfig) -> Result<()> {
    let dir = &cfg.output;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut trace = TraceWriter::create(dir.join("trace.csv"))?;
    let out = run_experiment_with(cfg, build_executors(cfg)?, &mut |r| trace.write(r))?;
    trace.flush()?;
    write_summary(&out.summary, dir)?;
    write_plotdata(&out.records, cfg.islands.len(), dir)?;
    if cfg.domain == Domain::Gridworld {
        for i in 0..cfg.islands.len() {
            let path = dir.join(format!("world_{i}.txt"));
            fs::write(&path, generate_world(cfg, i)?.to_string())
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }

    let s = &out.summary;
    println!(
        "{} / {} / seed {} / {} episodes{}",
        s.domain,
        s.regime.label(),
        s.seed,
        s.episodes,
        if s.deterministic { "" } else { " (free-running, not reproducible)" }
    );
    println!("{:>8} {:>12} {:>9} {:>10} {:>10} {:>10}", "island", "credits", "switches", "intrinsic", "extrinsic", "g_special");
    for i in &s.islands {
        println!(
            "{:>8} {:>12.1} {:>9} {:>10} {:>10} {:>10}",
            i.island + 1,
            i.credits,
            i.switches,
            i.intrinsic,
            i.extrinsic,
            i.g_special
        );
    }
    println!("outputs in {}", dir.display());
    if let Some(e) = &s.error {
        bail!("run aborted, partial trace kept: {e}");
    }
    Ok(())
}

fn compare(paths: &[PathBuf], seeds: u64, overrides: &Overrides) -> Result<()> {
    let mut configs = paths.iter().map(|p| load(p, overrides)).collect::<Result<Vec<_>>>()?;
    if configs.len() == 1 && overrides.regime.is_none() {
        let base = configs.remove(0);
        configs = Regime::ALL
            .iter()
            .map(|&r| ExperimentConfig { regime: r, ..base.clone() })
            .collect();
    }
    let start = configs[0].seed;
    let seeds: Vec<u64> = (0..seeds).map(|k| start.wrapping_add(k)).collect();
    let table = compare_regimes(&configs, &seeds)?;
    print!("{table}");
    if let Some(dir) = &overrides.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("comparison.json");
        fs::write(&path, format!("{}\n", table.to_json())).with_context(|| format!("writing {}", path.display()))?;
        println!("comparison written to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, overrides } => load(config, overrides).and_then(|c| run(&c)),
        Command::Compare {
            configs,
            seeds,
            overrides,
        } => compare(configs, *seeds, overrides),
        Command::DumpDefaults { domain } => {
            print!("{}", ExperimentConfig::defaults_for(*domain).to_toml_string());
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
