use std::fs::{self, File};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::archipelago::AlgorithmId;
use crate::error::{CoreError, Result};

use super::record::{EpisodeRecord, RunSummary};

pub const TRACE_HEADER: &str =
    "episode,island,algorithm,phase,raw_credit,norm_credit,sigma,yielons,decision,switch,exploration";

/// One trace.csv row. Empty `sigma` / `yielons` cells mean undefined.
#[derive(Debug, Serialize, Deserialize)]
struct TraceRow {
    episode: usize,
    island: usize,
    algorithm: String,
    phase: String,
    raw_credit: f64,
    norm_credit: f64,
    sigma: Option<f64>,
    yielons: Option<f64>,
    decision: String,
    switch: u8,
    exploration: String,
}

impl From<&EpisodeRecord> for TraceRow {
    fn from(r: &EpisodeRecord) -> Self {
        Self {
            episode: r.episode,
            island: r.island,
            algorithm: r.algorithm.to_string(),
            phase: r.phase.clone(),
            raw_credit: r.raw_credit,
            norm_credit: r.norm_credit,
            sigma: r.sigma,
            yielons: r.yielons,
            decision: r.decision.to_string(),
            switch: r.switched as u8,
            exploration: r.exploration.to_string(),
        }
    }
}

impl TraceRow {
    fn into_record(self) -> std::result::Result<EpisodeRecord, String> {
        Ok(EpisodeRecord {
            episode: self.episode,
            island: self.island,
            algorithm: AlgorithmId::new(self.algorithm),
            phase: self.phase,
            raw_credit: self.raw_credit,
            norm_credit: self.norm_credit,
            sigma: self.sigma,
            yielons: self.yielons,
            decision: self.decision.parse()?,
            switched: match self.switch {
                0 => false,
                1 => true,
                other => return Err(format!("switch flag must be 0 or 1, got {other}")),
            },
            exploration: self.exploration.parse()?,
        })
    }
}

#[derive(Debug, Serialize)]
struct PlotRow<'a> {
    episode: usize,
    normalized_credit: f64,
    yielon_count: Option<f64>,
    switch_marker: u8,
    phase_label: &'a str,
}

fn csv_err(path: &Path, e: csv::Error) -> CoreError {
    CoreError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Streams records into a trace.csv file.
pub struct TraceWriter {
    path: PathBuf,
    inner: csv::Writer<File>,
}

impl TraceWriter {
    pub fn create(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let file = File::create(&path).map_err(|e| CoreError::io(&path, e))?;
        let mut inner = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        inner
            .write_record(TRACE_HEADER.split(','))
            .map_err(|e| csv_err(&path, e))?;
        let mut w = Self { path, inner };
        w.flush()?;
        Ok(w)
    }

    pub fn write(&mut self, record: &EpisodeRecord) -> Result<()> {
        self.inner
            .serialize(TraceRow::from(record))
            .map_err(|e| csv_err(&self.path, e))
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush().map_err(|e| CoreError::io(&self.path, e))
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CoreError::io(dir, e))
}

pub fn write_summary(summary: &RunSummary, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    let path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(summary).expect("summary is always serializable");
    text.push('\n');
    fs::write(&path, text).map_err(|e| CoreError::io(&path, e))
}

/// One `plot_island_<i>.csv` per island.
pub fn write_plotdata(records: &[EpisodeRecord], islands: usize, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    for island in 0..islands {
        let path = dir.join(format!("plot_island_{island}.csv"));
        let file = File::create(&path).map_err(|e| CoreError::io(&path, e))?;
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        w.write_record(["episode", "normalized_credit", "yielon_count", "switch_marker", "phase_label"])
            .map_err(|e| csv_err(&path, e))?;
        for r in records.iter().filter(|r| r.island == island) {
            w.serialize(PlotRow {
                episode: r.episode,
                normalized_credit: r.norm_credit,
                yielon_count: r.yielons,
                switch_marker: r.switched as u8,
                phase_label: &r.phase,
            })
            .map_err(|e| csv_err(&path, e))?;
        }
        w.flush().map_err(|e| CoreError::io(&path, e))?;
    }
    Ok(())
}

/// Writes trace.csv, summary.json and the per-island plot data into `dir`.
pub fn write_outputs(records: &[EpisodeRecord], summary: &RunSummary, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    let mut trace = TraceWriter::create(dir.join("trace.csv"))?;
    for r in records {
        trace.write(r)?;
    }
    trace.flush()?;
    write_summary(summary, dir)?;
    write_plotdata(records, summary.islands.len(), dir)
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<Vec<EpisodeRecord>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = reader.headers().map_err(|e| csv_err(path, e))?;
    if header.iter().collect::<Vec<_>>().join(",") != TRACE_HEADER {
        return Err(CoreError::Format {
            path: path.to_path_buf(),
            message: format!("unexpected header, expected `{TRACE_HEADER}`"),
        });
    }
    reader
        .deserialize::<TraceRow>()
        .enumerate()
        .map(|(n, row)| {
            row.map_err(|e| csv_err(path, e))?
                .into_record()
                .map_err(|message| CoreError::Format {
                    path: path.to_path_buf(),
                    message: format!("row {}: {message}", n + 1),
                })
        })
        .collect()
}
