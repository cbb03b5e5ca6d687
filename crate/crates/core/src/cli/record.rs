//! Self-describing run records and the append-only JSONL cache.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::characters::character_theorem4;
use crate::locus::{pole_structure, NumericsConfig, RootEntry};
use crate::moser::{build_moser, eigenvalues, hessian_k, SpectrumReport};
use crate::{Error, Partition, Result};

/// Rounded spectrum and its largest rounding residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub rounded: Vec<i64>,
    pub residual: f64,
}

impl From<&SpectrumReport> for SpectrumSummary {
    fn from(r: &SpectrumReport) -> Self {
        SpectrumSummary {
            rounded: r.rounded.clone(),
            residual: r.residual,
        }
    }
}

/// Everything measured for one partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub version: String,
    pub partition: Partition,
    pub tolerances: NumericsConfig,
    pub degree: usize,
    pub roots: Vec<RootEntry>,
    pub locus_residual: Option<f64>,
    /// Spectrum of Moser's matrix; absent when `W_λ` has a multiple root.
    pub spec_m: Option<SpectrumSummary>,
    /// Spectrum of the Hessian; absent when `W_λ` has a multiple root.
    pub spec_k: Option<SpectrumSummary>,
    /// SHA-256 of the character's JSON encoding.
    pub character_digest: String,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
}

/// Cache key: partition, tolerances and tool version.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecordKey(String);

impl RecordKey {
    pub fn new(lambda: &Partition, cfg: &NumericsConfig) -> Self {
        let tol = serde_json::to_string(cfg).expect("plain data serializes");
        RecordKey(format!("{lambda}|{tol}|{}", crate::VERSION))
    }
}

impl RunRecord {
    pub fn key(&self) -> RecordKey {
        RecordKey::new(&self.partition, &self.tolerances)
    }

    /// One JSON line, without the trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse(format!("run record: {e}")))
    }
}

fn unix_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

pub fn character_digest(lambda: &Partition) -> String {
    let json = serde_json::to_string(&character_theorem4(lambda)).expect("plain data serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// Runs the numerical pipeline for `λ` and records the measurements.
///
/// Spectra are recorded as measured; comparing them with the combinatorial
/// predictions is left to the caller.
pub fn compute_record(lambda: &Partition, cfg: &NumericsConfig) -> Result<RunRecord> {
    let started = unix_ms();
    let conf = pole_structure(lambda, cfg)?;
    let (spec_m, spec_k) = if conf.is_simple() {
        let m = build_moser(&conf.roots)?.m;
        let sm = SpectrumReport::from_eigenvalues(None, eigenvalues(&m, cfg)?);
        let sk = SpectrumReport::from_eigenvalues(None, eigenvalues(&hessian_k(&conf.roots)?, cfg)?);
        (Some((&sm).into()), Some((&sk).into()))
    } else {
        (None, None)
    };
    Ok(RunRecord {
        version: crate::VERSION.to_string(),
        partition: lambda.clone(),
        tolerances: cfg.clone(),
        degree: conf.degree(),
        roots: conf
            .roots
            .iter()
            .zip(&conf.multiplicities)
            .map(|(z, &multiplicity)| RootEntry {
                re: z.re,
                im: z.im,
                multiplicity,
            })
            .collect(),
        locus_residual: conf.locus_residual,
        spec_m,
        spec_k,
        character_digest: character_digest(lambda),
        started_unix_ms: started,
        finished_unix_ms: unix_ms(),
    })
}

/// Append-only JSONL file of [`RunRecord`]s.
#[derive(Clone, Debug)]
pub struct RunCache {
    path: PathBuf,
}

impl RunCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        RunCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records in file order; a missing file is an empty cache.
    pub fn load(&self) -> Result<Vec<RunRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(io_error(&self.path, e)),
        };
        let mut out = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| io_error(&self.path, e))?;
            if !line.trim().is_empty() {
                out.push(RunRecord::from_json_line(&line)?);
            }
        }
        Ok(out)
    }

    /// Latest record per key.
    pub fn index(&self) -> Result<HashMap<RecordKey, RunRecord>> {
        Ok(self.load()?.into_iter().map(|r| (r.key(), r)).collect())
    }

    pub fn append(&self, records: &[RunRecord]) -> Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| io_error(&self.path, e))?;
        let mut buf = String::new();
        for r in records {
            buf.push_str(&r.to_json_line());
            buf.push('\n');
        }
        file.write_all(buf.as_bytes()).map_err(|e| io_error(&self.path, e))
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidConfig(format!("{}: {e}", path.display()))
}
