//! Search results as flat JSON files, one per run, never overwritten.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assignment::RepeatedAssignment;
use crate::conditions;
use crate::error::{Error, Result};
use crate::search::{SearchConfig, SearchOutcome, SearchStatus};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub config: SearchConfig,
    pub status: String,
    pub witness: Option<RepeatedAssignment>,
    pub nodes: u64,
    pub max_depth: usize,
    pub elapsed_secs: f64,
    pub tool_version: String,
}

impl Record {
    pub fn new(config: &SearchConfig, outcome: &SearchOutcome) -> Self {
        Record {
            config: config.clone(),
            status: outcome.status.name().to_string(),
            witness: outcome.status.witness().cloned(),
            nodes: outcome.nodes_expanded,
            max_depth: outcome.max_depth_reached,
            elapsed_secs: outcome.elapsed.as_secs_f64(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    /// Sat records carry a full-length witness valid for the stored kind;
    /// other records carry none.
    pub fn verify(&self) -> bool {
        match (self.status.as_str(), &self.witness) {
            ("sat", Some(seq)) => {
                seq.n() == self.config.n
                    && seq.len() == self.config.max_days
                    && conditions::is_valid(seq, self.config.kind)
            }
            ("unsat" | "timeout", None) => true,
            _ => false,
        }
    }

    pub fn status(&self) -> Option<SearchStatus> {
        match self.status.as_str() {
            "sat" => self.witness.clone().map(SearchStatus::Sat),
            "unsat" => Some(SearchStatus::Unsat),
            "timeout" => Some(SearchStatus::Timeout),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResultStore {
    dir: PathBuf,
}

impl ResultStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(ResultStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes a new record file `n{n}-{kind}-{seq}.json` and returns its path.
    pub fn append(&self, config: &SearchConfig, outcome: &SearchOutcome) -> Result<PathBuf> {
        let record = Record::new(config, outcome);
        let text = serde_json::to_string_pretty(&record)
            .map_err(|e| Error::Internal(e.to_string()))?;
        let stem = format!("n{}-{}", config.n, config.kind.name());
        for index in 0.. {
            let path = self.dir.join(format!("{stem}-{index:04}.json"));
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut file) => {
                    file.write_all(text.as_bytes())?;
                    file.write_all(b"\n")?;
                    return Ok(path);
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
                Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
            }
        }
        unreachable!()
    }

    /// Every record, in file-name order; fails on any record whose witness
    /// does not re-verify.
    pub fn load_all(&self) -> Result<Vec<(PathBuf, Record)>> {
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        paths
            .into_iter()
            .map(|path| {
                let text = fs::read_to_string(&path)?;
                let record: Record = serde_json::from_str(&text).map_err(|e| Error::Parse {
                    position: format!("{}: line {}, column {}", path.display(), e.line(), e.column()),
                    message: e.to_string(),
                })?;
                if !record.verify() {
                    return Err(Error::InvalidAssignment(format!(
                        "{}: stored {} record does not re-verify",
                        path.display(),
                        record.status
                    )));
                }
                Ok((path, record))
            })
            .collect()
    }

    /// Records for one `(n, kind)`.
    pub fn load(&self, n: usize, kind: conditions::ConditionKind) -> Result<Vec<Record>> {
        Ok(self
            .load_all()?
            .into_iter()
            .map(|(_, r)| r)
            .filter(|r| r.config.n == n && r.config.kind == kind)
            .collect())
    }
}
