//! JSON-lines cache of search records.
//!
//! `records.jsonl` holds one record per `(n, k, p, mode)`. Loading re-checks
//! every witness of the requested record; a record that fails, or a line
//! that does not parse, is moved to `quarantine.jsonl` with the reason.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::record::{Mode, SearchRecord, Value};
use super::sweep::WITNESS_TOL;
use crate::containment::{cycle_power_matcher, is_free, ContainmentOptions, Outcome};
use crate::error::{Error, Result};
use crate::graph::graph6;
use crate::spectral::{spectral_radius, DEFAULT_TOL};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const QUARANTINE_FILE: &str = "quarantine.jsonl";

#[derive(Debug, Serialize, Deserialize)]
pub struct QuarantineEntry {
    pub reason: String,
    pub line: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn records_path(&self) -> PathBuf {
        self.dir.join(RECORDS_FILE)
    }

    pub fn quarantine_path(&self) -> PathBuf {
        self.dir.join(QUARANTINE_FILE)
    }

    fn lines(&self) -> Result<Vec<String>> {
        match fs::read_to_string(self.records_path()) {
            Ok(s) => Ok(s
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(str::to_owned)
                .collect()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
            Err(e) => Err(e.into()),
        }
    }

    fn write_lines(&self, lines: &[String]) -> Result<()> {
        let tmp = self.dir.join(format!("{RECORDS_FILE}.tmp"));
        let mut body = lines.join("\n");
        if !body.is_empty() {
            body.push('\n');
        }
        fs::write(&tmp, body)?;
        fs::rename(tmp, self.records_path())?;
        Ok(())
    }

    fn quarantine(&self, line: &str, reason: &str) -> Result<()> {
        let entry = QuarantineEntry {
            reason: reason.to_owned(),
            line: line.to_owned(),
        };
        let mut f = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.quarantine_path())?;
        writeln!(f, "{}", serde_json::to_string(&entry)?)?;
        Ok(())
    }

    /// Stores `rec`, replacing any record with the same key.
    pub fn store(&self, rec: &SearchRecord) -> Result<()> {
        let key = rec.key();
        let mut lines: Vec<String> = self
            .lines()?
            .into_iter()
            .filter(|l| serde_json::from_str::<SearchRecord>(l).map_or(true, |r| r.key() != key))
            .collect();
        lines.push(serde_json::to_string(rec)?);
        self.write_lines(&lines)
    }

    /// The stored record for the key after re-validation, `Ok(None)` when
    /// there is none, and [`Error::CorruptRecord`] when it fails validation.
    pub fn load(&self, n: usize, k: usize, p: usize, mode: Mode) -> Result<Option<SearchRecord>> {
        let lines = self.lines()?;
        let mut keep = Vec::with_capacity(lines.len());
        let mut found = None;
        let mut failure = None;
        for line in lines {
            match serde_json::from_str::<SearchRecord>(&line) {
                Err(e) => self.quarantine(&line, &format!("unparseable: {e}"))?,
                Ok(rec) if rec.key() == (n, k, p, mode) => match validate_record(&rec) {
                    Ok(()) => {
                        found = Some(rec);
                        keep.push(line);
                    }
                    Err(reason) => {
                        self.quarantine(&line, &reason)?;
                        failure = Some(reason);
                    }
                },
                Ok(_) => keep.push(line),
            }
        }
        if keep.len() != self.lines()?.len() {
            self.write_lines(&keep)?;
        }
        match (found, failure) {
            (Some(rec), _) => Ok(Some(rec)),
            (None, Some(reason)) => Err(Error::CorruptRecord(reason)),
            (None, None) => Ok(None),
        }
    }
}

/// Checks that every witness is an `n`-vertex `C_k^p`-free graph attaining
/// the value, and for exhaustive spex records that it is edge-maximal.
pub fn validate_record(rec: &SearchRecord) -> std::result::Result<(), String> {
    if rec.witnesses.is_empty() {
        return Err("record has no witnesses".into());
    }
    match (rec.mode, rec.value) {
        (Mode::Ex, Value::Edges(_)) | (Mode::Spex, Value::Radius(_)) => {}
        (mode, value) => return Err(format!("value {value} does not fit mode {mode}")),
    }
    if rec.k < 3 || rec.p == 0 {
        return Err(format!("invalid pattern C_{}^{}", rec.k, rec.p));
    }
    for w in &rec.witnesses {
        let g = graph6::decode(w).map_err(|e| format!("witness {w:?}: {e}"))?;
        if g.order() != rec.n {
            return Err(format!(
                "witness {w:?} has {} vertices, expected {}",
                g.order(),
                rec.n
            ));
        }
        if !is_free(&g, rec.k, rec.p) {
            return Err(format!("witness {w:?} contains C_{}^{}", rec.k, rec.p));
        }
        match rec.value {
            Value::Edges(e) => {
                if g.edge_count() as u64 != e {
                    return Err(format!(
                        "witness {w:?} has {} edges, record says {e}",
                        g.edge_count()
                    ));
                }
            }
            Value::Radius(l) => {
                let got = spectral_radius(&g, DEFAULT_TOL)
                    .map_err(|e| e.to_string())?
                    .lambda;
                if (got - l).abs() > WITNESS_TOL {
                    return Err(format!(
                        "witness {w:?} has spectral radius {got}, record says {l}"
                    ));
                }
                if rec.exhaustive && !is_edge_maximal(&g, rec.k, rec.p) {
                    return Err(format!("witness {w:?} is not edge-maximal"));
                }
            }
        }
    }
    Ok(())
}

/// Adding any missing edge creates a copy of `C_k^p`.
pub fn is_edge_maximal(g: &crate::Graph, k: usize, p: usize) -> bool {
    let m = cycle_power_matcher(k, p);
    let n = g.order();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            if g.has_edge(u, v) {
                return true;
            }
            let mut h = g.clone();
            h.add_edge(u, v);
            matches!(
                m.find_through_edge(&h, u, v, ContainmentOptions::default()),
                Outcome::Found(_)
            )
        })
    })
}
