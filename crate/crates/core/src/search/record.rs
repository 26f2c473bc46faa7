use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Maximum edge count.
    Ex,
    /// Maximum spectral radius.
    Spex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ex => "ex",
            Mode::Spex => "spex",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ex" => Ok(Mode::Ex),
            "spex" => Ok(Mode::Spex),
            other => Err(format!("unknown mode {other:?}, expected ex or spex")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Edges(u64),
    Radius(f64),
}

impl Value {
    pub fn as_f64(self) -> f64 {
        match self {
            Value::Edges(e) => e as f64,
            Value::Radius(l) => l,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Edges(e) => write!(f, "{e}"),
            Value::Radius(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchRecord {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub mode: Mode,
    pub value: Value,
    /// graph6 strings, canonically labelled for exhaustive records.
    pub witnesses: Vec<String>,
    /// The value is optimal over all `n`-vertex `C_k^p`-free graphs.
    pub exhaustive: bool,
    pub method: String,
    /// Seconds.
    pub wall_time: f64,
}

impl SearchRecord {
    pub fn key(&self) -> (usize, usize, usize, Mode) {
        (self.n, self.k, self.p, self.mode)
    }

    /// Equality ignoring the wall time.
    pub fn same_result(&self, other: &SearchRecord) -> bool {
        SearchRecord {
            wall_time: 0.0,
            ..self.clone()
        } == SearchRecord {
            wall_time: 0.0,
            ..other.clone()
        }
    }
}
