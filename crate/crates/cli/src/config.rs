use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::ArgMatches;
use serde::Serialize;

pub const DEFAULT_CACHE_DIR: &str = "cpl-cache";

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Flag,
    Env,
    Default,
}

fn source(m: &ArgMatches, id: &str) -> Source {
    match m.value_source(id) {
        Some(ValueSource::CommandLine) => Source::Flag,
        Some(ValueSource::EnvVariable) => Source::Env,
        _ => Source::Default,
    }
}

/// Resolved settings with where each came from: flag, then environment, then
/// the built-in default.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Config {
    pub tol: f64,
    pub tol_source: Source,
    pub cache_dir: PathBuf,
    pub cache_dir_source: Source,
    pub parallel: bool,
}

impl Config {
    pub fn resolve(m: &ArgMatches, tol: f64, cache_dir: Option<PathBuf>) -> Config {
        let cache_dir_source = source(m, "cache_dir");
        Config {
            tol,
            tol_source: source(m, "tol"),
            cache_dir: cache_dir.unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR)),
            cache_dir_source,
            parallel: cpl_core::par::Execution::default().is_parallel(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serialises")
    }
}
