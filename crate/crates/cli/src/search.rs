use cpl_core::search::{
    ex_bruteforce, hillclimb_spex_with, spex_bruteforce, Cache, HillclimbOptions, Mode,
    SearchRecord,
};
use cpl_core::{Error, Result};

use crate::config::Config;

pub struct SearchArgs {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub heuristic: bool,
    pub seed: u64,
    pub starts: usize,
    pub steps: usize,
    pub use_cache: bool,
}

pub struct SearchOutcome {
    pub record: SearchRecord,
    pub cached: bool,
    /// Problems met while reading the cache; the record was recomputed.
    pub warnings: Vec<String>,
}

fn hillclimb_options(args: &SearchArgs, config: &Config) -> HillclimbOptions {
    HillclimbOptions {
        random_starts: args.starts,
        steps: args.steps,
        seed: args.seed,
        tol: config.tol,
        ..Default::default()
    }
}

fn compute(args: &SearchArgs, config: &Config) -> Result<SearchRecord> {
    if args.heuristic {
        if args.mode != Mode::Spex {
            return Err(Error::NotApplicable(
                "heuristic mode only searches spex".into(),
            ));
        }
        return hillclimb_spex_with(args.n, args.k, args.p, &hillclimb_options(args, config));
    }
    match args.mode {
        Mode::Ex => ex_bruteforce(args.n, args.k, args.p),
        Mode::Spex => spex_bruteforce(args.n, args.k, args.p, config.tol),
    }
}

/// A cached record answers the request when it is exhaustive, or when it
/// came from the same heuristic run.
fn reusable(cached: &SearchRecord, args: &SearchArgs, fresh_method: Option<&str>) -> bool {
    cached.exhaustive || (args.heuristic && Some(cached.method.as_str()) == fresh_method)
}

pub fn run(args: &SearchArgs, config: &Config) -> Result<SearchOutcome> {
    let mut warnings = Vec::new();
    let cache = if args.use_cache {
        Some(Cache::open(&config.cache_dir)?)
    } else {
        None
    };
    let heuristic_method = args
        .heuristic
        .then(|| hillclimb_options(args, config).method());
    if let Some(cache) = &cache {
        match cache.load(args.n, args.k, args.p, args.mode) {
            Ok(Some(rec)) if reusable(&rec, args, heuristic_method.as_deref()) => {
                return Ok(SearchOutcome {
                    record: rec,
                    cached: true,
                    warnings,
                })
            }
            Ok(_) => {}
            Err(Error::CorruptRecord(reason)) => {
                warnings.push(format!("quarantined cached record: {reason}"))
            }
            Err(e) => return Err(e),
        }
    }
    let record = compute(args, config)?;
    if let Some(cache) = &cache {
        // Never replace an exhaustive record with a heuristic one.
        let keep_existing = matches!(
            cache.load(args.n, args.k, args.p, args.mode),
            Ok(Some(old)) if old.exhaustive && !record.exhaustive
        );
        if !keep_existing {
            cache.store(&record)?;
        }
    }
    Ok(SearchOutcome {
        record,
        cached: false,
        warnings,
    })
}
