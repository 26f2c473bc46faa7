//! Searches for `ex(n, C_k^p)` and `spex(n, C_k^p)`: exhaustive sweeps for
//! small `n`, hill-climbing beyond, and a JSON-lines result cache.

mod cache;
mod canonical;
mod hillclimb;
mod record;
mod sweep;

pub use cache::{
    is_edge_maximal, validate_record, Cache, QuarantineEntry, QUARANTINE_FILE, RECORDS_FILE,
};
pub use canonical::{canonical_form, canonical_graph6, CANONICAL_CAP};
pub use hillclimb::{hillclimb_spex, hillclimb_spex_with, HillclimbOptions, HEURISTIC_CAP};
pub use record::{Mode, SearchRecord, Value};
pub use sweep::{
    ex_bruteforce, ex_bruteforce_with, spex_bruteforce, spex_bruteforce_with, EXHAUSTIVE_CAP,
    WITNESS_TOL,
};
