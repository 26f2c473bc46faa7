//! Powers of cycles and their Turán-type extremal problems.
//!
//! * [`graph`]: the graph type, graph families and interchange formats.
//! * [`params`]: the `(k, p) -> (s, r, m, t, p')` decomposition and closed-form edge counts.
//! * [`coloring`]: exact chromatic numbers, explicit colourings and colour-criticality.
//! * [`containment`]: subgraph containment and `C_k^p`-freeness.
//! * [`spectral`]: spectral radii, equitable partitions and quotient matrices.
//! * [`search`]: exhaustive and heuristic searches for `ex` and `spex`, with a result cache.
//!
//! ## Feature flags
//!
//! ## `parallel` (default)
//!   - Runs sweeps on the rayon thread pool. Without it every
//!     [`par::Execution`] runs sequentially.

pub mod coloring;
pub mod containment;
pub mod error;
pub mod graph;
pub mod par;
pub mod params;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
