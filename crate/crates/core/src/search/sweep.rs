//! Exhaustive `ex` and `spex` over labelled graphs on at most eight vertices.
//!
//! Edge slots are decided one at a time in graph6 order, trying "present"
//! before "absent". An edge is only added when the graph stays pattern-free,
//! which is decided by an anchored containment search through the new edge
//! (the graph without it is already free). A branch is cut once the edges it
//! can still reach cannot match the best value found so far. The first
//! decisions split the tree into shards that run independently and share
//! only the best value.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use super::canonical::canonical_form;
use super::record::{Mode, SearchRecord, Value};
use crate::containment::{cycle_power_matcher, ContainmentOptions, Matcher, Outcome};
use crate::error::{Error, Result};
use crate::graph::{graph6, turan, Graph};
use crate::par::{self, Execution};
use crate::spectral::spectral_radius;

/// Largest order searched exhaustively.
pub const EXHAUSTIVE_CAP: usize = 8;

/// Spectral radii within this distance of the maximum count as ties.
pub const WITNESS_TOL: f64 = 1e-9;

/// Number of leading edge slots decided before sharding.
const SHARD_DEPTH: usize = 8;

/// Largest spectral radius of a graph with `m` edges: `(sqrt(8m+1) - 1) / 2`.
fn edge_radius_bound(m: usize) -> f64 {
    (((8 * m + 1) as f64).sqrt() - 1.0) / 2.0
}

/// An upper bound on the spectral radius: `max_i (Ax)_i / x_i` holds for any
/// positive `x`, here a few power steps on `A + I` from the all-ones vector.
fn radius_upper_bound(adj: &[u64]) -> f64 {
    const STEPS: usize = 12;
    let n = adj.len();
    let mut x = [1.0f64; 64];
    let mut ax = [0.0f64; 64];
    for step in 0..=STEPS {
        for (i, row) in adj.iter().enumerate() {
            let mut s = 0.0;
            let mut r = *row;
            while r != 0 {
                s += x[r.trailing_zeros() as usize];
                r &= r - 1;
            }
            ax[i] = s;
        }
        if step == STEPS {
            break;
        }
        let mut top = 0.0f64;
        for i in 0..n {
            x[i] += ax[i];
            top = top.max(x[i]);
        }
        for xi in &mut x[..n] {
            *xi /= top;
        }
    }
    (0..n).map(|i| ax[i] / x[i]).fold(0.0, f64::max)
}

#[derive(Clone)]
struct State {
    g: Graph,
    slot: usize,
    edges: usize,
    /// Slots left out although adding them kept the graph free.
    optional: u64,
}

struct Sweep<'a> {
    slots: Vec<(usize, usize)>,
    /// `open[i][v]`: neighbours of `v` over slots `i..`.
    open: Vec<Vec<u64>>,
    matcher: &'a Matcher,
    mode: Mode,
    tol: f64,
    /// Edge count, or the bits of a nonnegative `f64` (whose order matches).
    best: AtomicU64,
}

impl Sweep<'_> {
    fn best_radius(&self) -> f64 {
        f64::from_bits(self.best.load(Ordering::Relaxed))
    }

    fn hopeless(&self, s: &State) -> bool {
        let reach = s.edges + self.slots.len() - s.slot;
        match self.mode {
            Mode::Ex => (reach as u64) < self.best.load(Ordering::Relaxed),
            Mode::Spex => {
                let target = self.best_radius() - WITNESS_TOL;
                if edge_radius_bound(reach) < target {
                    return true;
                }
                // Every completion is a subgraph of the current graph plus all
                // undecided slots.
                let mut adj = s.g.masks().expect("small graph");
                for (row, extra) in adj.iter_mut().zip(&self.open[s.slot]) {
                    *row |= extra;
                }
                radius_upper_bound(&adj) < target
            }
        }
    }

    fn free_with(&self, g: &Graph, u: usize, v: usize) -> bool {
        matches!(
            self.matcher
                .find_through_edge(g, u, v, ContainmentOptions::default()),
            Outcome::Absent
        )
    }

    /// Children of `s` in include-first order.
    fn expand(&self, s: State, mut visit: impl FnMut(State)) {
        let (u, v) = self.slots[s.slot];
        let mut with = s.g.clone();
        with.add_edge(u, v);
        let can_add = self.free_with(&with, u, v);
        if can_add {
            visit(State {
                g: with,
                slot: s.slot + 1,
                edges: s.edges + 1,
                optional: s.optional,
            });
        }
        let optional = if can_add {
            s.optional | 1 << s.slot
        } else {
            s.optional
        };
        visit(State {
            slot: s.slot + 1,
            optional,
            ..s
        });
    }

    fn prefixes(&self, s: State, depth: usize, out: &mut Vec<State>) {
        if self.hopeless(&s) {
            return;
        }
        if s.slot == depth.min(self.slots.len()) {
            out.push(s);
            return;
        }
        self.expand(s, |c| self.prefixes(c, depth, out));
    }

    fn run(&self, s: State, out: &mut Vec<(Graph, f64)>) {
        if self.hopeless(&s) {
            return;
        }
        if s.slot < self.slots.len() {
            self.expand(s, |c| self.run(c, out));
            return;
        }
        match self.mode {
            Mode::Ex => {
                self.best.fetch_max(s.edges as u64, Ordering::Relaxed);
                out.push((s.g, s.edges as f64));
            }
            Mode::Spex => {
                if !self.is_maximal(&s) {
                    return;
                }
                let lambda = spectral_radius(&s.g, self.tol).map_or(0.0, |r| r.lambda);
                if lambda >= self.best_radius() - WITNESS_TOL {
                    self.best.fetch_max(lambda.to_bits(), Ordering::Relaxed);
                    out.push((s.g, lambda));
                }
            }
        }
    }

    /// Slots skipped only because adding them created the pattern stay
    /// blocked as edges are added, so only the optional ones are rechecked.
    fn is_maximal(&self, s: &State) -> bool {
        let mut rest = s.optional;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (u, v) = self.slots[i];
            let mut g = s.g.clone();
            g.add_edge(u, v);
            if self.free_with(&g, u, v) {
                return false;
            }
        }
        true
    }
}

fn slots(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn check_args(n: usize, k: usize, p: usize) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        return Err(Error::ExhaustiveCap {
            n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    if k < 3 || p == 0 {
        return Err(Error::MalformedFamily(format!(
            "C_{k}^{p} needs k >= 3 and p >= 1"
        )));
    }
    Ok(())
}

fn sweep(
    n: usize,
    k: usize,
    p: usize,
    mode: Mode,
    tol: f64,
    exec: Execution,
) -> Result<SearchRecord> {
    check_args(n, k, p)?;
    let start = Instant::now();
    let matcher = cycle_power_matcher(k, p);
    // A Turán graph with chi(pattern) - 1 parts is pattern-free, so its value
    // is a valid starting bound.
    let chi = matcher
        .chromatic_number()
        .expect("pattern below solver cap");
    let seed = turan(n, (chi - 1).max(1))?;
    let initial = match mode {
        Mode::Ex => seed.edge_count() as u64,
        Mode::Spex => spectral_radius(&seed, tol)
            .map_or(0.0, |r| r.lambda)
            .to_bits(),
    };
    let slots = slots(n);
    let mut open = vec![vec![0u64; n]; slots.len() + 1];
    for (i, &(u, v)) in slots.iter().enumerate().rev() {
        open[i] = open[i + 1].clone();
        open[i][u] |= 1 << v;
        open[i][v] |= 1 << u;
    }
    let sweep = Sweep {
        slots,
        open,
        matcher: &matcher,
        mode,
        tol,
        best: AtomicU64::new(initial),
    };
    let root = State {
        g: Graph::new(n),
        slot: 0,
        edges: 0,
        optional: 0,
    };
    let mut shards = Vec::new();
    sweep.prefixes(root, SHARD_DEPTH, &mut shards);
    let found: Vec<Vec<(Graph, f64)>> = par::map(exec, &shards, |s| {
        let mut out = Vec::new();
        sweep.run(s.clone(), &mut out);
        out
    });

    // Canonical forms make the witness set independent of shard timing.
    let mut canonical: BTreeMap<String, f64> = BTreeMap::new();
    for (g, _) in found.into_iter().flatten() {
        let c = canonical_form(&g)?;
        let key = graph6::encode(&c);
        if canonical.contains_key(&key) {
            continue;
        }
        let value = match mode {
            Mode::Ex => c.edge_count() as f64,
            Mode::Spex => spectral_radius(&c, tol)?.lambda,
        };
        canonical.insert(key, value);
    }
    let top = canonical
        .values()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let witnesses: Vec<String> = canonical
        .iter()
        .filter(|(_, &v)| match mode {
            Mode::Ex => v == top,
            Mode::Spex => v >= top - WITNESS_TOL,
        })
        .map(|(k, _)| k.clone())
        .collect();
    let value = match mode {
        Mode::Ex => Value::Edges(top as u64),
        Mode::Spex => Value::Radius(top),
    };
    let method = match mode {
        Mode::Ex => "exhaustive edge-slot sweep".to_string(),
        Mode::Spex => "exhaustive edge-slot sweep over edge-maximal graphs".to_string(),
    };
    Ok(SearchRecord {
        n,
        k,
        p,
        mode,
        value,
        witnesses,
        exhaustive: true,
        method,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// `ex(n, C_k^p)` with all extremal graphs up to isomorphism.
pub fn ex_bruteforce(n: usize, k: usize, p: usize) -> Result<SearchRecord> {
    ex_bruteforce_with(n, k, p, Execution::default())
}

pub fn ex_bruteforce_with(n: usize, k: usize, p: usize, exec: Execution) -> Result<SearchRecord> {
    sweep(n, k, p, Mode::Ex, crate::spectral::DEFAULT_TOL, exec)
}

/// `spex(n, C_k^p)` with all extremal graphs up to isomorphism. Only
/// edge-maximal free graphs are evaluated: adding an edge to a graph strictly
/// increases the spectral radius of the component it lands in.
pub fn spex_bruteforce(n: usize, k: usize, p: usize, tol: f64) -> Result<SearchRecord> {
    spex_bruteforce_with(n, k, p, tol, Execution::default())
}

pub fn spex_bruteforce_with(
    n: usize,
    k: usize,
    p: usize,
    tol: f64,
    exec: Execution,
) -> Result<SearchRecord> {
    crate::spectral::check_tol(tol)?;
    sweep(n, k, p, Mode::Spex, tol, exec)
}
