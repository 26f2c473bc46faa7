//! Heuristic `spex` search for orders beyond the exhaustive cap.
//!
//! Each start (the extremal construction when it exists, plus random
//! edge-maximal free graphs) is improved by single-pair toggles: removing an
//! edge, or adding one and then deleting edges of every pattern copy it
//! creates, highest endpoint degrees first. The graph is then completed to an
//! edge-maximal free graph again and the move is kept if the spectral radius
//! goes up. Nothing here claims optimality.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canonical::{canonical_graph6, CANONICAL_CAP};
use super::record::{Mode, SearchRecord, Value};
use crate::containment::{cycle_power_matcher, is_free, ContainmentOptions, Matcher, Outcome};
use crate::error::{Error, Result};
use crate::graph::{extremal_construction, graph6, Graph};
use crate::par::{self, Execution};
use crate::spectral::{spectral_radius, DEFAULT_TOL};

/// Largest order accepted by the heuristic.
pub const HEURISTIC_CAP: usize = 60;

#[derive(Clone, Copy, Debug)]
pub struct HillclimbOptions {
    /// Random starts in addition to the extremal construction.
    pub random_starts: usize,
    /// Toggle moves per start.
    pub steps: usize,
    pub seed: u64,
    pub tol: f64,
    /// Containment nodes per freeness check; an undecided check counts as
    /// "not free".
    pub node_budget: u64,
    pub exec: Execution,
}

impl Default for HillclimbOptions {
    fn default() -> Self {
        HillclimbOptions {
            random_starts: 4,
            steps: 200,
            seed: 0,
            tol: DEFAULT_TOL,
            node_budget: 200_000,
            exec: Execution::default(),
        }
    }
}

impl HillclimbOptions {
    /// The `method` string of records produced with these options.
    pub fn method(&self) -> String {
        format!(
            "hillclimb seed={} starts={} steps={}",
            self.seed,
            self.random_starts + 1,
            self.steps
        )
    }
}

struct Climber<'a> {
    n: usize,
    matcher: &'a Matcher,
    opts: &'a HillclimbOptions,
}

impl Climber<'_> {
    fn check(&self, g: &Graph, u: usize, v: usize) -> Outcome {
        let opts = ContainmentOptions {
            node_budget: Some(self.opts.node_budget),
            ..Default::default()
        };
        self.matcher.find_through_edge(g, u, v, opts)
    }

    /// Adds non-edges in random order while the graph stays free.
    fn complete(&self, g: &mut Graph, rng: &mut ChaCha8Rng, skip: Option<(usize, usize)>) {
        let mut pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v) && Some((u, v)) != skip)
            .collect();
        pairs.shuffle(rng);
        for (u, v) in pairs {
            g.add_edge(u, v);
            if self.check(g, u, v) != Outcome::Absent {
                g.remove_edge(u, v);
            }
        }
    }

    /// Adds `uv` and removes edges until no copy through `uv` remains.
    /// `None` when a check runs out of budget.
    fn add_and_repair(&self, g: &mut Graph, u: usize, v: usize) -> Option<()> {
        g.add_edge(u, v);
        loop {
            match self.check(g, u, v) {
                Outcome::Absent => return Some(()),
                Outcome::Undecided => return None,
                Outcome::Found(e) => {
                    let map = e.map();
                    let victim = self
                        .matcher
                        .pattern()
                        .edges()
                        .map(|(a, b)| {
                            let (x, y) = (map[a].min(map[b]), map[a].max(map[b]));
                            (x, y)
                        })
                        .filter(|&e| e != (u.min(v), u.max(v)))
                        .max_by_key(|&(x, y)| {
                            (g.degree(x) + g.degree(y), std::cmp::Reverse((x, y)))
                        })
                        .expect("pattern has an edge besides uv");
                    g.remove_edge(victim.0, victim.1);
                }
            }
        }
    }

    fn radius(&self, g: &Graph) -> f64 {
        spectral_radius(g, self.opts.tol).map_or(0.0, |r| r.lambda)
    }

    fn climb(&self, mut g: Graph, rng: &mut ChaCha8Rng) -> (Graph, f64) {
        let mut best = self.radius(&g);
        for _ in 0..self.opts.steps {
            let u = rng.gen_range(0..self.n);
            let mut v = rng.gen_range(0..self.n - 1);
            if v >= u {
                v += 1;
            }
            let mut next = g.clone();
            if next.has_edge(u, v) {
                next.remove_edge(u, v);
                self.complete(&mut next, rng, Some((u.min(v), u.max(v))));
            } else {
                if self.add_and_repair(&mut next, u, v).is_none() {
                    continue;
                }
                self.complete(&mut next, rng, None);
            }
            let lambda = self.radius(&next);
            if lambda > best + self.opts.tol {
                best = lambda;
                g = next;
            }
        }
        (g, best)
    }
}

pub fn hillclimb_spex(
    n: usize,
    k: usize,
    p: usize,
    random_starts: usize,
    steps: usize,
    seed: u64,
) -> Result<SearchRecord> {
    hillclimb_spex_with(
        n,
        k,
        p,
        &HillclimbOptions {
            random_starts,
            steps,
            seed,
            ..Default::default()
        },
    )
}

pub fn hillclimb_spex_with(
    n: usize,
    k: usize,
    p: usize,
    opts: &HillclimbOptions,
) -> Result<SearchRecord> {
    if n > HEURISTIC_CAP {
        return Err(Error::ExhaustiveCap {
            n,
            cap: HEURISTIC_CAP,
        });
    }
    if n < 2 || k < 3 || p == 0 {
        return Err(Error::MalformedFamily(format!(
            "need n >= 2, k >= 3, p >= 1; got n={n} k={k} p={p}"
        )));
    }
    crate::spectral::check_tol(opts.tol)?;
    let start = Instant::now();
    let matcher = cycle_power_matcher(k, p);
    let climber = Climber {
        n,
        matcher: &matcher,
        opts,
    };

    let construction = extremal_construction(n, k, p)
        .ok()
        .filter(|g| is_free(g, k, p));
    let mut starts: Vec<Option<Graph>> = vec![construction];
    starts.extend((0..opts.random_starts).map(|_| None));
    let starts: Vec<(u64, Option<Graph>)> = starts
        .into_iter()
        .enumerate()
        .map(|(i, g)| (i as u64, g))
        .collect();
    let results = par::map(opts.exec, &starts, |(stream, g)| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(*stream);
        let g = match g {
            Some(g) => g.clone(),
            None => {
                let mut g = Graph::new(n);
                climber.complete(&mut g, &mut rng, None);
                g
            }
        };
        climber.climb(g, &mut rng)
    });
    // Earliest start wins ties, so the result does not depend on scheduling.
    let (best, lambda) = results
        .into_iter()
        .reduce(|a, b| if b.1 > a.1 { b } else { a })
        .expect("at least one start");
    let witness = if n <= CANONICAL_CAP {
        canonical_graph6(&best)?
    } else {
        graph6::encode(&best)
    };
    Ok(SearchRecord {
        n,
        k,
        p,
        mode: Mode::Spex,
        value: Value::Radius(lambda),
        witnesses: vec![witness],
        exhaustive: false,
        method: opts.method(),
        wall_time: start.elapsed().as_secs_f64(),
    })
}
