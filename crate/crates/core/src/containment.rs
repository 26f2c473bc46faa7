//! Subgraph (not induced) containment by backtracking.
//!
//! Pattern vertices are placed in a fixed order: highest degree first, then
//! repeatedly the vertex with the most already-placed neighbours (ties by
//! degree, then index). Host candidates are the unused common neighbours of
//! the images of placed pattern neighbours, filtered by degree.
//!
//! Two cuts shrink the tree without changing the answer:
//! * twin classes: unused host vertices with the same open (or closed)
//!   neighbourhood are interchangeable, so only one per class is tried at a
//!   given depth;
//! * common neighbours: the images of two pattern vertices need at least as
//!   many common neighbours as the pattern vertices have.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::coloring::{greedy_clique, k_coloring, EXACT_CAP};
use crate::graph::{bits, cycle, power, Graph};
use crate::params::decompose;

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding(map)
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn validate(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.0.len() != pattern.order() || self.0.iter().any(|&h| h >= host.order()) {
            return false;
        }
        let mut seen = vec![false; host.order()];
        for &h in &self.0 {
            if std::mem::replace(&mut seen[h], true) {
                return false;
            }
        }
        pattern
            .edges()
            .all(|(a, b)| host.has_edge(self.0[a], self.0[b]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContainmentOptions {
    pub twin_pruning: bool,
    pub common_neighbor_cut: bool,
    /// Abandon the search after this many tree nodes.
    pub node_budget: Option<u64>,
}

impl Default for ContainmentOptions {
    fn default() -> Self {
        ContainmentOptions {
            twin_pruning: true,
            common_neighbor_cut: true,
            node_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Embedding),
    Absent,
    /// The node budget ran out before the search finished.
    Undecided,
}

impl Outcome {
    pub fn embedding(self) -> Option<Embedding> {
        match self {
            Outcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    /// Earlier positions adjacent (in the pattern) to each position.
    back: Vec<Vec<usize>>,
    /// Earlier positions sharing common neighbours, with the count.
    common: Vec<Vec<(usize, usize)>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &Graph, start: &[usize]) -> Plan {
        let order = search_order(pattern, start);
        let mut pos = vec![0; order.len()];
        for (i, &a) in order.iter().enumerate() {
            pos[a] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut b: Vec<usize> = pattern
                    .neighbors(a)
                    .map(|x| pos[x])
                    .filter(|&j| j < i)
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        let common = order
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                (0..i)
                    .filter_map(|j| {
                        let c = pattern.common_neighbors(a, order[j]);
                        (c > 0).then_some((j, c))
                    })
                    .collect()
            })
            .collect();
        let degree = order.iter().map(|&a| pattern.degree(a)).collect();
        Plan {
            order,
            back,
            common,
            degree,
        }
    }
}

fn search_order(pattern: &Graph, start: &[usize]) -> Vec<usize> {
    let n = pattern.order();
    let mut placed = vec![false; n];
    let mut order: Vec<usize> = start.to_vec();
    for &a in start {
        placed[a] = true;
    }
    let deg = pattern.degrees();
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&x, &y| {
                let bx = pattern.neighbors(x).filter(|&w| placed[w]).count();
                let by = pattern.neighbors(y).filter(|&w| placed[w]).count();
                bx.cmp(&by).then(deg[x].cmp(&deg[y])).then(y.cmp(&x))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Twin class of every vertex: equal open neighbourhoods, or failing that
/// equal closed neighbourhoods.
fn twin_classes(host: &Graph) -> Vec<usize> {
    let n = host.order();
    let mut open: HashMap<&[u64], usize> = HashMap::new();
    let mut open_id = Vec::with_capacity(n);
    let mut open_size = Vec::new();
    for v in 0..n {
        let next = open.len();
        let id = *open.entry(host.row(v)).or_insert(next);
        if id == open_size.len() {
            open_size.push(0);
        }
        open_size[id] += 1;
        open_id.push(id);
    }
    let mut closed: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut class = vec![0; n];
    for v in 0..n {
        class[v] = if open_size[open_id[v]] > 1 {
            open_id[v]
        } else {
            let mut row = host.row(v).to_vec();
            row[v / 64] |= 1 << (v % 64);
            let next = closed.len();
            open_size.len() + *closed.entry(row).or_insert(next)
        };
    }
    class
}

struct Search<'a, F> {
    host: &'a Graph,
    plan: &'a Plan,
    opts: ContainmentOptions,
    host_degree: Vec<usize>,
    class: Vec<usize>,
    map: Vec<usize>,
    used: Vec<u64>,
    buffers: Vec<Vec<u64>>,
    nodes: u64,
    visit: F,
}

enum Stop {
    Visitor,
    Budget,
}

impl<'a, F: FnMut(&[usize]) -> ControlFlow<()>> Search<'a, F> {
    fn new(host: &'a Graph, plan: &'a Plan, opts: ContainmentOptions, visit: F) -> Self {
        let words = host.row(0).len();
        let depth = plan.order.len();
        Search {
            host,
            plan,
            opts,
            host_degree: host.degrees(),
            class: if opts.twin_pruning {
                twin_classes(host)
            } else {
                (0..host.order()).collect()
            },
            map: vec![usize::MAX; depth],
            used: vec![0; words],
            buffers: vec![vec![0; words]; depth],
            nodes: 0,
            visit,
        }
    }

    fn place(&mut self, i: usize, h: usize) {
        self.map[i] = h;
        self.used[h / 64] |= 1 << (h % 64);
    }

    fn unplace(&mut self, i: usize, h: usize) {
        self.map[i] = usize::MAX;
        self.used[h / 64] &= !(1 << (h % 64));
    }

    fn fits(&self, i: usize, h: usize) -> bool {
        if self.host_degree[h] < self.plan.degree[i] {
            return false;
        }
        if self.opts.common_neighbor_cut {
            for &(j, c) in &self.plan.common[i] {
                if self.host.common_neighbors(h, self.map[j]) < c {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) -> Result<(), Stop> {
        if i == self.plan.order.len() {
            let mut image = vec![0; self.map.len()];
            for (pos, &a) in self.plan.order.iter().enumerate() {
                image[a] = self.map[pos];
            }
            return match (self.visit)(&image) {
                ControlFlow::Continue(()) => Ok(()),
                ControlFlow::Break(()) => Err(Stop::Visitor),
            };
        }
        self.nodes += 1;
        if self.opts.node_budget.is_some_and(|b| self.nodes > b) {
            return Err(Stop::Budget);
        }

        let mut cand = std::mem::take(&mut self.buffers[i]);
        let n = self.host.order();
        for (w, slot) in cand.iter_mut().enumerate() {
            let live = if (w + 1) * 64 <= n {
                u64::MAX
            } else {
                crate::graph::low_bits(n - w * 64)
            };
            *slot = live & !self.used[w];
        }
        for &j in &self.plan.back[i] {
            for (slot, &r) in cand.iter_mut().zip(self.host.row(self.map[j])) {
                *slot &= r;
            }
        }

        let mut tried: Vec<usize> = Vec::new();
        let mut result = Ok(());
        for h in bits(&cand) {
            let c = self.class[h];
            if tried.contains(&c) {
                continue;
            }
            tried.push(c);
            if !self.fits(i, h) {
                continue;
            }
            self.place(i, h);
            result = self.run(i + 1);
            self.unplace(i, h);
            if result.is_err() {
                break;
            }
        }
        self.buffers[i] = cand;
        result
    }
}

/// A pattern prepared for repeated containment queries.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Graph,
    plan: Plan,
    /// Anchored plans, one per orbit of directed pattern edges.
    anchored: Vec<Plan>,
    sorted_degrees: Vec<usize>,
    chromatic_number: Option<usize>,
}

const AUTOMORPHISM_BUDGET: u64 = 200_000;

impl Matcher {
    pub fn new(pattern: &Graph) -> Matcher {
        let plan = Plan::new(pattern, &[]);
        let mut sorted_degrees = pattern.degrees();
        sorted_degrees.sort_unstable_by(|a, b| b.cmp(a));
        let chromatic_number = (pattern.order() <= EXACT_CAP)
            .then(|| crate::coloring::chromatic_number(pattern).ok())
            .flatten();
        let mut m = Matcher {
            pattern: pattern.clone(),
            plan,
            anchored: Vec::new(),
            sorted_degrees,
            chromatic_number,
        };
        m.anchored = m
            .edge_orbit_representatives()
            .into_iter()
            .map(|(a, b)| Plan::new(pattern, &[a, b]))
            .collect();
        m
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn chromatic_number(&self) -> Option<usize> {
        self.chromatic_number
    }

    /// One directed edge per orbit under the automorphism group, or every
    /// directed edge when the group is too large to enumerate.
    fn edge_orbit_representatives(&self) -> Vec<(usize, usize)> {
        let all: Vec<(usize, usize)> = self
            .pattern
            .edges()
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .collect();
        if self.pattern.order() == 0 {
            return all;
        }
        let mut autos: Vec<Vec<usize>> = Vec::new();
        let opts = ContainmentOptions {
            node_budget: Some(AUTOMORPHISM_BUDGET),
            ..Default::default()
        };
        // Twin pruning would skip automorphisms; enumerate them all.
        let opts = ContainmentOptions {
            twin_pruning: false,
            ..opts
        };
        let mut search = Search::new(&self.pattern, &self.plan, opts, |img: &[usize]| {
            autos.push(img.to_vec());
            ControlFlow::Continue(())
        });
        if search.run(0).is_err() {
            return all;
        }
        let mut reps = Vec::new();
        let mut covered = std::collections::HashSet::new();
        for &(a, b) in &all {
            if covered.contains(&(a, b)) {
                continue;
            }
            reps.push((a, b));
            for sigma in &autos {
                covered.insert((sigma[a], sigma[b]));
            }
        }
        reps
    }

    fn prefilter(&self, host: &Graph) -> bool {
        if host.order() < self.pattern.order() || host.edge_count() < self.pattern.edge_count() {
            return false;
        }
        let mut hd = host.degrees();
        hd.sort_unstable_by(|a, b| b.cmp(a));
        self.sorted_degrees.iter().zip(&hd).all(|(p, h)| h >= p)
    }

    pub fn find(&self, host: &Graph) -> Option<Embedding> {
        self.find_with(host, ContainmentOptions::default())
            .embedding()
    }

    pub fn find_with(&self, host: &Graph, opts: ContainmentOptions) -> Outcome {
        if self.pattern.order() == 0 {
            return Outcome::Found(Embedding(Vec::new()));
        }
        if !self.prefilter(host) {
            return Outcome::Absent;
        }
        let mut found = None;
        let mut search = Search::new(host, &self.plan, opts, |img: &[usize]| {
            found = Some(img.to_vec());
            ControlFlow::Break(())
        });
        let r = search.run(0);
        finish(r, found)
    }

    /// Looks only for copies that use the host edge `uv`. If `host - uv` is
    /// pattern-free, this decides whether `host` is.
    pub fn find_through_edge(
        &self,
        host: &Graph,
        u: usize,
        v: usize,
        opts: ContainmentOptions,
    ) -> Outcome {
        if !host.has_edge(u, v) || !self.prefilter(host) {
            return Outcome::Absent;
        }
        let mut budget_left = opts.node_budget;
        let mut undecided = false;
        for plan in &self.anchored {
            let opts = ContainmentOptions {
                node_budget: budget_left,
                ..opts
            };
            let mut found = None;
            let mut search = Search::new(host, plan, opts, |img: &[usize]| {
                found = Some(img.to_vec());
                ControlFlow::Break(())
            });
            if !search.fits(0, u) {
                continue;
            }
            search.place(0, u);
            if !search.fits(1, v) {
                continue;
            }
            search.place(1, v);
            let r = search.run(2);
            let nodes = search.nodes;
            match finish(r, found) {
                Outcome::Found(e) => return Outcome::Found(e),
                Outcome::Absent => {}
                Outcome::Undecided => undecided = true,
            }
            if let Some(b) = budget_left.as_mut() {
                *b = b.saturating_sub(nodes);
            }
            if undecided {
                break;
            }
        }
        if undecided {
            Outcome::Undecided
        } else {
            Outcome::Absent
        }
    }
}

fn finish(r: Result<(), Stop>, found: Option<Vec<usize>>) -> Outcome {
    match (r, found) {
        (_, Some(img)) => Outcome::Found(Embedding(img)),
        (Err(Stop::Budget), None) => Outcome::Undecided,
        _ => Outcome::Absent,
    }
}

pub fn contains(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    Matcher::new(pattern).find(host)
}

type Cache = RwLock<HashMap<(usize, usize), Arc<Matcher>>>;

/// Shared matcher for `C_k^p`, built once per `(k, p)`.
pub fn cycle_power_matcher(k: usize, p: usize) -> Arc<Matcher> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.read().expect("pattern cache poisoned").get(&(k, p)) {
        return Arc::clone(m);
    }
    let pattern = power(&cycle(k).expect("k >= 3"), p).expect("p >= 1");
    let m = Arc::new(Matcher::new(&pattern));
    let mut w = cache.write().expect("pattern cache poisoned");
    Arc::clone(w.entry((k, p)).or_insert(m))
}

/// Chromatic number of `C_k^p`: the closed form when `k >= 2p+1`, else `k`.
fn cycle_power_chi(k: usize, p: usize) -> usize {
    decompose(k, p).map_or(k, |d| d.chi_predicted)
}

/// True when a proper colouring with fewer colours than `chi(pattern)`
/// exists, which rules the pattern out. `None` when the test is
/// inconclusive or too large.
pub fn colouring_certificate(host: &Graph, pattern_chi: usize) -> Option<bool> {
    if host.order() > EXACT_CAP || pattern_chi == 0 {
        return None;
    }
    let adj = host.masks()?;
    if greedy_clique(&adj).len() >= pattern_chi {
        return None;
    }
    Some(k_coloring(host, pattern_chi - 1).ok()??.palette() < pattern_chi)
}

/// `host` contains no copy of `C_k^p`.
pub fn is_free(host: &Graph, k: usize, p: usize) -> bool {
    assert!(k >= 3 && p >= 1, "C_k^p needs k >= 3 and p >= 1");
    if host.order() < k {
        return true;
    }
    if colouring_certificate(host, cycle_power_chi(k, p)) == Some(true) {
        return true;
    }
    cycle_power_matcher(k, p).find(host).is_none()
}
