//! Colour-`t`-criticality: some `t` edges (necessarily a matching) whose
//! removal lowers the chromatic number, while deleting any `t - 1` vertices
//! does not.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::colorable_masks;
use super::solver::{chromatic_number, EXACT_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalityReport {
    pub target: usize,
    pub chromatic_number: usize,
    /// First dropping matching found, in lexicographic edge order.
    #[serde(
        rename = "edgeSetB",
        serialize_with = "ser_edges",
        deserialize_with = "de_edges"
    )]
    pub edge_set: Vec<(usize, usize)>,
    pub edge_removal_drops_chi: bool,
    /// A `(t-1)`-subset whose deletion lowers the chromatic number.
    pub worst_vertex_subset: Option<Vec<usize>>,
    /// Whether the vertex-deletion sweep ran to completion.
    pub vertex_sweep_complete: bool,
    pub subsets_checked: u64,
    pub verdict: bool,
}

fn ser_edges<S: Serializer>(
    edges: &[(usize, usize)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(edges.iter().map(|(u, v)| format!("{u}-{v}")))
}

fn de_edges<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(usize, usize)>, D::Error> {
    use serde::de::Error as _;
    Vec::<String>::deserialize(d)?
        .iter()
        .map(|s| {
            let (u, v) = s
                .split_once('-')
                .ok_or_else(|| D::Error::custom(format!("bad edge {s:?}")))?;
            Ok((
                u.parse().map_err(D::Error::custom)?,
                v.parse().map_err(D::Error::custom)?,
            ))
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct CriticalityOptions {
    /// Maximum number of matchings plus vertex subsets to test.
    pub budget: u64,
    pub exec: Execution,
}

impl Default for CriticalityOptions {
    fn default() -> Self {
        CriticalityOptions {
            budget: 50_000_000,
            exec: Execution::default(),
        }
    }
}

pub fn is_color_k_critical(g: &Graph, target: usize) -> Result<CriticalityReport> {
    is_color_k_critical_with(g, target, &CriticalityOptions::default())
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n - (k - cur.len()) {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

struct MatchingSearch<'a> {
    adj: &'a [u64],
    edges: &'a [(usize, usize)],
    target: usize,
    drop_to: usize,
    checked: &'a AtomicU64,
    budget: u64,
    exhausted: &'a AtomicBool,
}

impl MatchingSearch<'_> {
    /// Extends `chosen` with edges of index above `next`, depth-first in
    /// lexicographic order.
    fn extend(&self, chosen: &mut Vec<usize>, used: u64, next: usize, adj: &mut [u64]) -> bool {
        if chosen.len() == self.target {
            if self.checked.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
            return colorable_masks(adj, self.drop_to).is_some();
        }
        let remaining = self.target - chosen.len();
        for i in next..self.edges.len() {
            if self.exhausted.load(Ordering::Relaxed) {
                return false;
            }
            if self.edges.len() - i < remaining {
                break;
            }
            let (u, v) = self.edges[i];
            let ends = (1u64 << u) | (1u64 << v);
            if used & ends != 0 {
                continue;
            }
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
            chosen.push(i);
            let found = self.extend(chosen, used | ends, i + 1, adj);
            if found {
                return true;
            }
            chosen.pop();
            adj[u] = self.adj[u] & !removed_mask(self.edges, chosen, u);
            adj[v] = self.adj[v] & !removed_mask(self.edges, chosen, v);
        }
        false
    }
}

fn removed_mask(edges: &[(usize, usize)], chosen: &[usize], x: usize) -> u64 {
    chosen.iter().fold(0, |m, &i| {
        let (a, b) = edges[i];
        if a == x {
            m | 1 << b
        } else if b == x {
            m | 1 << a
        } else {
            m
        }
    })
}

pub fn is_color_k_critical_with(
    g: &Graph,
    target: usize,
    opts: &CriticalityOptions,
) -> Result<CriticalityReport> {
    if target == 0 {
        return Err(Error::MalformedFamily(
            "criticality target must be at least 1".into(),
        ));
    }
    let chi = chromatic_number(g)?;
    let adj = g.masks().expect("order below solver cap");
    debug_assert!(g.order() <= EXACT_CAP);
    let edges: Vec<(usize, usize)> = g.edges().collect();

    let mut report = CriticalityReport {
        target,
        chromatic_number: chi,
        edge_set: Vec::new(),
        edge_removal_drops_chi: false,
        worst_vertex_subset: None,
        vertex_sweep_complete: false,
        subsets_checked: 0,
        verdict: false,
    };
    if chi == 0 {
        return Ok(report);
    }

    // Any t edges whose removal lowers chi form a matching, so only matchings
    // are searched. Each parallel task fixes the first edge.
    let checked = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let search = MatchingSearch {
        adj: &adj,
        edges: &edges,
        target,
        drop_to: chi - 1,
        checked: &checked,
        budget: opts.budget,
        exhausted: &exhausted,
    };
    let firsts: Vec<usize> = (0..edges.len()).collect();
    let found = par::find_map_first(opts.exec, &firsts, |&first| {
        let mut local = adj.clone();
        let (u, v) = edges[first];
        local[u] &= !(1 << v);
        local[v] &= !(1 << u);
        let mut chosen = vec![first];
        let used = (1u64 << u) | (1u64 << v);
        search
            .extend(&mut chosen, used, first + 1, &mut local)
            .then(|| chosen.iter().map(|&i| edges[i]).collect::<Vec<_>>())
    });
    let matchings_checked = checked.load(Ordering::Relaxed);
    if exhausted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            budget: opts.budget,
            partial: Box::new(report),
        });
    }
    if let Some(m) = found {
        report.edge_removal_drops_chi = true;
        report.edge_set = m;
    }

    let remaining_budget = opts.budget.saturating_sub(matchings_checked);
    let subset_count = binomial(g.order(), target - 1);
    if subset_count > remaining_budget {
        return Err(Error::BudgetExceeded {
            budget: opts.budget,
            partial: Box::new(report),
        });
    }
    let subsets = combinations(g.order(), target - 1);
    let witness = par::find_map_first(opts.exec, &subsets, |s| {
        let rest = g.without_vertices(s);
        let rest_adj = rest.masks().expect("subgraph of a small graph");
        colorable_masks(&rest_adj, chi - 1).map(|_| s.clone())
    });
    report.subsets_checked = subset_count;
    report.vertex_sweep_complete = true;
    report.worst_vertex_subset = witness;
    report.verdict = report.edge_removal_drops_chi && report.worst_vertex_subset.is_none();
    Ok(report)
}
