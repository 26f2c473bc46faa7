//! Canonical labelling of small graphs by minimising over all vertex orders.
//!
//! The key of a labelling is the upper adjacency triangle read column by
//! column, `(0,1), (0,2), (1,2), (0,3), …`, the same order graph6 uses. The
//! canonical form is the labelling with the lexicographically largest key;
//! permutations are built one position at a time and a branch is dropped as
//! soon as its partial key falls below the best found.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{graph6, Graph};

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 10;

struct Canon<'a> {
    adj: &'a [u64],
    n: usize,
    perm: Vec<usize>,
    used: u64,
    /// Column `j` of the key: bit `i` set when `(i, j)` is an edge.
    cur: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Canon<'_> {
    fn column(&self, v: usize) -> u64 {
        let mut col = 0;
        for (i, &u) in self.perm.iter().enumerate() {
            if self.adj[u] >> v & 1 == 1 {
                col |= 1 << i;
            }
        }
        col
    }

    /// Columns compare as read from `i = 0` upward.
    fn cmp_prefix(a: &[u64], b: &[u64]) -> Ordering {
        a.iter()
            .map(|c| c.reverse_bits())
            .cmp(b.iter().map(|c| c.reverse_bits()))
    }

    fn search(&mut self, j: usize) {
        if j == self.n {
            let better = match &self.best {
                None => true,
                Some((key, _)) => Self::cmp_prefix(&self.cur, key) == Ordering::Greater,
            };
            if better {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            self.cur.push(self.column(v));
            // Column j only depends on the first j+1 positions, so a prefix
            // below the best key cannot recover.
            let behind = self
                .best
                .as_ref()
                .is_some_and(|(key, _)| Self::cmp_prefix(&self.cur, &key[..=j]) == Ordering::Less);
            if !behind {
                self.perm.push(v);
                self.used |= 1 << v;
                self.search(j + 1);
                self.perm.pop();
                self.used &= !(1 << v);
            }
            self.cur.pop();
        }
    }
}

/// The canonical relabelling of `g`: isomorphic graphs give equal results.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.order();
    if n > CANONICAL_CAP {
        return Err(Error::ExhaustiveCap {
            n,
            cap: CANONICAL_CAP,
        });
    }
    let adj = g.masks().expect("small graph");
    let mut c = Canon {
        adj: &adj,
        n,
        perm: Vec::with_capacity(n),
        used: 0,
        cur: Vec::with_capacity(n),
        best: None,
    };
    c.search(0);
    let (_, perm) = c.best.expect("at least one labelling");
    Ok(g.permuted(&perm))
}

pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(graph6::encode(&canonical_form(g)?))
}
