//! Simple undirected graphs on `0..n` with bitset adjacency rows.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod dot;
mod families;
pub mod graph6;

pub use families::{
    complete, complete_multipartite, cycle, empty, extremal_construction, extremal_partition, join,
    joined_multipartite, power, turan, turan_part_sizes,
};

const WORD: usize = 64;

/// A simple undirected graph.
///
/// Row `v` is a bitset of the neighbours of `v`, `words` machine words long,
/// so row extraction and edge counting cost `O(n / 64)` per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Shortest-path length, with an explicit marker for disconnected pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Neighbourhood bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        Ok(())
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Panics on a self-loop; indices are checked in debug builds only.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop at vertex {u}");
        self.adj[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.adj[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.adj[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Copy with the listed edges removed (absent edges are ignored).
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.remove_edge(u, v);
        }
        g
    }

    /// Induced subgraph on the complement of `removed`, relabelled in
    /// increasing order of the surviving vertices.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that old vertex `perm[i]` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        self.induced(perm)
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n;
        let mut g = Graph::new(n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + n, v + n);
        }
        g
    }

    /// Breadth-first distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        if source >= self.n {
            return dist;
        }
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(d) = dist[u] else {
                unreachable!()
            };
            for w in self.neighbors(u) {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u)[v])
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Largest finite distance, or `Infinite` for disconnected graphs.
    pub fn diameter(&self) -> Distance {
        let mut best = Distance::Finite(0);
        for u in 0..self.n {
            for d in self.bfs(u) {
                best = best.max(d);
            }
        }
        best
    }

    /// True when every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        let mut degs = (0..self.n).map(|v| self.degree(v));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Adjacency as one `u64` mask per vertex. Only valid for `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= WORD).then(|| (0..self.n).map(|v| self.adj[v * self.words]).collect())
    }

    pub fn from_masks(masks: &[u64]) -> Graph {
        let n = masks.len();
        assert!(n <= WORD);
        let mut g = Graph::new(n);
        for (u, &m) in masks.iter().enumerate() {
            g.adj[u * g.words] = m & !(1 << u) & low_bits(n);
        }
        debug_assert!(g.is_symmetric());
        g
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of a multiword bitset.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * WORD + b)
        })
    })
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// An ordered list of disjoint, nonempty vertex blocks covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        order: n,
                    });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(VertexPartition { blocks })
    }

    /// The single-block partition (empty for `n == 0`).
    pub fn trivial(n: usize) -> Self {
        let blocks = if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        };
        VertexPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = i;
            }
        }
        out
    }
}
