//! Exact chromatic number by DSATUR-ordered branch and bound.
//!
//! A greedy clique gives the lower bound and a greedy DSATUR colouring the
//! upper bound; the gap is closed by deciding `c`-colourability for each `c`
//! in between.

use super::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the exact solver.
pub const EXACT_CAP: usize = 40;

const NONE: u8 = u8::MAX;

fn masks_for(g: &Graph) -> Result<Vec<u64>> {
    if g.order() > EXACT_CAP {
        return Err(Error::SolverOutOfRange {
            order: g.order(),
            cap: EXACT_CAP,
        });
    }
    Ok(g.masks().expect("order below cap fits one word"))
}

/// Size of a clique found greedily from every start vertex.
pub fn greedy_clique(adj: &[u64]) -> Vec<usize> {
    let mut best = Vec::new();
    for v in 0..adj.len() {
        let mut clique = vec![v];
        let mut cand = adj[v];
        while cand != 0 {
            let mut pick = usize::MAX;
            let mut pick_score = 0;
            let mut c = cand;
            while c != 0 {
                let u = c.trailing_zeros() as usize;
                c &= c - 1;
                let score = (adj[u] & cand).count_ones() + 1;
                if score > pick_score {
                    pick = u;
                    pick_score = score;
                }
            }
            clique.push(pick);
            cand &= adj[pick];
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

struct Dsatur<'a> {
    adj: &'a [u64],
    k: usize,
    color: Vec<u8>,
    /// `seen[v * k + c]` counts coloured neighbours of `v` with colour `c`.
    seen: Vec<u16>,
    sat: Vec<u64>,
    uncolored: u64,
    nodes: u64,
}

impl<'a> Dsatur<'a> {
    fn new(adj: &'a [u64], k: usize) -> Self {
        let n = adj.len();
        Dsatur {
            adj,
            k,
            color: vec![NONE; n],
            seen: vec![0; n * k.max(1)],
            sat: vec![0; n],
            uncolored: crate::graph::low_bits(n),
            nodes: 0,
        }
    }

    /// Most saturated uncoloured vertex; ties by uncoloured degree, then by
    /// lowest index.
    fn select(&self) -> Option<usize> {
        let mut best = None;
        let mut best_key = (0u32, 0u32);
        let mut rest = self.uncolored;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let key = (
                self.sat[v].count_ones(),
                (self.adj[v] & self.uncolored).count_ones(),
            );
            if best.is_none() || key > best_key {
                best = Some(v);
                best_key = key;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c as u8;
        self.uncolored &= !(1 << v);
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let slot = &mut self.seen[u * self.k + c];
            *slot += 1;
            self.sat[u] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        self.uncolored |= 1 << v;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let slot = &mut self.seen[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] &= !(1 << c);
            }
        }
    }

    fn search(&mut self, used: usize) -> bool {
        self.nodes += 1;
        let Some(v) = self.select() else { return true };
        // Colours beyond `used` are interchangeable, so only one new colour is tried.
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if self.sat[v] >> c & 1 == 1 {
                continue;
            }
            self.assign(v, c);
            if self.search(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    fn greedy(mut self) -> Vec<usize> {
        while let Some(v) = self.select() {
            let c = (!self.sat[v]).trailing_zeros() as usize;
            self.assign(v, c);
        }
        self.color.iter().map(|&c| c as usize).collect()
    }
}

/// Greedy DSATUR colouring; uses at most `max degree + 1` colours.
pub fn dsatur_greedy(g: &Graph) -> Result<Coloring> {
    let adj = masks_for(g)?;
    let colors = Dsatur::new(&adj, 64).greedy();
    Ok(Coloring::from_colors(colors))
}

pub(crate) fn colorable_masks(adj: &[u64], k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    if k >= n {
        return Some((0..n).collect());
    }
    let mut state = Dsatur::new(adj, k);
    state
        .search(0)
        .then(|| state.color.iter().map(|&c| c as usize).collect())
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    let adj = masks_for(g)?;
    Ok(colorable_masks(&adj, k).map(|colors| Coloring::new(colors, k)))
}

/// Exact chromatic number together with an optimal colouring.
pub fn optimal_coloring(g: &Graph) -> Result<Coloring> {
    let adj = masks_for(g)?;
    let n = adj.len();
    if n == 0 {
        return Ok(Coloring::new(Vec::new(), 0));
    }
    let lower = greedy_clique(&adj).len();
    let upper_colors = Dsatur::new(&adj, 64).greedy();
    let upper = upper_colors.iter().max().map_or(0, |&c| c + 1);
    for k in lower..upper {
        if let Some(colors) = colorable_masks(&adj, k) {
            return Ok(Coloring::new(colors, k));
        }
    }
    Ok(Coloring::new(upper_colors, upper))
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    optimal_coloring(g).map(|c| c.palette())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::graph::{complete, complete_multipartite, cycle, power};

    /// Tries every assignment of `k` colours.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.order();
        if n == 0 {
            return true;
        }
        let total = (k as u64).pow(n as u32);
        (0..total).any(|mut code| {
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let c = (code % k as u64) as usize;
                    code /= k as u64;
                    c
                })
                .collect();
            g.edges().all(|(u, v)| colors[u] != colors[v])
        })
    }

    fn brute_chromatic(g: &Graph) -> usize {
        (0..=g.order()).find(|&k| brute_colorable(g, k)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&complete(5)).unwrap(), 5);
        assert_eq!(
            chromatic_number(&power(&cycle(7).unwrap(), 2).unwrap()).unwrap(),
            4
        );
        assert_eq!(chromatic_number(&cycle(9).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(10).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::new(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::new(4)).unwrap(), 1);
        assert_eq!(
            chromatic_number(&complete_multipartite(&[3, 2, 2, 1]).unwrap()).unwrap(),
            4
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            chromatic_number(&cycle(41).unwrap()),
            Err(Error::SolverOutOfRange { order: 41, cap: 40 })
        ));
    }

    #[test]
    fn optimal_colorings_are_proper() {
        for k in 5..=16 {
            for p in 1..=3 {
                let g = power(&cycle(k).unwrap(), p).unwrap();
                let c = optimal_coloring(&g).unwrap();
                assert!(is_proper(&g, &c));
                assert!(c.colors().iter().all(|&x| x < c.palette()));
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let density = rng.gen_range(0.2..0.9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(chromatic_number(&g).unwrap(), brute_chromatic(&g), "{g:?}");
        }
    }

    #[test]
    fn greedy_clique_is_a_clique() {
        let g = power(&cycle(11).unwrap(), 3).unwrap();
        let adj = g.masks().unwrap();
        let q = greedy_clique(&adj);
        assert_eq!(q.len(), 4);
        for (i, &u) in q.iter().enumerate() {
            for &v in &q[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
    }
}
