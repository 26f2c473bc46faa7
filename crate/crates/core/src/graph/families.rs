use super::{Distance, Graph, VertexPartition};
use crate::error::{Error, Result};
use crate::params::decompose;

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// The cycle `v_0 v_1 ... v_{n-1} v_0`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::MalformedFamily(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    Ok(g)
}

/// `g^p`: joins every pair at distance `1..=p` in `g`.
pub fn power(g: &Graph, p: usize) -> Result<Graph> {
    if p == 0 {
        return Err(Error::MalformedFamily("graph power needs p >= 1".into()));
    }
    let n = g.order();
    let mut out = Graph::new(n);
    for u in 0..n {
        for (v, d) in g.bfs(u).into_iter().enumerate().skip(u + 1) {
            if let Distance::Finite(d) = d {
                if d <= p {
                    out.add_edge(u, v);
                }
            }
        }
    }
    Ok(out)
}

/// `g ∨ h`: `g` on `0..|g|`, `h` shifted after it, all cross edges present.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = g.disjoint_union(h);
    let n = g.order();
    for u in 0..n {
        for v in 0..h.order() {
            out.add_edge(u, n + v);
        }
    }
    out
}

/// Balanced part sizes of `T_{n,r}`, largest first. Zero-size parts appear
/// when `r > n`.
pub fn turan_part_sizes(n: usize, r: usize) -> Result<Vec<usize>> {
    if r == 0 {
        return Err(Error::MalformedFamily("Turán graph needs r >= 1".into()));
    }
    let (q, extra) = (n / r, n % r);
    Ok((0..r).map(|i| q + usize::from(i < extra)).collect())
}

pub fn turan(n: usize, r: usize) -> Result<Graph> {
    let sizes = turan_part_sizes(n, r)?;
    Ok(multipartite_unchecked(&sizes))
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::MalformedFamily(
            "complete multipartite graph needs at least one part".into(),
        ));
    }
    if let Some(i) = parts.iter().position(|&s| s == 0) {
        return Err(Error::MalformedFamily(format!("part {i} is empty")));
    }
    Ok(multipartite_unchecked(parts))
}

fn multipartite_unchecked(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut label = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        label.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if label[u] != label[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `K_apex ∨ K_{parts}` together with its natural partition: the apex block
/// first (omitted when `apex == 0`), then one block per part.
pub fn joined_multipartite(apex: usize, parts: &[usize]) -> Result<(Graph, VertexPartition)> {
    let g = join(&complete(apex), &complete_multipartite(parts)?);
    let mut blocks = Vec::with_capacity(parts.len() + 1);
    if apex > 0 {
        blocks.push((0..apex).collect());
    }
    let mut next = apex;
    for &s in parts {
        blocks.push((next..next + s).collect());
        next += s;
    }
    let partition = VertexPartition::new(g.order(), blocks)?;
    Ok((g, partition))
}

/// `K_{t-1} ∨ T_{n-t+1, p'}` for the decomposition of `(k, p)`.
pub fn extremal_construction(n: usize, k: usize, p: usize) -> Result<Graph> {
    extremal_partition(n, k, p).map(|(g, _)| g)
}

/// The extremal construction with its apex/part partition.
pub fn extremal_partition(n: usize, k: usize, p: usize) -> Result<(Graph, VertexPartition)> {
    let params = decompose(k, p)?;
    let (t, p_prime) = params.applicable_tp().ok_or_else(|| {
        Error::NotApplicable(format!(
            "k={k}, p={p} has r=0; the extremal construction needs r != 0"
        ))
    })?;
    if n < t - 1 + p_prime {
        return Err(Error::Degenerate(format!(
            "n={n} is below t-1+p'={} for k={k}, p={p}",
            t - 1 + p_prime
        )));
    }
    let parts = turan_part_sizes(n - (t - 1), p_prime)?;
    joined_multipartite(t - 1, &parts)
}
