use serde::{Deserialize, Serialize};

use super::check_tol;
use super::MAX_ITERATIONS;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPartition};

/// `entries[i][j]`: neighbours in block `j` of any vertex of block `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cross-block edge counts agree: `b_ij |V_i| = b_ji |V_j|`.
    pub fn is_consistent(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                self.entries[i][j] * self.block_sizes[i] == self.entries[j][i] * self.block_sizes[j]
            })
        })
    }

    pub fn as_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&b| b as f64).collect())
            .collect()
    }
}

pub(crate) fn check_equitable(g: &Graph, part: &VertexPartition) -> Result<Vec<Vec<usize>>> {
    if part.order() != g.order() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            part.order(),
            g.order()
        )));
    }
    let block_of = part.block_of();
    let k = part.len();
    let counts = |v: usize| {
        let mut c = vec![0; k];
        for w in g.neighbors(v) {
            c[block_of[w]] += 1;
        }
        c
    };
    let mut entries = Vec::with_capacity(k);
    for (i, block) in part.blocks().iter().enumerate() {
        let first = counts(block[0]);
        for &v in &block[1..] {
            let cv = counts(v);
            if let Some(j) = (0..k).find(|&j| cv[j] != first[j]) {
                return Err(Error::NotEquitable {
                    block: i,
                    target: j,
                    u: block[0],
                    v,
                    count_u: first[j],
                    count_v: cv[j],
                });
            }
        }
        entries.push(first);
    }
    Ok(entries)
}

pub fn quotient_matrix(g: &Graph, part: &VertexPartition) -> Result<QuotientMatrix> {
    let entries = check_equitable(g, part)?;
    Ok(QuotientMatrix {
        entries,
        block_sizes: part.blocks().iter().map(Vec::len).collect(),
    })
}

/// Largest eigenvalue and a nonnegative eigenvector (max entry 1) of a square
/// nonnegative matrix, by power iteration on `B + I` from the all-ones vector.
///
/// Stops once the Collatz–Wielandt ratios `(Bx)_i / x_i` span at most `tol`,
/// which brackets the eigenvalue and bounds the residual by `tol`.
pub fn matrix_perron(b: &[Vec<f64>], tol: f64) -> Result<(f64, Vec<f64>)> {
    check_tol(tol)?;
    let n = b.len();
    if n == 0 || b.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedFamily(
            "matrix must be square and nonempty".into(),
        ));
    }
    if b.iter().flatten().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::MalformedFamily("matrix must be nonnegative".into()));
    }
    let mut x = vec![1.0; n];
    let mut bx = vec![0.0; n];
    let mut estimate = 0.0;
    for _ in 0..MAX_ITERATIONS {
        for (out, row) in bx.iter_mut().zip(b) {
            *out = row.iter().zip(&x).map(|(a, xi)| a * xi).sum();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (&y, &xi) in bx.iter().zip(&x) {
            if xi > 0.0 {
                let r = y / xi;
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
        estimate = hi;
        let residual = bx
            .iter()
            .zip(&x)
            .map(|(y, xi)| (y - hi * xi).abs())
            .fold(0.0, f64::max);
        if hi - lo <= tol && residual <= tol {
            return Ok((hi, x));
        }
        let mut top = 0.0f64;
        for (xi, y) in x.iter_mut().zip(&bx) {
            *xi += y;
            top = top.max(*xi);
        }
        for xi in &mut x {
            *xi /= top;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        estimate,
    })
}

pub fn matrix_spectral_radius(q: &QuotientMatrix, tol: f64) -> Result<f64> {
    matrix_perron(&q.as_f64(), tol).map(|(l, _)| l)
}
