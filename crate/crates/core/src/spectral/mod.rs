//! Spectral radius and Perron vector of graphs, equitable partitions and
//! their quotient matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

mod equitable;
mod joined;
mod quotient;

pub use equitable::{equitable_refinement, is_equitable};
pub use joined::{
    balanced_profile, exchange_step, joined_multipartite_spectrum, part_profiles, profile_radius,
    JoinedSpectrum,
};
pub use quotient::{matrix_perron, matrix_spectral_radius, quotient_matrix, QuotientMatrix};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectralResult {
    pub lambda: f64,
    /// Nonnegative eigenvector scaled so its largest entry is exactly 1.
    pub perron: Vec<f64>,
    pub iterations: usize,
    /// `max |(A x - lambda x)_v|`.
    pub residual: f64,
    pub converged: bool,
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

struct ComponentResult {
    lambda: f64,
    x: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
}

/// Power iteration on `A + I` restricted to one connected component, given as
/// neighbour lists in local indices. The shift keeps bipartite components
/// from oscillating and leaves the eigenvectors unchanged.
fn component_power(nbrs: &[Vec<usize>], tol: f64) -> ComponentResult {
    let n = nbrs.len();
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut prev = f64::NEG_INFINITY;
    let mut out = ComponentResult {
        lambda: 0.0,
        x: Vec::new(),
        iterations: 0,
        residual: f64::INFINITY,
        converged: false,
    };
    for it in 1..=MAX_ITERATIONS {
        for (yi, row) in y.iter_mut().zip(nbrs) {
            *yi = row.iter().map(|&j| x[j]).sum();
        }
        let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let xx: f64 = x.iter().map(|a| a * a).sum();
        let rho = xy / xx;
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - rho * a).abs())
            .fold(0.0, f64::max);
        out.lambda = rho;
        out.iterations = it;
        out.residual = residual;
        if (rho - prev).abs() <= tol && residual <= tol {
            out.converged = true;
            break;
        }
        prev = rho;
        let mut top = 0.0f64;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            top = top.max(*xi);
        }
        for xi in &mut x {
            *xi /= top;
        }
    }
    out.x = x;
    out
}

/// Spectral radius of the adjacency matrix by shifted power iteration from
/// the all-ones vector, run per connected component.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    check_tol(tol)?;
    if g.is_empty() {
        return Err(Error::MalformedFamily(
            "spectral radius of the empty graph".into(),
        ));
    }
    let mut best: Option<(ComponentResult, Vec<usize>)> = None;
    let mut all_converged = true;
    let mut total_iterations = 0;
    for comp in g.components() {
        let mut local = vec![usize::MAX; g.order()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let nbrs: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| g.neighbors(v).map(|w| local[w]).collect())
            .collect();
        let r = component_power(&nbrs, tol);
        all_converged &= r.converged;
        total_iterations += r.iterations;
        if best.as_ref().is_none_or(|(b, _)| r.lambda > b.lambda) {
            best = Some((r, comp));
        }
    }
    let (r, comp) = best.expect("at least one component");
    let mut perron = vec![0.0; g.order()];
    for (i, &v) in comp.iter().enumerate() {
        perron[v] = r.x[i];
    }
    // Max-entry normalisation is exact after the final division.
    let top = perron.iter().cloned().fold(0.0, f64::max);
    for x in &mut perron {
        *x /= top;
    }
    Ok(SpectralResult {
        lambda: r.lambda,
        perron,
        iterations: total_iterations,
        residual: r.residual,
        converged: all_converged,
    })
}

/// `2 e(G) / n`, the Rayleigh quotient of the all-ones vector.
pub fn rayleigh_lower_bound(g: &Graph) -> f64 {
    if g.is_empty() {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / g.order() as f64
}
