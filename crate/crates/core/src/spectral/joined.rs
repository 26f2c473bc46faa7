//! The joined multipartite family `K_{t-1} ∨ K_{n_1,…,n_q}`: its collapsed
//! quotient, closed-form Perron entries and part balancing.

use serde::{Deserialize, Serialize};

use super::quotient::matrix_perron;
use crate::error::{Error, Result};
use crate::graph::turan_part_sizes;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JoinedSpectrum {
    pub lambda: f64,
    /// Common Perron entry of each part, in the order given.
    pub part_entries: Vec<f64>,
    /// Entry of the apex clique, normalised to 1; absent when `t = 1`.
    pub apex_entry: Option<f64>,
    /// Max residual of `λ x_i = Σ_j n_j x_j - n_i x_i + (t-1) x_apex` (and
    /// the apex row when present).
    pub eigensystem_residual: f64,
    /// Max residual of `x_i (λ + n_i) = (λ + 1) x_apex`. Without an apex the
    /// right side uses `Σ_j n_j x_j / (λ + 1)` in place of `x_apex`.
    pub closed_form_residual: f64,
}

fn check_parts(t: usize, parts: &[usize]) -> Result<()> {
    if t == 0 {
        return Err(Error::MalformedFamily(
            "apex parameter t must be at least 1".into(),
        ));
    }
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::MalformedFamily(format!(
            "parts must be nonempty and positive, got {parts:?}"
        )));
    }
    Ok(())
}

/// Quotient of `K_{t-1} ∨ K_{parts}` over parts then (when `t >= 2`) the apex.
fn collapsed_quotient(t: usize, parts: &[usize]) -> Vec<Vec<f64>> {
    let q = parts.len();
    let dim = if t >= 2 { q + 1 } else { q };
    let mut b = vec![vec![0.0; dim]; dim];
    for i in 0..q {
        for (j, &nj) in parts.iter().enumerate() {
            if i != j {
                b[i][j] = nj as f64;
            }
        }
        if t >= 2 {
            b[i][q] = (t - 1) as f64;
            b[q][i] = parts[i] as f64;
        }
    }
    if t >= 2 {
        b[q][q] = (t - 2) as f64;
    }
    b
}

pub fn joined_multipartite_spectrum(t: usize, parts: &[usize], tol: f64) -> Result<JoinedSpectrum> {
    check_parts(t, parts)?;
    let b = collapsed_quotient(t, parts);
    let (lambda, mut x) = matrix_perron(&b, tol)?;
    let q = parts.len();
    let scale = if t >= 2 {
        x[q]
    } else {
        x.iter().cloned().fold(0.0, f64::max)
    };
    for xi in &mut x {
        *xi /= scale;
    }
    let apex = (t >= 2).then(|| x[q]);
    let part_entries = x[..q].to_vec();
    let sum: f64 = parts
        .iter()
        .zip(&part_entries)
        .map(|(&n, x)| n as f64 * x)
        .sum();
    let apex_term = apex.map_or(0.0, |a| (t - 1) as f64 * a);

    let mut eig = parts
        .iter()
        .zip(&part_entries)
        .map(|(&n, &xi)| (lambda * xi - (sum - n as f64 * xi + apex_term)).abs())
        .fold(0.0, f64::max);
    if let Some(a) = apex {
        eig = eig.max((lambda * a - (sum + (t - 2) as f64 * a)).abs());
    }
    let reference = apex.unwrap_or(sum / (lambda + 1.0));
    let closed = parts
        .iter()
        .zip(&part_entries)
        .map(|(&n, &xi)| (xi * (lambda + n as f64) - (lambda + 1.0) * reference).abs())
        .fold(0.0, f64::max);

    Ok(JoinedSpectrum {
        lambda,
        part_entries,
        apex_entry: apex,
        eigensystem_residual: eig,
        closed_form_residual: closed,
    })
}

/// Spectral radius of `K_{t-1} ∨ K_{profile}`.
pub fn profile_radius(t: usize, profile: &[usize], tol: f64) -> Result<f64> {
    check_parts(t, profile)?;
    matrix_perron(&collapsed_quotient(t, profile), tol).map(|(l, _)| l)
}

/// All nonincreasing profiles of `total` into exactly `parts` positive parts.
pub fn part_profiles(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Every remaining slot needs at least one vertex.
        let hi = cap.min(left.saturating_sub(slots - 1));
        let lo = left.div_ceil(slots);
        for size in (lo..=hi).rev() {
            cur.push(size);
            rec(left - size, slots - 1, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(
            total,
            parts,
            total,
            &mut Vec::with_capacity(parts),
            &mut out,
        );
    }
    out
}

/// The Turán profile: `parts` sizes differing by at most one, largest first.
pub fn balanced_profile(total: usize, parts: usize) -> Result<Vec<usize>> {
    if parts == 0 || total < parts {
        return Err(Error::Degenerate(format!(
            "cannot split {total} vertices into {parts} positive parts"
        )));
    }
    turan_part_sizes(total, parts)
}

/// Moves one vertex from a largest to a smallest part when they differ by at
/// least two; `None` for a balanced profile.
pub fn exchange_step(profile: &[usize]) -> Option<Vec<usize>> {
    let (hi, _) = profile
        .iter()
        .enumerate()
        .max_by_key(|&(i, &n)| (n, std::cmp::Reverse(i)))?;
    let (lo, _) = profile.iter().enumerate().min_by_key(|&(i, &n)| (n, i))?;
    if profile[hi] < profile[lo] + 2 {
        return None;
    }
    let mut next = profile.to_vec();
    next[hi] -= 1;
    next[lo] += 1;
    next.sort_unstable_by(|a, b| b.cmp(a));
    Some(next)
}
