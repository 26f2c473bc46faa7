//! Integer arithmetic of the cycle-power parameters.
//!
//! Writing `k = s(p+1) + r` with `0 <= r < p+1` and, when `r != 0`,
//! `r = m·s + t` with `1 <= t <= s`, the chromatic number of `C_k^p` is `p+1`
//! for `r = 0` and `p+m+2` otherwise, and the extremal graph for
//! `C_k^p`-freeness is `K_{t-1} ∨ T_{n-t+1, p+m+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::turan_part_sizes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PowerCycleParams {
    pub k: usize,
    pub p: usize,
    pub s: usize,
    pub r: usize,
    /// Only present when `r != 0`.
    pub m: Option<usize>,
    /// Only present when `r != 0`; always in `1..=s`.
    pub t: Option<usize>,
    /// `p + m + 1`, only present when `r != 0`.
    pub p_prime: Option<usize>,
    #[serde(rename = "chi")]
    pub chi_predicted: usize,
    pub turan_applicable: bool,
    pub spectral_applicable: bool,
}

impl PowerCycleParams {
    /// `(t, p')` when `r != 0`.
    pub fn applicable_tp(&self) -> Option<(usize, usize)> {
        Some((self.t?, self.p_prime?))
    }

    /// Smallest `n` for which the extremal construction is defined.
    pub fn min_order(&self) -> Option<usize> {
        self.applicable_tp().map(|(t, pp)| t - 1 + pp)
    }
}

pub fn decompose(k: usize, p: usize) -> Result<PowerCycleParams> {
    if p == 0 {
        return Err(Error::MalformedFamily("power p must be at least 1".into()));
    }
    if k < 2 * p + 1 {
        return Err(Error::CompleteGraphRegime { k, p });
    }
    let s = k / (p + 1);
    let r = k % (p + 1);
    debug_assert!(s >= 1);
    if r == 0 {
        return Ok(PowerCycleParams {
            k,
            p,
            s,
            r,
            m: None,
            t: None,
            p_prime: None,
            chi_predicted: p + 1,
            turan_applicable: false,
            spectral_applicable: false,
        });
    }
    // t must land in 1..=s, so t = s when s divides r.
    let m = r.div_ceil(s) - 1;
    let t = r - m * s;
    debug_assert!((1..=s).contains(&t));
    Ok(PowerCycleParams {
        k,
        p,
        s,
        r,
        m: Some(m),
        t: Some(t),
        p_prime: Some(p + m + 1),
        chi_predicted: p + m + 2,
        turan_applicable: true,
        spectral_applicable: t != s,
    })
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Edge count of `T_{n,r}`.
pub fn turan_edge_count(n: usize, r: usize) -> Result<usize> {
    let sizes = turan_part_sizes(n, r)?;
    Ok(choose2(n) - sizes.iter().map(|&s| choose2(s)).sum::<usize>())
}

/// Edge count of `K_{t-1} ∨ T_{n-t+1, p'}`.
pub fn extremal_edge_count(n: usize, k: usize, p: usize) -> Result<usize> {
    let params = decompose(k, p)?;
    let (t, p_prime) = params
        .applicable_tp()
        .ok_or_else(|| Error::NotApplicable(format!("k={k}, p={p} has r=0")))?;
    if n < t - 1 + p_prime {
        return Err(Error::Degenerate(format!(
            "n={n} is below t-1+p'={}",
            t - 1 + p_prime
        )));
    }
    let apex = t - 1;
    Ok(choose2(apex) + apex * (n - apex) + turan_edge_count(n - apex, p_prime)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{extremal_construction, turan};

    /// Searches every (s, r, m, t) candidate directly from the defining
    /// constraints and returns all that satisfy them.
    type Candidate = (usize, usize, Option<(usize, usize)>);

    fn brute_candidates(k: usize, p: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        for s in 1..=k {
            for r in 0..=p {
                if s * (p + 1) + r != k {
                    continue;
                }
                if r == 0 {
                    out.push((s, r, None));
                    continue;
                }
                for m in 0..=r {
                    for t in 1..=s {
                        if m * s + t == r {
                            out.push((s, r, Some((m, t))));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn worked_examples() {
        let d = decompose(7, 2).unwrap();
        assert_eq!(
            (d.s, d.r, d.m, d.t, d.p_prime, d.chi_predicted),
            (2, 1, Some(0), Some(1), Some(3), 4)
        );
        assert!(d.spectral_applicable && d.turan_applicable);

        let d = decompose(5, 2).unwrap();
        assert_eq!(
            (d.s, d.r, d.m, d.t, d.p_prime, d.chi_predicted),
            (1, 2, Some(1), Some(1), Some(4), 5)
        );

        let d = decompose(9, 2).unwrap();
        assert_eq!(
            (d.s, d.r, d.chi_predicted, d.turan_applicable),
            (3, 0, 3, false)
        );

        let d = decompose(8, 2).unwrap();
        assert_eq!((d.s, d.r, d.m, d.t), (2, 2, Some(0), Some(2)));
        assert!(!d.spectral_applicable && d.turan_applicable);
    }

    #[test]
    fn complete_regime_is_typed() {
        assert!(matches!(
            decompose(4, 2),
            Err(Error::CompleteGraphRegime { k: 4, p: 2 })
        ));
        assert!(decompose(5, 0).is_err());
    }

    #[test]
    fn decomposition_is_the_unique_candidate() {
        for p in 1..=6 {
            for k in 2 * p + 1..=40 {
                let d = decompose(k, p).unwrap();
                let cands = brute_candidates(k, p);
                assert_eq!(cands.len(), 1, "k={k} p={p}: {cands:?}");
                let (s, r, mt) = cands[0];
                assert_eq!((d.s, d.r), (s, r));
                assert_eq!(d.m.zip(d.t), mt);
                if let (Some(m), Some(t)) = (d.m, d.t) {
                    assert_eq!(k, s * (p + 1) + m * s + t);
                    // k = t(p+m+2) + (s-t)(p+m+1)
                    assert_eq!(k, t * (p + m + 2) + (s - t) * (p + m + 1));
                    assert_eq!(d.chi_predicted, p + m + 2);
                } else {
                    assert_eq!(d.chi_predicted, p + 1);
                }
                assert!(d.chi_predicted > p);
            }
        }
    }

    #[test]
    fn chi_constant_along_r0_points() {
        for p in 1..=6 {
            let chis: Vec<usize> = (2 * p + 1..=40)
                .filter_map(|k| decompose(k, p).ok().filter(|d| d.r == 0))
                .map(|d| d.chi_predicted)
                .collect();
            assert!(chis.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(turan_edge_count(6, 3).unwrap(), 12);
        assert_eq!(turan_edge_count(7, 4).unwrap(), 18);
        assert_eq!(turan_edge_count(9, 1).unwrap(), 0);
        assert_eq!(extremal_edge_count(10, 11, 2).unwrap(), 36);
        assert_eq!(extremal_edge_count(8, 5, 2).unwrap(), 24);
        assert_eq!(extremal_edge_count(9, 7, 2).unwrap(), 27);
        assert!(matches!(
            extremal_edge_count(10, 9, 2),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn turan_count_matches_construction() {
        for n in 0..=25 {
            for r in 1..=8 {
                assert_eq!(
                    turan_edge_count(n, r).unwrap(),
                    turan(n, r).unwrap().edge_count()
                );
            }
        }
    }

    #[test]
    fn extremal_count_matches_construction() {
        for p in 1..=4 {
            for k in 2 * p + 1..=20 {
                let d = decompose(k, p).unwrap();
                let Some(min_n) = d.min_order() else { continue };
                for n in min_n..=min_n + 12 {
                    assert_eq!(
                        extremal_edge_count(n, k, p).unwrap(),
                        extremal_construction(n, k, p).unwrap().edge_count(),
                        "n={n} k={k} p={p}"
                    );
                }
            }
        }
    }
}
