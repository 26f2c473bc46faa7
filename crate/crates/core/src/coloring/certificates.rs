//! Explicit colourings of `C_k^p` on the vertices `v_0, ..., v_{k-1}` taken in
//! cycle order.
//!
//! For `r != 0` put `q = p + m + 2`. The block colouring runs through `q`
//! colours on the first `t·q` vertices and `q - 1` colours on the rest. The
//! critical matching pairs the last two vertices of each of the `t` long
//! blocks; recolouring the last vertex of every long block with colour `q - 2`
//! then gives a `(q - 1)`-colouring of `C_k^p` minus that matching.

use super::Coloring;
use crate::error::{Error, Result};
use crate::params::{decompose, PowerCycleParams};

fn split(k: usize, p: usize) -> Result<(PowerCycleParams, usize, usize)> {
    let d = decompose(k, p)?;
    match (d.m, d.t) {
        (Some(m), Some(t)) => Ok((d, p + m + 2, t)),
        _ => Err(Error::NotApplicable(format!(
            "k={k}, p={p} has r=0; use the residue colouring"
        ))),
    }
}

/// `v_i ↦ i mod (p+1)`, valid when `(p+1) | k`.
pub fn residue_coloring(k: usize, p: usize) -> Result<Coloring> {
    let d = decompose(k, p)?;
    if d.r != 0 {
        return Err(Error::NotApplicable(format!(
            "k={k}, p={p} has r={}; the residue colouring needs r=0",
            d.r
        )));
    }
    Ok(Coloring::new((0..k).map(|i| i % (p + 1)).collect(), p + 1))
}

/// `q`-colouring of `C_k^p` with `q = p + m + 2` colours.
pub fn block_coloring(k: usize, p: usize) -> Result<Coloring> {
    let (_, q, t) = split(k, p)?;
    let long = t * q;
    let colors = (0..k)
        .map(|i| {
            if i < long {
                i % q
            } else {
                (i - long) % (q - 1)
            }
        })
        .collect();
    Ok(Coloring::new(colors, q))
}

/// The `t` edges `v_{jq+q-2} v_{jq+q-1}` for `0 <= j < t`.
pub fn critical_matching(k: usize, p: usize) -> Result<Vec<(usize, usize)>> {
    let (_, q, t) = split(k, p)?;
    Ok((0..t).map(|j| (j * q + q - 2, (j + 1) * q - 1)).collect())
}

/// `(q - 1)`-colouring of `C_k^p` with the critical matching removed.
pub fn reduced_coloring(k: usize, p: usize) -> Result<Coloring> {
    let (_, q, t) = split(k, p)?;
    let f = block_coloring(k, p)?;
    let long = t * q;
    let colors = f
        .colors()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i < long && i % q == q - 1 { q - 2 } else { c })
        .collect();
    Ok(Coloring::new(colors, q - 1))
}
