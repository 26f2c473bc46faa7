use cpl_core::containment::is_free;
use cpl_core::graph::VertexPartition;
use cpl_core::graph::{extremal_partition, turan_part_sizes};
use cpl_core::params::decompose;
use cpl_core::spectral::{
    balanced_profile, equitable_refinement, joined_multipartite_spectrum, matrix_spectral_radius,
    part_profiles, profile_radius, quotient_matrix, rayleigh_lower_bound, spectral_radius,
};
use cpl_core::{Error, Result};
use serde_json::json;

use crate::config::Config;
use crate::report::{Check, Row, VerificationReport};

/// Profiles beyond this count are not compared one by one.
const PROFILE_LIMIT: usize = 20_000;

/// Strict comparisons need at least this margin.
const MARGIN: f64 = 1e-9;

pub fn run(n: usize, k: usize, p: usize, config: &Config) -> Result<VerificationReport> {
    let tol = config.tol;
    let params = decompose(k, p)?;
    let (t, p_prime) = params.applicable_tp().ok_or_else(|| {
        Error::NotApplicable(format!("k={k}, p={p} has r = 0; no extremal construction"))
    })?;
    let (g, natural) = extremal_partition(n, k, p)?;
    let mut notes = Vec::new();
    if !params.spectral_applicable {
        notes.push(format!(
            "t = s = {t}: outside the range where the construction is known to maximise the spectral radius; numerics only"
        ));
    }
    let slack = 10.0 * tol;
    let mut checks = Vec::new();

    let free = is_free(&g, k, p);
    checks.push(Check::new(
        "free",
        free,
        format!("construction contains C_{k}^{p}: {}", !free),
    ));

    let power = spectral_radius(&g, tol)?;
    checks.push(Check::new(
        "converged",
        power.converged,
        format!(
            "{} iterations, residual {:e}",
            power.iterations, power.residual
        ),
    ));

    let bound = (1.0 - 1.0 / p_prime as f64) * n as f64;
    checks.push(Check::new(
        "rayleigh-bound",
        power.lambda - bound >= -slack,
        format!(
            "lambda {} vs (1-1/p')n = {bound}, margin {:e}",
            power.lambda,
            power.lambda - bound
        ),
    ));
    let rq = rayleigh_lower_bound(&g);
    checks.push(Check::new(
        "rayleigh-quotient",
        power.lambda >= rq - slack,
        format!("lambda {} vs 2e/n = {rq}", power.lambda),
    ));

    let coarse = equitable_refinement(&g, &VertexPartition::trivial(n));
    let q = quotient_matrix(&g, &coarse)?;
    let lq = matrix_spectral_radius(&q, tol)?;
    let q_nat = quotient_matrix(&g, &natural)?;
    let lq_nat = matrix_spectral_radius(&q_nat, tol)?;
    let delta = (lq - power.lambda).abs().max((lq_nat - power.lambda).abs());
    checks.push(Check::new(
        "quotient",
        delta <= slack,
        format!(
            "|lambda_quotient - lambda_power| = {delta:e} ({} and {} blocks)",
            q.len(),
            q_nat.len()
        ),
    ));

    let parts = turan_part_sizes(n - (t - 1), p_prime)?;
    let spectrum = joined_multipartite_spectrum(t, &parts, tol)?;
    checks.push(Check::new(
        "closed-form",
        spectrum.closed_form_residual <= slack && spectrum.eigensystem_residual <= slack,
        format!(
            "x_i(lambda+n_i) - (lambda+1)x_apex residual {:e}, eigensystem residual {:e}",
            spectrum.closed_form_residual, spectrum.eigensystem_residual
        ),
    ));

    let total = n - (t - 1);
    let balanced = balanced_profile(total, p_prime)?;
    let best = profile_radius(t, &balanced, tol)?;
    let profiles = part_profiles(total, p_prime);
    let mut beaten = 0;
    let mut worst: Option<(Vec<usize>, f64)> = None;
    let compared: Vec<&Vec<usize>> = profiles
        .iter()
        .filter(|pr| **pr != balanced)
        .take(PROFILE_LIMIT)
        .collect();
    for pr in &compared {
        let l = profile_radius(t, pr, tol)?;
        if best - l > MARGIN {
            beaten += 1;
        } else if worst.as_ref().is_none_or(|(_, w)| l > *w) {
            worst = Some(((*pr).clone(), l));
        }
    }
    let detail = match &worst {
        None => format!(
            "balanced {balanced:?} beats all {} other profiles",
            compared.len()
        ),
        Some((pr, l)) => format!("profile {pr:?} reaches {l} against balanced {best}"),
    };
    checks.push(Check::new("balancing", beaten == compared.len(), detail));
    if profiles.len() > PROFILE_LIMIT {
        notes.push(format!(
            "compared the first {PROFILE_LIMIT} of {} profiles",
            profiles.len()
        ));
    }

    let data = json!({
        "params": params,
        "n": n,
        "edges": g.edge_count(),
        "lambda": power.lambda,
        "residual": power.residual,
        "rayleighBound": bound,
        "lambdaQuotient": lq,
        "quotient": q,
        "partEntries": spectrum.part_entries,
        "apexEntry": spectrum.apex_entry,
        "closedFormResidual": spectrum.closed_form_residual,
    });
    let row = Row::new(format!("n={n} k={k} p={p}"), data, checks, notes);
    Ok(VerificationReport::new(
        "verify-spectral",
        config.to_json(),
        json!({ "n": n, "k": k, "p": p }),
        vec![row],
    ))
}
