use cpl_core::coloring::{
    block_coloring, chromatic_number, critical_matching, is_color_k_critical, is_proper,
    reduced_coloring, residue_coloring,
};
use cpl_core::graph::{cycle, power};
use cpl_core::params::decompose;
use cpl_core::{par, Error, Result};
use serde_json::json;

use crate::config::Config;
use crate::report::{Check, Row, VerificationReport};

pub struct Lemma2Args {
    pub kmin: usize,
    pub kmax: usize,
    pub pmax: usize,
    /// Test hook: rotate the critical matching by one vertex before
    /// checking the reduced colouring against it.
    pub corrupt_matching: bool,
}

fn row(k: usize, p: usize, corrupt: bool) -> Result<Row> {
    let params = decompose(k, p)?;
    let g = power(&cycle(k)?, p)?;
    let chi = chromatic_number(&g)?;
    let mut checks = vec![Check::new(
        "chi",
        chi == params.chi_predicted,
        format!("computed {chi}, predicted {}", params.chi_predicted),
    )];
    let mut notes = Vec::new();
    let mut data = json!({ "params": params, "chiComputed": chi });

    match params.t {
        None => {
            let c = residue_coloring(k, p)?;
            checks.push(Check::new(
                "residue-coloring",
                is_proper(&g, &c) && c.palette() == p + 1,
                conflict_detail(&g, &c, p + 1),
            ));
            notes.push("r = 0: criticality not claimed, skipped".into());
        }
        Some(t) => {
            let f = block_coloring(k, p)?;
            checks.push(Check::new(
                "block-coloring",
                is_proper(&g, &f) && f.palette() == chi,
                conflict_detail(&g, &f, chi),
            ));

            let mut b = critical_matching(k, p)?;
            if corrupt {
                b = b
                    .iter()
                    .map(|&(u, v)| ((u + 1) % k, (v + 1) % k))
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
            }
            data["matching"] = json!(b
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>());
            let reduced = g.without_edges(&b);
            let gc = reduced_coloring(k, p)?;
            checks.push(Check::new(
                "reduced-coloring",
                is_proper(&reduced, &gc) && gc.palette() + 1 == chi,
                conflict_detail(&reduced, &gc, chi - 1),
            ));

            let report = is_color_k_critical(&g, t)?;
            let detail = match (&report.worst_vertex_subset, report.edge_removal_drops_chi) {
                (_, false) => format!("no {t} edges lower chi"),
                (Some(s), _) => format!("deleting vertices {s:?} lowers chi"),
                (None, true) => format!(
                    "edges {:?} lower chi; no {} vertex deletion does ({} subsets)",
                    report.edge_set,
                    t - 1,
                    report.subsets_checked
                ),
            };
            checks.push(Check::new("critical", report.verdict, detail));
            data["criticality"] = serde_json::to_value(&report)?;
        }
    }
    Ok(Row::new(format!("k={k} p={p}"), data, checks, notes))
}

fn conflict_detail(
    g: &cpl_core::Graph,
    c: &cpl_core::coloring::Coloring,
    palette: usize,
) -> String {
    match c.conflict(g) {
        Some((u, v)) => format!("edge {u}-{v} is monochromatic (colour {})", c.color(u)),
        None if c.palette() != palette => {
            format!("uses {} colours, expected {palette}", c.palette())
        }
        None => format!("proper with {palette} colours"),
    }
}

pub fn run(args: &Lemma2Args, config: &Config) -> Result<VerificationReport> {
    if args.pmax == 0 {
        return Err(Error::MalformedFamily("--pmax must be at least 1".into()));
    }
    let grid: Vec<(usize, usize)> = (1..=args.pmax)
        .flat_map(|p| ((2 * p + 1).max(args.kmin)..=args.kmax).map(move |k| (k, p)))
        .collect();
    if grid.is_empty() {
        return Err(Error::MalformedFamily(format!(
            "empty grid: no k in {}..={} with k >= 2p+1",
            args.kmin, args.kmax
        )));
    }
    let rows = par::map(par::Execution::default(), &grid, |&(k, p)| {
        row(k, p, args.corrupt_matching)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "verify-lemma2",
        config.to_json(),
        json!({ "kmin": args.kmin, "kmax": args.kmax, "pmax": args.pmax, "corruptMatching": args.corrupt_matching }),
        rows,
    ))
}
