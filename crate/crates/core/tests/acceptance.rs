//! Acceptance checks, one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use cpl_core::coloring::{
    block_coloring, chromatic_number, critical_matching, is_color_k_critical, is_proper,
    reduced_coloring,
};
use cpl_core::containment::is_free;
use cpl_core::graph::{
    cycle, extremal_construction, graph6, joined_multipartite, power, turan, Graph, VertexPartition,
};
use cpl_core::params::{decompose, extremal_edge_count, PowerCycleParams};
use cpl_core::search::{canonical_graph6, ex_bruteforce, spex_bruteforce, Value};
use cpl_core::spectral::{
    balanced_profile, equitable_refinement, joined_multipartite_spectrum, matrix_spectral_radius,
    part_profiles, profile_radius, quotient_matrix, spectral_radius, DEFAULT_TOL,
};
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: String, details: Vec<String>) -> Outcome {
        Outcome {
            pass,
            summary,
            details,
        }
    }
}

/// `(k, p)` with `1 <= p <= 4`, `2p+1 <= k <= 20`.
fn grid() -> Vec<PowerCycleParams> {
    (1..=4)
        .flat_map(|p| (2 * p + 1..=20).map(move |k| decompose(k, p).unwrap()))
        .collect()
}

fn cp(k: usize, p: usize) -> Graph {
    power(&cycle(k).unwrap(), p).unwrap()
}

/// Edge count of the balanced complete `r`-partite graph, summed over pairs of
/// parts.
fn turan_edges(n: usize, r: usize) -> usize {
    let sizes: Vec<usize> = (0..r).map(|i| n / r + usize::from(i < n % r)).collect();
    let mut e = 0;
    for i in 0..r {
        for j in i + 1..r {
            e += sizes[i] * sizes[j];
        }
    }
    e
}

fn chromatic_formula() -> Outcome {
    let mut bad = Vec::new();
    let points = grid();
    for d in &points {
        let chi = chromatic_number(&cp(d.k, d.p)).unwrap();
        let expected = match d.m {
            None => d.p + 1,
            Some(m) => d.p + m + 2,
        };
        if chi != expected {
            bad.push(format!(
                "k={} p={}: chi {chi}, formula {expected}",
                d.k, d.p
            ));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "exact chi(C_k^p) equals the formula on {} grid points",
            points.len()
        ),
        bad,
    )
}

fn coloring_certificates() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for d in grid().iter().filter(|d| d.r != 0) {
        n += 1;
        let g = cp(d.k, d.p);
        let chi = d.chi_predicted;
        let f = block_coloring(d.k, d.p).unwrap();
        if !is_proper(&g, &f) || f.palette() != chi {
            bad.push(format!(
                "k={} p={}: block colouring not proper with {chi} colours",
                d.k, d.p
            ));
        }
        let reduced = g.without_edges(&critical_matching(d.k, d.p).unwrap());
        let gc = reduced_coloring(d.k, d.p).unwrap();
        if !is_proper(&reduced, &gc) || gc.palette() != chi - 1 {
            bad.push(format!(
                "k={} p={}: reduced colouring not proper with {} colours",
                d.k,
                d.p,
                chi - 1
            ));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("explicit colourings proper on {n} points with r != 0"),
        bad,
    )
}

fn criticality() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for d in grid().iter().filter(|d| d.r != 0 && d.k <= 14) {
        n += 1;
        let t = d.t.unwrap();
        match is_color_k_critical(&cp(d.k, d.p), t) {
            Ok(r) if r.verdict => {}
            Ok(r) => bad.push(format!(
                "k={} p={} t={t}: not critical ({:?})",
                d.k, d.p, r.worst_vertex_subset
            )),
            Err(e) => bad.push(format!("k={} p={} t={t}: {e}", d.k, d.p)),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("C_k^p is colour-t-critical on {n} points with r != 0, k <= 14"),
        bad,
    )
}

fn construction_freeness() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for d in grid().iter().filter(|d| d.r != 0) {
        for n in [10, 13, 17, 22, 28, 34, 40] {
            if n < d.min_order().unwrap() {
                continue;
            }
            checked += 1;
            if !is_free(&extremal_construction(n, d.k, d.p).unwrap(), d.k, d.p) {
                bad.push(format!("n={n} k={} p={}: contains C_k^p", d.k, d.p));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("extremal construction is C_k^p-free in {checked} cases, n in 10..=40"),
        bad,
    )
}

fn turan_exact() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for k in 3..=9 {
        let p = k / 2;
        for n in 1..=8 {
            cases += 1;
            let want = turan_edges(n, k - 1) as u64;
            let r = ex_bruteforce(n, k, p).unwrap();
            if r.value != Value::Edges(want) {
                bad.push(format!("ex({n}, K_{k}) = {}, Turan gives {want}", r.value));
            }
            if n > 7 {
                continue;
            }
            cases += 1;
            let t = turan(n, k - 1).unwrap();
            let r = spex_bruteforce(n, k, p, DEFAULT_TOL).unwrap();
            let expect = vec![canonical_graph6(&t).unwrap()];
            let lambda = spectral_radius(&t, DEFAULT_TOL).map_or(0.0, |s| s.lambda);
            if r.witnesses != expect || (r.value.as_f64() - lambda).abs() > 1e-9 {
                bad.push(format!(
                    "spex({n}, K_{k}) witnesses {:?} value {}, expected T_{{{n},{}}}",
                    r.witnesses,
                    r.value,
                    k - 1
                ));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("exhaustive ex/spex for K_k patterns match the Turan graph in {cases} cases"),
        bad,
    )
}

/// `K_{t-1} v T_{n-t+1,p'}` for `t <= 4`, `p' <= 5`, `n <= 60`.
fn construction_family() -> Vec<(usize, usize, usize, Graph, VertexPartition)> {
    let mut out = Vec::new();
    for t in 1..=4 {
        for pp in 2..=5 {
            for n in (t - 1 + pp).max(4)..=60 {
                let parts = cpl_core::graph::turan_part_sizes(n - (t - 1), pp).unwrap();
                let (g, part) = joined_multipartite(t - 1, &parts).unwrap();
                out.push((t, pp, n, g, part));
            }
        }
    }
    out
}

fn quotient_agreement() -> Outcome {
    let family = construction_family();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (t, pp, n, g, _) in &family {
        let part = equitable_refinement(g, &VertexPartition::trivial(*n));
        let lq = matrix_spectral_radius(&quotient_matrix(g, &part).unwrap(), DEFAULT_TOL).unwrap();
        let lp = spectral_radius(g, DEFAULT_TOL).unwrap().lambda;
        let d = (lq - lp).abs();
        worst = worst.max(d);
        if d > 1e-9 {
            bad.push(format!("t={t} p'={pp} n={n}: |{lq} - {lp}| = {d:e}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "quotient and power-iteration radii agree within 1e-9 on {} graphs (max {worst:.1e})",
            family.len()
        ),
        bad,
    )
}

fn closed_form_entries() -> Outcome {
    let family = construction_family();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (t, pp, n, g, part) in &family {
        let blocks = part.blocks();
        let parts: Vec<usize> = blocks[usize::from(*t >= 2)..]
            .iter()
            .map(Vec::len)
            .collect();
        // From the quotient eigenvector.
        let s = joined_multipartite_spectrum(*t, &parts, DEFAULT_TOL).unwrap();
        let mut residual = s.closed_form_residual;
        // From the graph's own Perron vector.
        let r = spectral_radius(g, DEFAULT_TOL).unwrap();
        let l = r.lambda;
        let entries: Vec<f64> = blocks[usize::from(*t >= 2)..]
            .iter()
            .map(|b| r.perron[b[0]])
            .collect();
        let apex = if *t >= 2 {
            r.perron[blocks[0][0]]
        } else {
            parts
                .iter()
                .zip(&entries)
                .map(|(&ni, x)| ni as f64 * x)
                .sum::<f64>()
                / (l + 1.0)
        };
        for (&ni, x) in parts.iter().zip(&entries) {
            residual = residual.max((x * (l + ni as f64) - (l + 1.0) * apex).abs());
        }
        worst = worst.max(residual);
        if residual > 1e-8 {
            bad.push(format!("t={t} p'={pp} n={n}: residual {residual:e}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "x_i(lambda+n_i) = (lambda+1)x_apex within 1e-8 on {} graphs (max {worst:.1e})",
            family.len()
        ),
        bad,
    )
}

fn rayleigh_bound() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for d in grid().iter().filter(|d| d.r != 0) {
        let pp = d.p_prime.unwrap();
        for n in [30, 60] {
            checked += 1;
            let l = spectral_radius(&extremal_construction(n, d.k, d.p).unwrap(), DEFAULT_TOL)
                .unwrap()
                .lambda;
            let bound = (1.0 - 1.0 / pp as f64) * n as f64;
            if l - bound <= 1e-9 {
                bad.push(format!(
                    "n={n} k={} p={} (t={}, p'={pp}): lambda {l} vs bound {bound}, margin {:.3e}",
                    d.k,
                    d.p,
                    d.t.unwrap(),
                    l - bound
                ));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "lambda(construction) > (1-1/p')n + 1e-9, strict, in {} of {checked} cases",
            checked - bad.len()
        ),
        bad,
    )
}

fn balancing() -> Outcome {
    let mut bad = Vec::new();
    let mut compared = 0;
    for t in 1..=3 {
        for pp in 2..=4 {
            for n in t - 1 + pp..=24 {
                let total = n - (t - 1);
                let balanced = balanced_profile(total, pp).unwrap();
                let best = profile_radius(t, &balanced, DEFAULT_TOL).unwrap();
                for prof in part_profiles(total, pp) {
                    if prof == balanced {
                        continue;
                    }
                    compared += 1;
                    let l = profile_radius(t, &prof, DEFAULT_TOL).unwrap();
                    if best - l <= 1e-9 {
                        bad.push(format!(
                            "t={t} n={n}: {prof:?} gives {l}, balanced {balanced:?} gives {best}"
                        ));
                    }
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("balanced profile strictly beats {compared} unbalanced profiles"),
        bad,
    )
}

fn sandwich() -> Outcome {
    let mut bad = Vec::new();
    let mut findings = Vec::new();
    let mut records = 0;
    for p in 1..=3 {
        for k in 2 * p + 1..=9 {
            let d = decompose(k, p).unwrap();
            let Some(min) = d.min_order() else { continue };
            for n in min.max(3)..=8 {
                records += 1;
                let rec = ex_bruteforce(n, k, p).unwrap();
                let floor = extremal_edge_count(n, k, p).unwrap() as u64;
                let Value::Edges(v) = rec.value else {
                    unreachable!()
                };
                if v < floor {
                    bad.push(format!("ex({n}, C_{k}^{p}) = {v} < construction {floor}"));
                } else if v > floor {
                    findings.push(format!(
                        "finding: ex({n}, C_{k}^{p}) = {v} exceeds construction {floor}"
                    ));
                }
                if !is_free(&extremal_construction(n, k, p).unwrap(), k, p) {
                    bad.push(format!("construction for n={n} k={k} p={p} is not free"));
                }
            }
        }
    }
    let summary = format!(
        "{records} exhaustive ex records are at least the construction's edge count ({} strict excesses)",
        findings.len()
    );
    bad.extend(findings);
    Outcome::new(bad.iter().all(|l| l.starts_with("finding")), summary, bad)
}

fn edge_monotonicity() -> Outcome {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    let mut min_gain = f64::INFINITY;
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(3..=20);
        let density = rng.gen_range(0.1..0.8);
        let mut g = Graph::new(n);
        // A random spanning tree keeps it connected.
        for v in 1..n {
            g.add_edge(rng.gen_range(0..v), v);
        }
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.add_edge(u, v);
                }
            }
        }
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        if missing.is_empty() {
            continue;
        }
        done += 1;
        let (u, v) = missing[rng.gen_range(0..missing.len())];
        let before = spectral_radius(&g, DEFAULT_TOL).unwrap().lambda;
        g.add_edge(u, v);
        let after = spectral_radius(&g, DEFAULT_TOL).unwrap().lambda;
        min_gain = min_gain.min(after - before);
        if after - before <= 1e-9 {
            bad.push(format!(
                "{}: adding {u}-{v} moved lambda by {:e}",
                graph6::encode(&g),
                after - before
            ));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "adding an edge raises lambda by > 1e-9 on 200 connected graphs (min {min_gain:.2e})"
        ),
        bad,
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("chromatic-formula", chromatic_formula),
        ("coloring-certificates", coloring_certificates),
        ("criticality", criticality),
        ("construction-freeness", construction_freeness),
        ("turan-exact", turan_exact),
        ("quotient-agreement", quotient_agreement),
        ("closed-form-entries", closed_form_entries),
        ("rayleigh-bound-strict", rayleigh_bound),
        ("balancing-exchange", balancing),
        ("sandwich", sandwich),
        ("edge-monotonicity", edge_monotonicity),
    ];
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        println!(
            "{:>2} {} {name}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.summary,
            start.elapsed().as_secs_f64()
        );
        let shown = match (verbose, o.pass) {
            (true, _) => usize::MAX,
            (false, true) => 3,
            (false, false) => 8,
        };
        for d in o.details.iter().take(shown) {
            println!("      {d}");
        }
        if o.details.len() > shown {
            println!("      ... {} more", o.details.len() - shown);
        }
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
