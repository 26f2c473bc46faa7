//! `cpl`: construct, verify and search cycle-power extremal problems.

mod config;
mod lemma2;
mod report;
mod search;
mod spectral;
mod target;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use cpl_core::graph::{dot, graph6};
use cpl_core::params::decompose;
use cpl_core::search::Mode;
use cpl_core::spectral::DEFAULT_TOL;
use cpl_core::Error;
use serde_json::json;

use config::Config;
use report::VerificationReport;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cpl",
    version,
    about = "Cycle powers: colourings, extremal constructions, spectral checks and searches"
)]
struct Cli {
    /// Print machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Numerical tolerance for eigenvalue computations.
    #[arg(long, global = true, env = "CPL_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Directory of the search result cache [default: ./cpl-cache].
    #[arg(long, global = true, env = "CPL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose k = s(p+1) + r and report the predicted chromatic number.
    Params { k: usize, p: usize },

    /// Check chromatic numbers, explicit colourings and colour-criticality of C_k^p over a grid.
    #[command(name = "verify-lemma2")]
    VerifyLemma2 {
        /// Smallest k (rows below 2p+1 are skipped anyway).
        #[arg(long, default_value_t = 3)]
        kmin: usize,
        #[arg(long, default_value_t = 14)]
        kmax: usize,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        /// Negative control: perturb the critical matching before checking it.
        #[arg(long, hide = true)]
        corrupt_b: bool,
    },

    /// Check freeness, Rayleigh bound, quotient agreement, closed-form entries and balancing
    /// for the extremal construction on n vertices.
    #[command(name = "verify-spectral")]
    VerifySpectral { n: usize, k: usize, p: usize },

    /// Compute ex or spex for C_k^p on n vertices.
    Search {
        mode: Mode,
        n: usize,
        k: usize,
        p: usize,
        /// Hill-climb instead of the exhaustive sweep (spex only).
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random starting graphs in addition to the extremal construction.
        #[arg(long, default_value_t = 4)]
        starts: usize,
        /// Toggle moves per start.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Neither read nor write the cache.
        #[arg(long)]
        no_cache: bool,
    },

    /// Write a graph or a report.
    ///
    /// Graphs: cycle:N, power:K:P, complete:N, empty:N, turan:N:R, multipartite:A,B,...,
    /// extremal:N:K:P, graph6:STRING. Reports (JSON only): params:K:P, lemma2:KMAX:PMAX,
    /// spectral:N:K:P.
    Export {
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Dot,
    Json,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ExhaustiveCap { .. }
        | Error::SolverOutOfRange { .. }
        | Error::BudgetExceeded { .. }
        | Error::NoConvergence { .. } => EXIT_RESOURCE,
        Error::CorruptRecord(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn report(&self, r: &VerificationReport) -> u8 {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(r).expect("report serialises")
            );
        } else {
            print!("{}", r.render_table());
        }
        if r.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn params_json(k: usize, p: usize) -> Result<serde_json::Value, Error> {
    Ok(serde_json::to_value(decompose(k, p)?)?)
}

fn nums(spec: &str, want: usize) -> Result<Vec<usize>, Error> {
    let v: Vec<usize> = spec
        .split(':')
        .map(|a| {
            a.parse()
                .map_err(|_| Error::MalformedFamily(format!("{a:?} is not a count")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != want {
        return Err(Error::MalformedFamily(format!(
            "{spec:?}: expected {want} numbers"
        )));
    }
    Ok(v)
}

fn export(
    target: &str,
    format: Format,
    output: Option<&PathBuf>,
    config: &Config,
) -> Result<u8, Error> {
    let (kind, rest) = target.split_once(':').unwrap_or((target, ""));
    let report = match kind {
        "params" => {
            let a = nums(rest, 2)?;
            Some(params_json(a[0], a[1])?)
        }
        "lemma2" => {
            let a = nums(rest, 2)?;
            let args = lemma2::Lemma2Args {
                kmin: 3,
                kmax: a[0],
                pmax: a[1],
                corrupt_matching: false,
            };
            Some(serde_json::to_value(lemma2::run(&args, config)?)?)
        }
        "spectral" => {
            let a = nums(rest, 3)?;
            Some(serde_json::to_value(spectral::run(
                a[0], a[1], a[2], config,
            )?)?)
        }
        _ => None,
    };
    if let Some(value) = report {
        if format != Format::Json {
            return Err(Error::NotApplicable(format!("{kind} exports only as json")));
        }
        write_out(
            output,
            &format!("{}\n", serde_json::to_string_pretty(&value)?),
        )?;
        return Ok(EXIT_PASS);
    }
    let g = target::parse_graph(target)?;
    let text = match format {
        Format::Graph6 => format!("{}\n", graph6::encode(&g)),
        Format::Dot => dot::to_dot(&g, target),
        Format::Json => {
            let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({
                    "name": target,
                    "order": g.order(),
                    "size": g.edge_count(),
                    "edges": edges,
                    "graph6": graph6::encode(&g),
                }))?
            )
        }
    };
    write_out(output, &text)?;
    Ok(EXIT_PASS)
}

fn run(cli: Cli, config: Config) -> Result<u8, Error> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Params { k, p } => match decompose(k, p) {
            Ok(d) => {
                if cli.json {
                    println!("{}", serde_json::to_string_pretty(&d)?);
                } else {
                    println!("{}", serde_json::to_string(&d)?);
                }
                Ok(EXIT_PASS)
            }
            Err(Error::CompleteGraphRegime { k, p }) => {
                // Still report what is known: C_k^p is K_k.
                let v = json!({ "k": k, "p": p, "regime": "complete", "chi": k });
                println!("{v}");
                eprintln!(
                    "error: complete-graph regime: k={k} < 2p+1={}, C_k^p is K_{k}",
                    2 * p + 1
                );
                Ok(EXIT_USAGE)
            }
            Err(e) => Err(e),
        },
        Command::VerifyLemma2 {
            kmin,
            kmax,
            pmax,
            corrupt_b,
        } => {
            let args = lemma2::Lemma2Args {
                kmin,
                kmax,
                pmax,
                corrupt_matching: corrupt_b,
            };
            Ok(out.report(&lemma2::run(&args, &config)?))
        }
        Command::VerifySpectral { n, k, p } => Ok(out.report(&spectral::run(n, k, p, &config)?)),
        Command::Search {
            mode,
            n,
            k,
            p,
            heuristic,
            seed,
            starts,
            steps,
            no_cache,
        } => {
            let args = search::SearchArgs {
                mode,
                n,
                k,
                p,
                heuristic,
                seed,
                starts,
                steps,
                use_cache: !no_cache,
            };
            let res = search::run(&args, &config)?;
            for w in &res.warnings {
                eprintln!("warning: {w}");
            }
            let r = &res.record;
            if cli.json {
                let mut v = serde_json::to_value(r)?;
                v["cached"] = json!(res.cached);
                v["config"] = config.to_json();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!(
                    "{}(n={}, C_{}^{}) = {}  [{}{}]",
                    r.mode,
                    r.n,
                    r.k,
                    r.p,
                    r.value,
                    if r.exhaustive {
                        "exhaustive"
                    } else {
                        "best found"
                    },
                    if res.cached { ", cached" } else { "" }
                );
                for w in &r.witnesses {
                    println!("  {w}");
                }
                println!("  method: {}, {:.3}s", r.method, r.wall_time);
            }
            Ok(EXIT_PASS)
        }
        Command::Export {
            target,
            format,
            output,
        } => export(&target, format, output.as_ref(), &config),
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error: {}", Error::InvalidTolerance(cli.tol));
        return ExitCode::from(EXIT_USAGE);
    }
    let config = Config::resolve(&matches, cli.tol, cli.cache_dir.clone());
    match run(cli, config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
