//! Graph expressions accepted by `export`, e.g. `power:7:2` or `graph6:Bw`.

use cpl_core::graph::{
    complete, complete_multipartite, cycle, empty, extremal_construction, graph6, power, turan,
};
use cpl_core::{Error, Graph, Result};

pub const GRAPH_FORMS: &str = "cycle:N, power:K:P, complete:N, empty:N, turan:N:R, \
multipartite:A,B,..., extremal:N:K:P, graph6:STRING";

fn nums(args: &[&str], want: usize, expr: &str) -> Result<Vec<usize>> {
    if args.len() != want {
        return Err(Error::MalformedFamily(format!(
            "{expr:?}: expected {want} numeric arguments"
        )));
    }
    args.iter()
        .map(|a| {
            a.parse()
                .map_err(|_| Error::MalformedFamily(format!("{expr:?}: {a:?} is not a count")))
        })
        .collect()
}

pub fn parse_graph(expr: &str) -> Result<Graph> {
    if let Some(code) = expr.strip_prefix("graph6:") {
        return graph6::decode(code);
    }
    let mut it = expr.split(':');
    let kind = it.next().unwrap_or_default();
    let args: Vec<&str> = it.collect();
    match kind {
        "cycle" => cycle(nums(&args, 1, expr)?[0]),
        "power" => {
            let a = nums(&args, 2, expr)?;
            power(&cycle(a[0])?, a[1])
        }
        "complete" => Ok(complete(nums(&args, 1, expr)?[0])),
        "empty" => Ok(empty(nums(&args, 1, expr)?[0])),
        "turan" => {
            let a = nums(&args, 2, expr)?;
            turan(a[0], a[1])
        }
        "multipartite" => {
            let parts: Vec<&str> = args
                .first()
                .map(|s| s.split(',').collect())
                .unwrap_or_default();
            let sizes = nums(&parts, parts.len().max(1), expr)?;
            complete_multipartite(&sizes)
        }
        "extremal" => {
            let a = nums(&args, 3, expr)?;
            extremal_construction(a[0], a[1], a[2])
        }
        _ => Err(Error::MalformedFamily(format!(
            "unknown graph {expr:?}; expected one of {GRAPH_FORMS}"
        ))),
    }
}
