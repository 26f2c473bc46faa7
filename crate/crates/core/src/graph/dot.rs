use std::fmt::Write;

use super::Graph;

/// Graphviz DOT text for an undirected graph.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", sanitize(name)).unwrap();
    for v in 0..g.order() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
        format!("g_{s}")
    } else {
        s
    }
}
