//! The graph6 text format: a size header followed by the upper triangle of
//! the adjacency matrix, column by column, packed into 6-bit groups offset
//! by 63.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn push_groups(out: &mut String, value: u64, groups: u32) {
    for i in (0..groups).rev() {
        out.push(char::from(63 + ((value >> (6 * i)) & 0x3f) as u8));
    }
}

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        push_groups(out, n as u64, 1);
    } else if n <= 258_047 {
        out.push('~');
        push_groups(out, n as u64, 3);
    } else {
        out.push_str("~~");
        push_groups(out, n as u64, 6);
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(char::from(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(char::from(63 + (acc << (6 - filled))));
    }
    out
}

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn decode(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let sextet = |i: usize| -> Result<u64> {
        match body.get(i) {
            None => Err(err(base + i, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
            Some(&b) => Err(err(base + i, format!("byte {b:#04x} outside 63..=126"))),
        }
    };
    let read_groups = |start: usize, groups: usize| -> Result<u64> {
        (start..start + groups).try_fold(0u64, |acc, i| Ok((acc << 6) | sextet(i)?))
    };

    let first = sextet(0)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else if body.get(1) == Some(&b'~') {
        (read_groups(2, 6)? as usize, 8)
    } else {
        (read_groups(1, 3)? as usize, 4)
    };

    let slots = n * n.saturating_sub(1) / 2;
    let expected = pos + slots.div_ceil(6);
    if body.len() != expected {
        let offset = base + body.len().min(expected);
        return Err(err(
            offset,
            format!("expected {expected} bytes for n={n}, found {}", body.len()),
        ));
    }

    let mut g = Graph::new(n);
    let (mut i, mut j) = (0usize, 1usize);
    let mut consumed = 0;
    while consumed < slots {
        let group = sextet(pos)?;
        for b in (0..6).rev() {
            if consumed == slots {
                if group & ((1 << (b + 1)) - 1) != 0 {
                    return Err(err(base + pos, "nonzero padding bits"));
                }
                break;
            }
            if group >> b & 1 == 1 {
                g.add_edge(i, j);
            }
            consumed += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    Ok(g)
}
