//! Edge-list and graph6 text formats.

use super::Graph;
use crate::error::{Error, Result};

/// Parses `"n m"` followed by `m` lines of `"u v"`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::MalformedHeader(format!("expected \"n m\", got {header:?}")));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::MalformedHeader(format!("bad integer {s:?} in header")))
    };
    let n = parse(fields[0])?;
    let m = parse(fields[1])?;
    if n == 0 {
        return Err(Error::MalformedHeader("n must be at least 1".into()));
    }
    if m > n * (n - 1) / 2 {
        return Err(Error::MalformedHeader(format!("m = {m} exceeds n(n-1)/2 for n = {n}")));
    }

    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines.enumerate() {
        let ends: Vec<&str> = line.split_whitespace().collect();
        if ends.len() != 2 {
            return Err(Error::Malformed(format!("edge line {}: expected \"u v\", got {line:?}", lineno + 1)));
        }
        let mut pair = [0usize; 2];
        for (slot, s) in pair.iter_mut().zip(&ends) {
            *slot = s
                .parse()
                .map_err(|_| Error::Malformed(format!("edge line {}: bad vertex {s:?}", lineno + 1)))?;
        }
        edges.push((pair[0], pair[1]));
    }
    if edges.len() != m {
        return Err(Error::MalformedHeader(format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn graph6_byte(byte: u8, offset: usize) -> Result<u8> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Error::BadGraph6Byte { byte, offset })
    }
}

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedHeader("empty graph6 string".into()));
    }

    let (n, mut pos) = if bytes[0] != 126 {
        (graph6_byte(bytes[0], 0)? as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::MalformedHeader("truncated 8-byte graph6 order".into()));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[2..8].iter().enumerate() {
            n = (n << 6) | graph6_byte(b, 2 + i)? as usize;
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Error::MalformedHeader("truncated 4-byte graph6 order".into()));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | graph6_byte(b, 1 + i)? as usize;
        }
        (n, 4)
    };
    if n == 0 {
        return Err(Error::MalformedHeader("graph6 order 0".into()));
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(Error::Malformed(format!(
            "graph6 body has {} bytes, expected {nbytes} for n = {n}",
            bytes.len() - pos
        )));
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let (mut i, mut j) = (0usize, 1usize);
    for _ in 0..nbytes {
        let chunk = graph6_byte(bytes[pos], pos)?;
        pos += 1;
        for shift in (0..6).rev() {
            let set = (chunk >> shift) & 1 == 1;
            if bit < nbits {
                if set {
                    g.insert(i, j);
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if set {
                return Err(Error::Malformed("nonzero graph6 padding bits".into()));
            }
            bit += 1;
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
