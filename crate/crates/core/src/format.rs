//! Text formats for graphs: a plain edge list and graph6.
//!
//! Edge list: the first non-comment line is `n m`, followed by `m` lines
//! `u v` with 0-based vertex numbers. Anything after `#` is ignored.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let nums = parse_pair(header, hline)?;
    let (n, m) = (nums.0, nums.1);
    let mut g = Graph::new(n);
    let mut count = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(l, line)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at {u}"),
            });
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        g.add_edge(u, v)?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {m} edges but {count} were given"),
        });
    }
    Ok(g)
}

fn parse_pair(s: &str, line: usize) -> Result<(usize, usize)> {
    let err = |msg: &str| Error::Parse {
        line,
        msg: format!("{msg}: `{s}`"),
    };
    let mut it = s.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("expected exactly two integers"));
    }
    let a = a.parse().map_err(|_| err("not a nonnegative integer"))?;
    let b = b.parse().map_err(|_| err("not a nonnegative integer"))?;
    Ok((a, b))
}

/// Writes the edge-list format. Vertices are numbered by index.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses every non-empty line as one graph6 string.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| {
            decode_graph6(l).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line, msg },
                other => other,
            })
        })
        .collect()
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("graph6 characters must lie in 63..=126"));
    }
    let vals: Vec<u32> = bytes.iter().map(|&b| u32::from(b - 63)).collect();
    let (n, rest) = match vals.first() {
        None => return Err(err("empty graph6 string")),
        Some(&63) => {
            if vals.get(1) == Some(&63) {
                if vals.len() < 8 {
                    return Err(err("truncated graph6 size"));
                }
                let n = vals[2..8].iter().fold(0u64, |acc, &v| (acc << 6) | u64::from(v));
                (n as usize, &vals[8..])
            } else {
                if vals.len() < 4 {
                    return Err(err("truncated graph6 size"));
                }
                let n = vals[1..4].iter().fold(0u64, |acc, &v| (acc << 6) | u64::from(v));
                (n as usize, &vals[4..])
            }
        }
        Some(&v) => (v as usize, &vals[1..]),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let groups = bits_needed.div_ceil(6);
    if rest.len() != groups {
        return Err(err("graph6 length does not match vertex count"));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let bit = (rest[k / 6] >> (5 - k % 6)) & 1;
            if bit == 1 {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
