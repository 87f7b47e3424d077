//! The `.tgr` text format for dynamic graphs.
//!
//! ```text
//! c free-form comment
//! p tgr <n> <m> <tmax>
//! v <id> <timeset>        vertex liveness
//! e <u> <v> <timeset>     undirected edge liveness
//! a <u> <v> <timeset>     directed arc liveness
//! o <t1> <t2>             explicit precedence pair t1 <_T t2
//! ```
//!
//! Times run `1..=tmax`. A timeset is a comma-separated list of single
//! times and inclusive ranges, e.g. `1-3,5`. A file uses either `e` lines
//! or `a` lines, never both; the presence of any `o` line replaces the
//! default natural total order with exactly the listed pairs. Vertices
//! without a `v` line are never alive.

use crate::temporal::{DynamicGraph, TimeDomain};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TgrError {
    Syntax { line: usize, msg: String },
    MissingHeader,
    Invalid { msgs: Vec<String> },
}

impl fmt::Display for TgrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TgrError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            TgrError::MissingHeader => write!(f, "missing `p tgr` header"),
            TgrError::Invalid { msgs } => {
                write!(f, "invalid dynamic graph: {}", msgs.join("; "))
            }
        }
    }
}

impl std::error::Error for TgrError {}

fn syntax(line: usize, msg: impl Into<String>) -> TgrError {
    TgrError::Syntax { line, msg: msg.into() }
}

/// Parse a timeset such as `1-3,5` into its set of times.
pub fn parse_timeset(s: &str) -> Result<BTreeSet<u32>, String> {
    let mut out = BTreeSet::new();
    for item in s.split(',') {
        if let Some((a, b)) = item.split_once('-') {
            let a: u32 = a.trim().parse().map_err(|_| format!("bad time `{a}`"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("bad time `{b}`"))?;
            if a > b {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(a..=b);
        } else {
            let t: u32 = item
                .trim()
                .parse()
                .map_err(|_| format!("bad time `{item}`"))?;
            out.insert(t);
        }
    }
    Ok(out)
}

/// Render a timeset in canonical run form, e.g. `1-3,5`.
pub fn format_timeset(ts: &BTreeSet<u32>) -> String {
    let mut parts = Vec::new();
    let mut iter = ts.iter().copied();
    if let Some(first) = iter.next() {
        let (mut lo, mut hi) = (first, first);
        for t in iter {
            if t == hi + 1 {
                hi = t;
            } else {
                parts.push(run(lo, hi));
                lo = t;
                hi = t;
            }
        }
        parts.push(run(lo, hi));
    }
    parts.join(",")
}

fn run(lo: u32, hi: u32) -> String {
    if lo == hi {
        format!("{lo}")
    } else {
        format!("{lo}-{hi}")
    }
}

/// Parse a `.tgr` document into a validated [`DynamicGraph`].
pub fn load_tgr(text: &str) -> Result<DynamicGraph, TgrError> {
    let mut header: Option<(usize, usize, u32)> = None;
    let mut vertex_lines: Vec<(usize, usize, BTreeSet<u32>)> = Vec::new();
    let mut edge_lines: Vec<(usize, usize, usize, BTreeSet<u32>, bool)> = Vec::new();
    let mut order_lines: Vec<(usize, u32, u32)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate header"));
                }
                if fields.len() != 5 || fields[1] != "tgr" {
                    return Err(syntax(lineno, "expected `p tgr <n> <m> <tmax>`"));
                }
                let n = fields[2]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad vertex count"))?;
                let m = fields[3]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad edge count"))?;
                let tmax = fields[4]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad tmax"))?;
                header = Some((n, m, tmax));
            }
            "v" => {
                if fields.len() != 3 {
                    return Err(syntax(lineno, "expected `v <id> <timeset>`"));
                }
                let v = fields[1]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad vertex id"))?;
                let ts = parse_timeset(fields[2]).map_err(|e| syntax(lineno, e))?;
                vertex_lines.push((lineno, v, ts));
            }
            "e" | "a" => {
                if fields.len() != 4 {
                    return Err(syntax(lineno, format!("expected `{} <u> <v> <timeset>`", fields[0])));
                }
                let u = fields[1]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad vertex id"))?;
                let v = fields[2]
                    .parse()
                    .map_err(|_| syntax(lineno, "bad vertex id"))?;
                let ts = parse_timeset(fields[3]).map_err(|e| syntax(lineno, e))?;
                edge_lines.push((lineno, u, v, ts, fields[0] == "a"));
            }
            "o" => {
                if fields.len() != 3 {
                    return Err(syntax(lineno, "expected `o <t1> <t2>`"));
                }
                let a = fields[1].parse().map_err(|_| syntax(lineno, "bad time"))?;
                let b = fields[2].parse().map_err(|_| syntax(lineno, "bad time"))?;
                order_lines.push((lineno, a, b));
            }
            other => {
                return Err(syntax(lineno, format!("unknown line type `{other}`")));
            }
        }
    }

    let (n, m, tmax) = header.ok_or(TgrError::MissingHeader)?;
    if edge_lines.len() != m {
        return Err(TgrError::Invalid {
            msgs: vec![format!(
                "header declares {m} edge lines but {} found",
                edge_lines.len()
            )],
        });
    }
    let directed = match (
        edge_lines.iter().any(|e| e.4),
        edge_lines.iter().any(|e| !e.4),
    ) {
        (true, true) => {
            return Err(TgrError::Invalid {
                msgs: vec!["file mixes `e` and `a` lines".into()],
            })
        }
        (true, false) => true,
        _ => false,
    };

    let time = if order_lines.is_empty() {
        TimeDomain::natural(1..=tmax)
    } else {
        TimeDomain::with_order(1..=tmax, order_lines.iter().map(|&(_, a, b)| (a, b)))
    };

    let mut g = DynamicGraph::new(n, directed, time);
    for (lineno, v, ts) in vertex_lines {
        if v < 1 || v > n {
            return Err(syntax(lineno, format!("vertex {v} out of range 1..={n}")));
        }
        g.set_alive(v, ts);
    }
    for (lineno, u, v, ts, _) in edge_lines {
        for w in [u, v] {
            if w < 1 || w > n {
                return Err(syntax(lineno, format!("vertex {w} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(syntax(lineno, format!("self-loop at vertex {u}")));
        }
        g.add_edge(u, v, ts);
    }

    let violations = g.validate();
    if !violations.is_empty() {
        return Err(TgrError::Invalid {
            msgs: violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(g)
}

/// Render a dynamic graph in canonical `.tgr` form (header, sorted `v`
/// lines for ever-alive vertices, sorted edge lines, `o` lines only for
/// non-natural orders).
pub fn write_tgr(g: &DynamicGraph) -> String {
    let mut out = String::new();
    let tmax = g.time.times.iter().copied().max().unwrap_or(0);
    out.push_str(&format!("p tgr {} {} {}\n", g.n, g.edges.len(), tmax));
    for (&v, ts) in &g.vertex_life {
        if !ts.is_empty() {
            out.push_str(&format!("v {} {}\n", v, format_timeset(ts)));
        }
    }
    let kind = if g.directed { "a" } else { "e" };
    for &(u, v) in &g.edges {
        let ts = g.live_times(u, v);
        out.push_str(&format!("{kind} {u} {v} {}\n", format_timeset(ts)));
    }
    if !g.time.is_natural() {
        for &(a, b) in &g.time.order {
            out.push_str(&format!("o {a} {b}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const D1: &str = "p tgr 3 2 2\nv 1 1-2\nv 2 1-2\nv 3 1-2\ne 1 2 1\ne 2 3 2\n";

    #[test]
    fn timeset_round_trip() {
        for (text, canon) in [
            ("1-3,5", "1-3,5"),
            ("5,1,2,3", "1-3,5"),
            ("2", "2"),
            ("1,2,3,4", "1-4"),
            ("7,5-6", "5-7"),
        ] {
            let ts = parse_timeset(text).unwrap();
            assert_eq!(format_timeset(&ts), canon);
        }
        assert!(parse_timeset("3-1").is_err());
        assert!(parse_timeset("x").is_err());
        assert!(parse_timeset("").is_err());
    }

    #[test]
    fn loads_d1() {
        let g = load_tgr(D1).unwrap();
        assert_eq!(g.n, 3);
        assert!(!g.directed);
        assert_eq!(g.time.times, vec![1, 2]);
        assert_eq!(g.alive_times(1).iter().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(g.live_times(1, 2).iter().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(g.live_times(2, 3).iter().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = format!("c a comment\n\n{D1}c trailing\n");
        assert!(load_tgr(&text).is_ok());
    }

    #[test]
    fn directed_arcs() {
        let g = load_tgr("p tgr 2 2 1\nv 1 1\nv 2 1\na 1 2 1\na 2 1 1\n").unwrap();
        assert!(g.directed);
        assert!(g.edges.contains(&(1, 2)));
        assert!(g.edges.contains(&(2, 1)));
    }

    #[test]
    fn rejects_dead_endpoint() {
        let err = load_tgr("p tgr 2 1 2\nv 1 1\nv 2 1-2\ne 1 2 2\n").unwrap_err();
        assert!(
            err.to_string()
                .contains("edge 1 2 live at t=2 but vertex 1 dead"),
            "{err}"
        );
    }

    #[test]
    fn rejects_time_out_of_range() {
        let err = load_tgr("p tgr 1 0 2\nv 1 1-3\n").unwrap_err();
        assert!(err.to_string().contains("t=3"), "{err}");
    }

    #[test]
    fn rejects_self_loop_and_mixed_kinds() {
        let err = load_tgr("p tgr 2 1 1\nv 1 1\ne 1 1 1\n").unwrap_err();
        assert!(err.to_string().contains("self-loop"), "{err}");
        let err =
            load_tgr("p tgr 3 2 1\nv 1 1\nv 2 1\nv 3 1\ne 1 2 1\na 2 3 1\n").unwrap_err();
        assert!(err.to_string().contains("mixes"), "{err}");
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        let err = load_tgr("p tgr 2 2 1\nv 1 1\nv 2 1\ne 1 2 1\n").unwrap_err();
        assert!(err.to_string().contains("declares 2 edge lines"), "{err}");
    }

    #[test]
    fn rejects_unknown_line_and_missing_header() {
        assert!(matches!(
            load_tgr("p tgr 1 0 1\nq nonsense\n"),
            Err(TgrError::Syntax { line: 2, .. })
        ));
        assert!(matches!(load_tgr("v 1 1\n"), Err(TgrError::MissingHeader)));
    }

    #[test]
    fn order_lines_replace_default() {
        let g = load_tgr("p tgr 1 0 3\nv 1 1-3\no 1 2\no 2 3\n").unwrap();
        assert_eq!(g.time.order.len(), 2);
        assert!(!g.time.total); // (1,3) missing: not total
        let err = load_tgr("p tgr 1 0 2\nv 1 1-2\no 1 1\n").unwrap_err();
        assert!(err.to_string().contains("reflexive"), "{err}");
    }

    #[test]
    fn round_trip_semantic_identity() {
        for text in [
            D1,
            "p tgr 2 2 1\nv 1 1\nv 2 1\na 1 2 1\na 2 1 1\n",
            "p tgr 4 1 3\nv 2 1,3\nv 3 1-3\ne 2 3 1,3\no 3 1\n",
        ] {
            let g = load_tgr(text).unwrap();
            let written = write_tgr(&g);
            let g2 = load_tgr(&written).unwrap();
            assert_eq!(g, g2, "round trip failed for:\n{text}\ngot:\n{written}");
            // A second write is bit-identical: canonical form.
            assert_eq!(written, write_tgr(&g2));
        }
    }
}
