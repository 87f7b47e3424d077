//! PACE-style text formats: `.gr` for static graphs and `.td` for tree
//! decompositions.
//!
//! ```text
//! c comment                      c comment
//! p tw <n> <m>                   s td <#bags> <max-bag-size> <n>
//! <u> <v>                        b <bag-id> <v...>
//! ...                            <i> <j>        (tree edge between bags)
//! ```
//!
//! Ids are 1-based in both formats; bag indices are converted to the
//! in-memory 0-based form on load.

use crate::decomposition::TreeDecomposition;
use crate::temporal::StaticGraph;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaceError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for PaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for PaceError {}

fn err(line: usize, msg: impl Into<String>) -> PaceError {
    PaceError { line, msg: msg.into() }
}

/// Parse a `.gr` document into an undirected [`StaticGraph`].
pub fn load_gr(text: &str) -> Result<StaticGraph, PaceError> {
    let mut g: Option<StaticGraph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "p" {
            if g.is_some() {
                return Err(err(lineno, "duplicate header"));
            }
            if fields.len() != 4 || fields[1] != "tw" {
                return Err(err(lineno, "expected `p tw <n> <m>`"));
            }
            let n = fields[2].parse().map_err(|_| err(lineno, "bad vertex count"))?;
            declared_m = fields[3].parse().map_err(|_| err(lineno, "bad edge count"))?;
            g = Some(StaticGraph::new(n, false));
            continue;
        }
        let graph = g.as_mut().ok_or_else(|| err(lineno, "edge before header"))?;
        if fields.len() != 2 {
            return Err(err(lineno, "expected `<u> <v>`"));
        }
        let u: usize = fields[0].parse().map_err(|_| err(lineno, "bad vertex id"))?;
        let v: usize = fields[1].parse().map_err(|_| err(lineno, "bad vertex id"))?;
        if u < 1 || u > graph.n || v < 1 || v > graph.n {
            return Err(err(lineno, format!("vertex out of range 1..={}", graph.n)));
        }
        if u == v {
            return Err(err(lineno, format!("self-loop at vertex {u}")));
        }
        graph.add_edge(u, v);
        seen_m += 1;
    }
    let g = g.ok_or_else(|| err(0, "missing `p tw` header"))?;
    if seen_m != declared_m {
        return Err(err(0, format!("header declares {declared_m} edges, found {seen_m}")));
    }
    Ok(g)
}

/// Render a graph as `.gr` (arcs are flattened to undirected edges).
pub fn write_gr(g: &StaticGraph) -> String {
    let und = if g.directed { g.underlying_undirected() } else { g.clone() };
    let mut out = format!("p tw {} {}\n", und.n, und.edges.len());
    for &(u, v) in &und.edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse a `.td` document. `n` in the header is the vertex count of the
/// decomposed graph; it is returned alongside the decomposition.
pub fn load_td(text: &str) -> Result<(TreeDecomposition, usize), PaceError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<BTreeSet<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "s" => {
                if header.is_some() {
                    return Err(err(lineno, "duplicate header"));
                }
                if fields.len() != 5 || fields[1] != "td" {
                    return Err(err(lineno, "expected `s td <#bags> <max-bag-size> <n>`"));
                }
                let nb: usize = fields[2].parse().map_err(|_| err(lineno, "bad bag count"))?;
                let mb = fields[3].parse().map_err(|_| err(lineno, "bad bag size"))?;
                let n = fields[4].parse().map_err(|_| err(lineno, "bad vertex count"))?;
                header = Some((nb, mb, n));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, _, _) =
                    header.ok_or_else(|| err(lineno, "bag before header"))?;
                if fields.len() < 2 {
                    return Err(err(lineno, "expected `b <bag-id> <v...>`"));
                }
                let id: usize = fields[1].parse().map_err(|_| err(lineno, "bad bag id"))?;
                if id < 1 || id > nb {
                    return Err(err(lineno, format!("bag id {id} out of range 1..={nb}")));
                }
                if bags[id - 1].is_some() {
                    return Err(err(lineno, format!("duplicate bag {id}")));
                }
                let mut bag = BTreeSet::new();
                for f in &fields[2..] {
                    bag.insert(f.parse().map_err(|_| err(lineno, "bad vertex id"))?);
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (nb, _, _) =
                    header.ok_or_else(|| err(lineno, "edge before header"))?;
                if fields.len() != 2 {
                    return Err(err(lineno, "expected `<i> <j>`"));
                }
                let a: usize = fields[0].parse().map_err(|_| err(lineno, "bad bag id"))?;
                let b: usize = fields[1].parse().map_err(|_| err(lineno, "bad bag id"))?;
                for x in [a, b] {
                    if x < 1 || x > nb {
                        return Err(err(lineno, format!("bag id {x} out of range 1..={nb}")));
                    }
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (nb, _, n) = header.ok_or_else(|| err(0, "missing `s td` header"))?;
    let mut final_bags = Vec::with_capacity(nb);
    for (i, bag) in bags.into_iter().enumerate() {
        final_bags.push(bag.ok_or_else(|| err(0, format!("bag {} never declared", i + 1)))?);
    }
    Ok((TreeDecomposition::new(final_bags, edges), n))
}

/// Render a decomposition as `.td` for a graph with `n` vertices.
pub fn write_td(d: &TreeDecomposition, n: usize) -> String {
    let max_bag = d.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", d.bags.len(), max_bag, n);
    for (i, bag) in d.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for &(a, b) in &d.edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::check_decomposition;
    use crate::exact::exact_treewidth;

    #[test]
    fn gr_round_trip() {
        let text = "c a triangle plus pendant\np tw 4 4\n1 2\n2 3\n1 3\n3 4\n";
        let g = load_gr(text).unwrap();
        assert_eq!(g.n, 4);
        assert_eq!(g.edges.len(), 4);
        let written = write_gr(&g);
        let g2 = load_gr(&written).unwrap();
        assert_eq!(g, g2);
        assert_eq!(written, write_gr(&g2));
    }

    #[test]
    fn gr_errors() {
        assert!(load_gr("p tw 2 1\n1 3\n").is_err());
        assert!(load_gr("p tw 2 2\n1 2\n").is_err());
        assert!(load_gr("1 2\n").is_err());
        assert!(load_gr("p tw 2 1\n1 1\n").is_err());
    }

    #[test]
    fn td_round_trip_with_exact_witness() {
        let g = load_gr("p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
        let (w, d) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 2);
        let text = write_td(&d, g.n);
        let (d2, n) = load_td(&text).unwrap();
        assert_eq!(n, 5);
        assert_eq!(d, d2);
        assert!(check_decomposition(&g, &d2).is_empty());
        assert_eq!(text, write_td(&d2, n));
    }

    #[test]
    fn td_errors() {
        assert!(load_td("s td 2 2 3\nb 1 1 2\n1 2\n").is_err()); // bag 2 missing
        assert!(load_td("s td 1 2 3\nb 1 1 2\nb 1 2 3\n").is_err()); // duplicate
        assert!(load_td("s td 1 2 3\nb 2 1\n").is_err()); // id out of range
        assert!(load_td("b 1 1\n").is_err()); // no header
        assert!(load_td("s td 2 1 2\nb 1 1\nb 2 2\n1 3\n").is_err()); // bad edge
    }

    #[test]
    fn empty_bags_representable() {
        let (d, n) = load_td("s td 1 0 0\nb 1\n").unwrap();
        assert_eq!(n, 0);
        assert_eq!(d.width(), -1);
    }
}
