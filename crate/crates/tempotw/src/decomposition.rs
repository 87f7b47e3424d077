//! Tree decompositions: the data type, validity checking, and width.

use crate::temporal::StaticGraph;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// A tree decomposition: bags of vertices plus tree edges between bag
/// indices (0-based, normalized `(min, max)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<BTreeSet<usize>>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// A single empty bag: the canonical decomposition of the empty graph.
    pub fn empty() -> Self {
        TreeDecomposition { bags: vec![BTreeSet::new()], edges: BTreeSet::new() }
    }

    /// Largest bag size minus one; `-1` for all-empty decompositions.
    pub fn width(&self) -> i32 {
        self.bags
            .iter()
            .map(|b| b.len() as i32 - 1)
            .max()
            .unwrap_or(-1)
    }
}

/// A violated tree-decomposition condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    /// The bag graph is not a tree (wrong edge count, a cycle, or
    /// disconnected), or an edge references a missing bag.
    NotATree { reason: String },
    /// A bag mentions a vertex outside `1..=n`.
    BagVertexOutOfRange { bag: usize, v: usize },
    /// Graph vertex `v` appears in no bag.
    VertexUncovered { v: usize },
    /// No bag contains both endpoints of the edge.
    EdgeUncovered { u: usize, v: usize },
    /// The bags containing `v` do not induce a connected subtree.
    TraceDisconnected { v: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree { reason } => write!(f, "bag graph is not a tree: {reason}"),
            TdViolation::BagVertexOutOfRange { bag, v } => {
                write!(f, "bag {bag} contains out-of-range vertex {v}")
            }
            TdViolation::VertexUncovered { v } => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeUncovered { u, v } => {
                write!(f, "edge {u} {v} is contained in no bag")
            }
            TdViolation::TraceDisconnected { v } => {
                write!(f, "bags containing vertex {v} are not connected in the tree")
            }
        }
    }
}

/// Check the three decomposition conditions (vertex coverage, edge
/// coverage, connected traces) plus treeness of the bag graph. An empty
/// result means the decomposition is valid for `g`.
pub fn check_decomposition(g: &StaticGraph, d: &TreeDecomposition) -> Vec<TdViolation> {
    let mut out = Vec::new();
    let k = d.bags.len();

    if k == 0 {
        out.push(TdViolation::NotATree { reason: "no bags".into() });
        return out;
    }
    let mut tree_ok = true;
    for &(a, b) in &d.edges {
        if a >= k || b >= k {
            out.push(TdViolation::NotATree {
                reason: format!("edge ({a},{b}) references a missing bag"),
            });
            tree_ok = false;
        } else if a == b {
            out.push(TdViolation::NotATree { reason: format!("self-loop at bag {a}") });
            tree_ok = false;
        }
    }
    if tree_ok {
        if d.edges.len() != k - 1 {
            out.push(TdViolation::NotATree {
                reason: format!("{} bags need {} edges, found {}", k, k - 1, d.edges.len()),
            });
            tree_ok = false;
        } else {
            // k-1 edges: connected iff acyclic iff a tree.
            let mut adj = vec![Vec::new(); k];
            for &(a, b) in &d.edges {
                adj[a].push(b);
                adj[b].push(a);
            }
            let mut seen = vec![false; k];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
            if count != k {
                out.push(TdViolation::NotATree {
                    reason: format!("only {count} of {k} bags reachable from bag 0"),
                });
                tree_ok = false;
            }
        }
    }

    let mut containing: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v < 1 || v > g.n {
                out.push(TdViolation::BagVertexOutOfRange { bag: i, v });
            } else {
                containing.entry(v).or_default().push(i);
            }
        }
    }

    for v in 1..=g.n {
        if !containing.contains_key(&v) {
            out.push(TdViolation::VertexUncovered { v });
        }
    }

    for &(u, v) in &g.edges {
        let covered = d.bags.iter().any(|b| b.contains(&u) && b.contains(&v));
        if !covered {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if !out.contains(&TdViolation::EdgeUncovered { u: a, v: b }) {
                out.push(TdViolation::EdgeUncovered { u: a, v: b });
            }
        }
    }

    if tree_ok {
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &d.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (&v, bags) in &containing {
            let inside: BTreeSet<usize> = bags.iter().copied().collect();
            let mut seen = BTreeSet::from([bags[0]]);
            let mut queue = VecDeque::from([bags[0]]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if inside.contains(&y) && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            if seen.len() != inside.len() {
                out.push(TdViolation::TraceDisconnected { v });
            }
        }
    }

    out
}
