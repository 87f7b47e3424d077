//! Dynamic (temporal) graphs: a finite graph whose vertices and edges are
//! alive at subsets of a finite time domain, together with a strict order
//! on the times that is not required to be total or transitive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The time domain `T` of a dynamic graph plus its precedence order `<_T`.
///
/// `order` holds the strict precedence pairs. The common case is the natural
/// total order on integer times (see [`TimeDomain::natural`]); the general
/// case allows any irreflexive relation, including non-transitive and
/// non-total ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeDomain {
    /// Distinct time labels, ascending by numeric value.
    pub times: Vec<u32>,
    /// Strict precedence pairs `(a, b)` meaning `a <_T b`.
    pub order: BTreeSet<(u32, u32)>,
    /// True when `order` is a strict total order (exactly one of `(a,b)`,
    /// `(b,a)` for each distinct pair, and transitive).
    pub total: bool,
}

impl TimeDomain {
    /// The natural total order on the given times.
    pub fn natural(times: impl IntoIterator<Item = u32>) -> Self {
        let mut ts: Vec<u32> = times.into_iter().collect();
        ts.sort_unstable();
        ts.dedup();
        let mut order = BTreeSet::new();
        for (i, &a) in ts.iter().enumerate() {
            for &b in &ts[i + 1..] {
                order.insert((a, b));
            }
        }
        TimeDomain { times: ts, order, total: true }
    }

    /// A time domain with an explicit precedence relation. The `total` flag
    /// is computed from the pairs.
    pub fn with_order(
        times: impl IntoIterator<Item = u32>,
        order: impl IntoIterator<Item = (u32, u32)>,
    ) -> Self {
        let mut ts: Vec<u32> = times.into_iter().collect();
        ts.sort_unstable();
        ts.dedup();
        let order: BTreeSet<(u32, u32)> = order.into_iter().collect();
        let total = Self::is_total(&ts, &order);
        TimeDomain { times: ts, order, total }
    }

    fn is_total(times: &[u32], order: &BTreeSet<(u32, u32)>) -> bool {
        for &(a, b) in order.iter() {
            if a == b {
                return false;
            }
        }
        for (i, &a) in times.iter().enumerate() {
            for &b in &times[i + 1..] {
                if order.contains(&(a, b)) == order.contains(&(b, a)) {
                    return false;
                }
            }
        }
        for &(a, b) in order.iter() {
            for &(c, d) in order.iter() {
                if b == c && !order.contains(&(a, d)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains(&self, t: u32) -> bool {
        self.times.binary_search(&t).is_ok()
    }

    /// `a <_T b` or `a = b`: the "non-decreasing" test used by journeys.
    pub fn before_eq(&self, a: u32, b: u32) -> bool {
        a == b || self.order.contains(&(a, b))
    }

    /// Times sorted by the total order. `None` when the order is not total.
    pub fn sorted(&self) -> Option<Vec<u32>> {
        if !self.total {
            return None;
        }
        let mut ts = self.times.clone();
        ts.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.order.contains(&(a, b)) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Some(ts)
    }

    /// True when the order equals the natural total order on `times`.
    pub fn is_natural(&self) -> bool {
        *self == TimeDomain::natural(self.times.iter().copied())
    }
}

/// An ordinary static graph with 1-based vertex ids.
///
/// Undirected edges are stored normalized as `(min, max)`; arcs of a
/// directed graph are stored as given. `labels`, when present, records a
/// provenance tag per vertex (index `v - 1`), e.g. which universe element a
/// Gaifman-graph vertex came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    pub n: usize,
    pub directed: bool,
    pub edges: BTreeSet<(usize, usize)>,
    pub labels: Option<Vec<String>>,
}

impl StaticGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        StaticGraph { n, directed, edges: BTreeSet::new(), labels: None }
    }

    /// Insert an edge (normalizing if undirected). Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        if self.directed || u < v {
            self.edges.insert((u, v));
        } else {
            self.edges.insert((v, u));
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.contains(&(u, v))
        } else {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            self.edges.contains(&(a, b))
        }
    }

    /// Adjacency lists over the underlying undirected graph, index `v - 1`.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            let key = if u < v { (u, v) } else { (v, u) };
            if seen.insert(key) {
                adj[u - 1].push(v);
                adj[v - 1].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// The same vertex set with every arc turned into an undirected edge.
    pub fn underlying_undirected(&self) -> StaticGraph {
        let mut g = StaticGraph::new(self.n, false);
        g.labels = self.labels.clone();
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }
}

/// A snapshot (or other derived static graph) with compact 1-based ids and
/// the mapping back to the original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub graph: StaticGraph,
    /// `origins[i]` is the original id of compact vertex `i + 1`.
    pub origins: Vec<usize>,
}

impl Snapshot {
    /// Original id of a compact vertex.
    pub fn original(&self, compact: usize) -> usize {
        self.origins[compact - 1]
    }

    /// Compact id of an original vertex, if it is present.
    pub fn compact(&self, original: usize) -> Option<usize> {
        self.origins.iter().position(|&o| o == original).map(|i| i + 1)
    }
}

/// A dynamic graph: `n` vertices (ids `1..=n`), a time domain, per-vertex
/// and per-edge liveness. Undirected edges are normalized `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicGraph {
    pub n: usize,
    pub directed: bool,
    pub time: TimeDomain,
    /// Vertices absent from the map are never alive.
    pub vertex_life: BTreeMap<usize, BTreeSet<u32>>,
    pub edges: BTreeSet<(usize, usize)>,
    pub edge_life: BTreeMap<(usize, usize), BTreeSet<u32>>,
}

impl DynamicGraph {
    pub fn new(n: usize, directed: bool, time: TimeDomain) -> Self {
        DynamicGraph {
            n,
            directed,
            time,
            vertex_life: BTreeMap::new(),
            edges: BTreeSet::new(),
            edge_life: BTreeMap::new(),
        }
    }

    /// Normalize an edge key for this graph's directedness.
    pub fn edge_key(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Mark `v` alive at the given times.
    pub fn set_alive(&mut self, v: usize, times: impl IntoIterator<Item = u32>) {
        self.vertex_life.entry(v).or_default().extend(times);
    }

    /// Insert an edge (or arc) live at the given times.
    pub fn add_edge(&mut self, u: usize, v: usize, times: impl IntoIterator<Item = u32>) {
        let key = self.edge_key(u, v);
        self.edges.insert(key);
        self.edge_life.entry(key).or_default().extend(times);
    }

    pub fn alive_times(&self, v: usize) -> &BTreeSet<u32> {
        static EMPTY: BTreeSet<u32> = BTreeSet::new();
        self.vertex_life.get(&v).unwrap_or(&EMPTY)
    }

    pub fn live_times(&self, u: usize, v: usize) -> &BTreeSet<u32> {
        static EMPTY: BTreeSet<u32> = BTreeSet::new();
        self.edge_life.get(&self.edge_key(u, v)).unwrap_or(&EMPTY)
    }

    pub fn is_alive_at(&self, v: usize, t: u32) -> bool {
        self.alive_times(v).contains(&t)
    }

    pub fn is_live_at(&self, u: usize, v: usize, t: u32) -> bool {
        self.live_times(u, v).contains(&t)
    }

    /// Vertices with non-empty liveness, ascending.
    pub fn alive_vertices(&self) -> Vec<usize> {
        self.vertex_life
            .iter()
            .filter(|(_, ts)| !ts.is_empty())
            .map(|(&v, _)| v)
            .collect()
    }

    /// Check every structural invariant, returning all violations found.
    pub fn validate(&self) -> Vec<GraphViolation> {
        let mut out = Vec::new();
        for (&v, ts) in &self.vertex_life {
            if v < 1 || v > self.n {
                out.push(GraphViolation::UnknownVertex { v });
            }
            for &t in ts {
                if !self.time.contains(t) {
                    out.push(GraphViolation::VertexTimeUnknown { v, t });
                }
            }
        }
        for &(u, v) in &self.edges {
            if u == v {
                out.push(GraphViolation::SelfLoop { v: u });
                continue;
            }
            for &w in &[u, v] {
                if w < 1 || w > self.n {
                    out.push(GraphViolation::UnknownVertex { v: w });
                }
            }
            if !self.directed && u > v {
                out.push(GraphViolation::UnnormalizedEdge { u, v });
            }
        }
        for (&(u, v), ts) in &self.edge_life {
            if !self.edges.contains(&(u, v)) {
                out.push(GraphViolation::LifeWithoutEdge { u, v });
            }
            for &t in ts {
                if !self.time.contains(t) {
                    out.push(GraphViolation::EdgeTimeUnknown { u, v, t });
                    continue;
                }
                for &w in &[u, v] {
                    if !self.is_alive_at(w, t) {
                        out.push(GraphViolation::EdgeEndpointDead { u, v, t, dead: w });
                    }
                }
            }
        }
        for &(a, b) in &self.time.order {
            if a == b {
                out.push(GraphViolation::OrderReflexive { t: a });
            }
            for &t in &[a, b] {
                if !self.time.contains(t) {
                    out.push(GraphViolation::OrderTimeUnknown { t });
                }
            }
        }
        out
    }

    /// The snapshot `G_t`: live vertices and live edges at time `t`, with
    /// compact ids and an origin map.
    pub fn snapshot(&self, t: u32) -> Snapshot {
        let origins: Vec<usize> =
            (1..=self.n).filter(|&v| self.is_alive_at(v, t)).collect();
        self.project(&origins, |u, v| self.is_live_at(u, v, t))
    }

    /// The union graph: all ever-alive vertices, all edges with non-empty
    /// liveness, compact ids.
    pub fn union_graph(&self) -> Snapshot {
        let origins = self.alive_vertices();
        self.project(&origins, |u, v| !self.live_times(u, v).is_empty())
    }

    fn project(&self, origins: &[usize], keep: impl Fn(usize, usize) -> bool) -> Snapshot {
        let mut compact = BTreeMap::new();
        for (i, &v) in origins.iter().enumerate() {
            compact.insert(v, i + 1);
        }
        let mut graph = StaticGraph::new(origins.len(), self.directed);
        for &(u, v) in &self.edges {
            if let (Some(&cu), Some(&cv)) = (compact.get(&u), compact.get(&v)) {
                if keep(u, v) {
                    graph.add_edge(cu, cv);
                }
            }
        }
        Snapshot { graph, origins: origins.to_vec() }
    }
}

/// A structural invariant violation in a [`DynamicGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    UnknownVertex { v: usize },
    SelfLoop { v: usize },
    UnnormalizedEdge { u: usize, v: usize },
    VertexTimeUnknown { v: usize, t: u32 },
    EdgeTimeUnknown { u: usize, v: usize, t: u32 },
    EdgeEndpointDead { u: usize, v: usize, t: u32, dead: usize },
    LifeWithoutEdge { u: usize, v: usize },
    OrderReflexive { t: u32 },
    OrderTimeUnknown { t: u32 },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::UnknownVertex { v } => {
                write!(f, "vertex {v} out of range")
            }
            GraphViolation::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            GraphViolation::UnnormalizedEdge { u, v } => {
                write!(f, "undirected edge {u} {v} not stored normalized")
            }
            GraphViolation::VertexTimeUnknown { v, t } => {
                write!(f, "vertex {v} alive at t={t} which is not in the time domain")
            }
            GraphViolation::EdgeTimeUnknown { u, v, t } => {
                write!(f, "edge {u} {v} live at t={t} which is not in the time domain")
            }
            GraphViolation::EdgeEndpointDead { u, v, t, dead } => {
                write!(f, "edge {u} {v} live at t={t} but vertex {dead} dead")
            }
            GraphViolation::LifeWithoutEdge { u, v } => {
                write!(f, "liveness given for absent edge {u} {v}")
            }
            GraphViolation::OrderReflexive { t } => {
                write!(f, "time order contains the reflexive pair ({t},{t})")
            }
            GraphViolation::OrderTimeUnknown { t } => {
                write!(f, "time order mentions t={t} which is not in the time domain")
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::tgr;

    /// Three vertices alive at both times; edge 12 live at 1, edge 23 at 2.
    pub(crate) fn d1() -> DynamicGraph {
        tgr::load_tgr(
            "p tgr 3 2 2\nv 1 1-2\nv 2 1-2\nv 3 1-2\ne 1 2 1\ne 2 3 2\n",
        )
        .unwrap()
    }

    #[test]
    fn natural_order_is_total() {
        let td = TimeDomain::natural(1..=3);
        assert!(td.total);
        assert_eq!(td.times, vec![1, 2, 3]);
        assert!(td.order.contains(&(1, 3)));
        assert!(td.before_eq(2, 2));
        assert!(td.before_eq(1, 2));
        assert!(!td.before_eq(3, 1));
        assert_eq!(td.sorted(), Some(vec![1, 2, 3]));
        assert!(td.is_natural());
    }

    #[test]
    fn explicit_partial_order() {
        let td = TimeDomain::with_order([1, 2, 3], [(1, 2)]);
        assert!(!td.total);
        assert!(td.sorted().is_none());
        assert!(td.before_eq(1, 2));
        assert!(!td.before_eq(2, 3));
        assert!(!td.is_natural());
    }

    #[test]
    fn explicit_total_order_detected() {
        // Reverse order given explicitly: still total, not natural.
        let td = TimeDomain::with_order([1, 2, 3], [(3, 2), (3, 1), (2, 1)]);
        assert!(td.total);
        assert_eq!(td.sorted(), Some(vec![3, 2, 1]));
        assert!(!td.is_natural());
    }

    #[test]
    fn snapshots_of_d1() {
        let g = d1();
        let s1 = g.snapshot(1);
        assert_eq!(s1.origins, vec![1, 2, 3]);
        assert_eq!(s1.graph.edges.iter().collect::<Vec<_>>(), vec![&(1, 2)]);
        let s2 = g.snapshot(2);
        assert_eq!(s2.graph.edges.iter().collect::<Vec<_>>(), vec![&(2, 3)]);
    }

    #[test]
    fn snapshot_drops_dead_vertices() {
        let mut g = DynamicGraph::new(3, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1]);
        g.set_alive(2, [1, 2]);
        g.set_alive(3, [2]);
        g.add_edge(1, 2, [1]);
        g.add_edge(2, 3, [2]);
        assert!(g.validate().is_empty());
        let s2 = g.snapshot(2);
        assert_eq!(s2.origins, vec![2, 3]);
        assert!(s2.graph.has_edge(1, 2));
        assert_eq!(s2.original(1), 2);
        assert_eq!(s2.compact(3), Some(2));
        assert_eq!(s2.compact(1), None);
    }

    #[test]
    fn union_of_d1_is_a_path() {
        let g = d1();
        let u = g.union_graph();
        assert_eq!(u.origins, vec![1, 2, 3]);
        assert_eq!(
            u.graph.edges.iter().collect::<Vec<_>>(),
            vec![&(1, 2), &(2, 3)]
        );
    }

    #[test]
    fn union_skips_never_alive_and_never_live() {
        let mut g = DynamicGraph::new(3, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1, 2]);
        g.set_alive(2, [1]);
        g.edges.insert((1, 2));
        g.edge_life.insert((1, 2), BTreeSet::new());
        let u = g.union_graph();
        assert_eq!(u.origins, vec![1, 2]);
        assert!(u.graph.edges.is_empty());
    }

    #[test]
    fn validate_flags_violations() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1]);
        g.set_alive(2, [1, 3]); // t=3 unknown
        g.add_edge(1, 2, [2]); // vertex 1 dead at 2 (and vertex 2 too)
        g.edges.insert((2, 2)); // self-loop
        g.time.order.insert((1, 1)); // reflexive order pair
        let violations = g.validate();
        let texts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        assert!(texts.iter().any(|s| s.contains("t=3")), "{texts:?}");
        assert!(
            texts
                .iter()
                .any(|s| s == "edge 1 2 live at t=2 but vertex 1 dead"),
            "{texts:?}"
        );
        assert!(texts.iter().any(|s| s.contains("self-loop")), "{texts:?}");
        assert!(texts.iter().any(|s| s.contains("reflexive")), "{texts:?}");
    }

    #[test]
    fn valid_graph_has_no_violations() {
        assert!(d1().validate().is_empty());
    }
}
