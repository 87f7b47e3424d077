//! Relational encodings of dynamic graphs.
//!
//! A dynamic graph is flattened into a finite relational structure whose
//! universe holds one element per (vertex, alive time) pair — a *copy* — plus
//! one element per time point and, under the linear time encoding, a start
//! marker. Two translation variants are supported:
//!
//! * [`Variant::LtwPreserving`] keeps per-time liveness as unary/binary
//!   relations (`LV@t`, `LE@t`) next to the copy edge relation `E`, so the
//!   Gaifman graph decomposes into one component per snapshot plus the time
//!   component.
//! * [`Variant::TwPreserving`] replaces them with a single ternary relation
//!   `Xi` relating two copies and the time at which the edge is live, plus a
//!   per-vertex relation `Lv@v` collecting all copies of one vertex.
//!
//! Time points are related through `R`: under [`TimeEncoding::CliqueTime`]
//! `R` holds every strict order pair, under [`TimeEncoding::LinearTime`] it
//! holds successor pairs and one pair from the start marker to the earliest
//! time (which requires the time order to be total).
//!
//! The vertex each copy descends from is not a relation but an interpreted
//! function, available through [`RelationalStructure::origin`]; it is
//! deliberately excluded from the Gaifman graph.

use std::collections::BTreeMap;
use std::fmt;

use crate::temporal::{DynamicGraph, StaticGraph};

/// Which liveness encoding the translation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Per-time relations `LV@t` / `LE@t`; preserves local treewidth.
    LtwPreserving,
    /// Ternary `Xi` plus per-vertex `Lv@v`; preserves treewidth.
    TwPreserving,
}

/// How the order on time points is encoded in `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeEncoding {
    /// `R` holds every strict order pair, so comparisons are one atom.
    CliqueTime,
    /// `R` holds successor pairs plus a start marker; keeps the time part of
    /// the Gaifman graph a path at the cost of needing a total order.
    LinearTime,
}

/// What a universe element stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementTag {
    /// The copy of vertex `v` at time `t` (exists iff `v` is alive at `t`).
    Copy { v: usize, t: u32 },
    /// The time point `t`.
    Time { t: u32 },
    /// The start marker preceding the earliest time (linear encoding only).
    Start,
}

impl fmt::Display for ElementTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementTag::Copy { v, t } => write!(f, "v{v}@{t}"),
            ElementTag::Time { t } => write!(f, "t{t}"),
            ElementTag::Start => write!(f, "s"),
        }
    }
}

/// A named relation: a set of equal-length tuples over universe indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: std::collections::BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new(arity: usize) -> Self {
        Relation { arity, tuples: Default::default() }
    }

    fn insert(&mut self, tuple: Vec<usize>) {
        debug_assert_eq!(tuple.len(), self.arity);
        self.tuples.insert(tuple);
    }
}

/// A finite relational structure produced by [`translate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalStructure {
    pub variant: Variant,
    pub encoding: TimeEncoding,
    /// Universe, indexed 0.. — copies first (by vertex, then time), then
    /// time points in ascending order, then the start marker if present.
    pub elements: Vec<ElementTag>,
    pub relations: BTreeMap<String, Relation>,
}

/// Why a dynamic graph could not be translated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslateError {
    /// The graph fails its own consistency checks.
    InvalidGraph(Vec<String>),
    /// The linear time encoding needs a total time order.
    NonTotalTime,
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::InvalidGraph(msgs) => {
                write!(f, "graph is inconsistent: {}", msgs.join("; "))
            }
            TranslateError::NonTotalTime => {
                write!(f, "linear time encoding requires a total time order")
            }
        }
    }
}

impl std::error::Error for TranslateError {}

/// Translate a dynamic graph into a relational structure.
///
/// The graph is validated first. Universe layout and the exact tuple sets are
/// deterministic, so equal graphs produce identical structures.
pub fn translate(
    g: &DynamicGraph,
    variant: Variant,
    encoding: TimeEncoding,
) -> Result<RelationalStructure, TranslateError> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(TranslateError::InvalidGraph(
            violations.iter().map(|v| v.to_string()).collect(),
        ));
    }

    let mut elements = Vec::new();
    let mut copy_at = BTreeMap::new();
    for v in 1..=g.n {
        for &t in g.alive_times(v) {
            copy_at.insert((v, t), elements.len());
            elements.push(ElementTag::Copy { v, t });
        }
    }
    let mut time_at = BTreeMap::new();
    for &t in &g.time.times {
        time_at.insert(t, elements.len());
        elements.push(ElementTag::Time { t });
    }
    let start = match encoding {
        TimeEncoding::LinearTime => {
            elements.push(ElementTag::Start);
            Some(elements.len() - 1)
        }
        TimeEncoding::CliqueTime => None,
    };

    let mut relations = BTreeMap::new();

    let mut v_rel = Relation::new(1);
    for (&(_, _), &idx) in &copy_at {
        v_rel.insert(vec![idx]);
    }
    relations.insert("V".to_string(), v_rel);

    let mut t_rel = Relation::new(1);
    for &idx in time_at.values() {
        t_rel.insert(vec![idx]);
    }
    relations.insert("T".to_string(), t_rel);

    // R: the time order. Pairs run earlier -> later.
    let mut r_rel = Relation::new(2);
    match encoding {
        TimeEncoding::CliqueTime => {
            for &a in &g.time.times {
                for &b in &g.time.times {
                    if a != b && g.time.before_eq(a, b) {
                        r_rel.insert(vec![time_at[&a], time_at[&b]]);
                    }
                }
            }
        }
        TimeEncoding::LinearTime => {
            let sorted = g.time.sorted().ok_or(TranslateError::NonTotalTime)?;
            if let Some(&first) = sorted.first() {
                r_rel.insert(vec![start.unwrap(), time_at[&first]]);
            }
            for w in sorted.windows(2) {
                r_rel.insert(vec![time_at[&w[0]], time_at[&w[1]]]);
            }
        }
    }
    relations.insert("R".to_string(), r_rel);

    // Live copy pairs: for every edge live at t, both endpoints are alive at
    // t (the graph validated), so the copies exist. Undirected edges are
    // closed under symmetry; arcs keep their direction.
    let live_pairs = |t: u32| -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (&(u, v), life) in &g.edge_life {
            if life.contains(&t) {
                pairs.push((copy_at[&(u, t)], copy_at[&(v, t)]));
                if !g.directed {
                    pairs.push((copy_at[&(v, t)], copy_at[&(u, t)]));
                }
            }
        }
        pairs
    };

    match variant {
        Variant::LtwPreserving => {
            let mut e_rel = Relation::new(2);
            for &t in &g.time.times {
                let mut lv = Relation::new(1);
                for v in 1..=g.n {
                    if let Some(&idx) = copy_at.get(&(v, t)) {
                        lv.insert(vec![idx]);
                    }
                }
                relations.insert(format!("LV@{t}"), lv);

                let mut le = Relation::new(2);
                for (a, b) in live_pairs(t) {
                    le.insert(vec![a, b]);
                    e_rel.insert(vec![a, b]);
                }
                relations.insert(format!("LE@{t}"), le);
            }
            relations.insert("E".to_string(), e_rel);
        }
        Variant::TwPreserving => {
            for v in 1..=g.n {
                let mut lv = Relation::new(1);
                for &t in g.alive_times(v) {
                    lv.insert(vec![copy_at[&(v, t)]]);
                }
                relations.insert(format!("Lv@{v}"), lv);
            }
            let mut xi = Relation::new(3);
            for &t in &g.time.times {
                for (a, b) in live_pairs(t) {
                    xi.insert(vec![a, b, time_at[&t]]);
                }
            }
            relations.insert("Xi".to_string(), xi);
        }
    }

    Ok(RelationalStructure { variant, encoding, elements, relations })
}

impl RelationalStructure {
    /// The vertex a copy descends from; `None` for time elements and the
    /// start marker. This is the interpreted origin function, kept out of
    /// the relation map so the Gaifman graph never sees it.
    pub fn origin(&self, element: usize) -> Option<usize> {
        match self.elements.get(element) {
            Some(ElementTag::Copy { v, .. }) => Some(*v),
            _ => None,
        }
    }

    /// Universe index of the copy of `v` at `t`, if that copy exists.
    pub fn copy_index(&self, v: usize, t: u32) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| matches!(e, ElementTag::Copy { v: cv, t: ct } if *cv == v && *ct == t))
    }

    /// Universe index of the time element for `t`.
    pub fn time_index(&self, t: u32) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| matches!(e, ElementTag::Time { t: et } if *et == t))
    }

    /// Universe index of the start marker (linear encoding only).
    pub fn start_index(&self) -> Option<usize> {
        self.elements.iter().position(|e| matches!(e, ElementTag::Start))
    }

    /// All time values with universe elements, in universe order.
    pub fn times(&self) -> Vec<u32> {
        self.elements
            .iter()
            .filter_map(|e| match e {
                ElementTag::Time { t } => Some(*t),
                _ => None,
            })
            .collect()
    }

    /// The Gaifman graph: one vertex per universe element (1-based, labelled
    /// by the element tag), one edge per pair of distinct elements that
    /// co-occur in some tuple.
    pub fn gaifman(&self) -> StaticGraph {
        let labels = self.elements.iter().map(|e| e.to_string()).collect();
        let mut graph = StaticGraph::new(self.elements.len(), false);
        graph.labels = Some(labels);
        for rel in self.relations.values() {
            if rel.arity < 2 {
                continue;
            }
            for tuple in &rel.tuples {
                for i in 0..tuple.len() {
                    for j in i + 1..tuple.len() {
                        if tuple[i] != tuple[j] {
                            graph.add_edge(tuple[i] + 1, tuple[j] + 1);
                        }
                    }
                }
            }
        }
        graph
    }

    /// Plain-text dump: `u` lines for universe elements, `r` lines for
    /// relation tuples (one per tuple, relations in name order), `f` lines
    /// for the origin function. Line order is deterministic.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (idx, tag) in self.elements.iter().enumerate() {
            out.push_str(&format!("u {idx} {tag}\n"));
        }
        for (name, rel) in &self.relations {
            if rel.tuples.is_empty() {
                out.push_str(&format!("r {name} {}\n", rel.arity));
            }
            for tuple in &rel.tuples {
                let ids: Vec<String> = tuple.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("r {name} {} {}\n", rel.arity, ids.join(" ")));
            }
        }
        for (idx, tag) in self.elements.iter().enumerate() {
            if let ElementTag::Copy { v, .. } = tag {
                let _ = v;
                out.push_str(&format!("f {idx} {}\n", self.origin(idx).unwrap()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::tests::d1;
    use crate::temporal::TimeDomain;

    fn tuples(s: &RelationalStructure, name: &str) -> Vec<Vec<usize>> {
        s.relations[name].tuples.iter().cloned().collect()
    }

    #[test]
    fn d1_ltw_clique_universe_and_relations() {
        let s = translate(&d1(), Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        let tags: Vec<String> = s.elements.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            tags,
            ["v1@1", "v1@2", "v2@1", "v2@2", "v3@1", "v3@2", "t1", "t2"]
        );
        assert_eq!(
            tuples(&s, "V"),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]]
        );
        assert_eq!(tuples(&s, "T"), vec![vec![6], vec![7]]);
        // Edge 12 is live at 1 only, edge 23 at 2 only.
        assert_eq!(
            tuples(&s, "E"),
            vec![vec![0, 2], vec![2, 0], vec![3, 5], vec![5, 3]]
        );
        assert_eq!(tuples(&s, "R"), vec![vec![6, 7]]);
        assert_eq!(tuples(&s, "LV@1"), vec![vec![0], vec![2], vec![4]]);
        assert_eq!(tuples(&s, "LV@2"), vec![vec![1], vec![3], vec![5]]);
        assert_eq!(tuples(&s, "LE@1"), vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(tuples(&s, "LE@2"), vec![vec![3, 5], vec![5, 3]]);
        assert!(!s.relations.contains_key("Xi"));
        assert_eq!(s.origin(3), Some(2));
        assert_eq!(s.origin(6), None);
        assert_eq!(s.copy_index(3, 2), Some(5));
        assert_eq!(s.time_index(2), Some(7));
        assert_eq!(s.start_index(), None);
    }

    #[test]
    fn d1_ltw_linear_adds_start_and_successor_pairs() {
        let s = translate(&d1(), Variant::LtwPreserving, TimeEncoding::LinearTime).unwrap();
        assert_eq!(s.elements.len(), 9);
        assert_eq!(s.elements[8], ElementTag::Start);
        assert_eq!(tuples(&s, "R"), vec![vec![6, 7], vec![8, 6]]);
        assert_eq!(s.start_index(), Some(8));
    }

    #[test]
    fn d1_tw_clique_has_xi_and_per_vertex_relations() {
        let s = translate(&d1(), Variant::TwPreserving, TimeEncoding::CliqueTime).unwrap();
        assert_eq!(
            tuples(&s, "Xi"),
            vec![vec![0, 2, 6], vec![2, 0, 6], vec![3, 5, 7], vec![5, 3, 7]]
        );
        assert_eq!(tuples(&s, "Lv@1"), vec![vec![0], vec![1]]);
        assert_eq!(tuples(&s, "Lv@2"), vec![vec![2], vec![3]]);
        assert_eq!(tuples(&s, "Lv@3"), vec![vec![4], vec![5]]);
        assert!(!s.relations.contains_key("E"));
        assert!(!s.relations.contains_key("LV@1"));
        assert!(!s.relations.contains_key("LE@1"));
    }

    #[test]
    fn d1_ltw_gaifman_is_snapshot_copies_plus_time_edge() {
        let s = translate(&d1(), Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        let g = s.gaifman();
        assert_eq!(g.n, 8);
        let expected: std::collections::BTreeSet<(usize, usize)> =
            [(1, 3), (4, 6), (7, 8)].into_iter().collect();
        assert_eq!(g.edges, expected);
        let labels = g.labels.as_ref().unwrap();
        assert_eq!(labels[0], "v1@1");
        assert_eq!(labels[6], "t1");
        // Copies v1@2 and v3@1 touch no live edge and stay isolated.
        let adj = g.undirected_adjacency();
        assert!(adj[1].is_empty());
        assert!(adj[4].is_empty());
    }

    #[test]
    fn d1_tw_gaifman_ties_copies_to_their_time() {
        let s = translate(&d1(), Variant::TwPreserving, TimeEncoding::CliqueTime).unwrap();
        let g = s.gaifman();
        let expected: std::collections::BTreeSet<(usize, usize)> =
            [(1, 3), (1, 7), (3, 7), (4, 6), (4, 8), (6, 8), (7, 8)]
                .into_iter()
                .collect();
        assert_eq!(g.edges, expected);
    }

    #[test]
    fn directed_edges_are_not_symmetrized() {
        let mut g = DynamicGraph::new(2, true, TimeDomain::natural(1..=1));
        g.set_alive(1, [1]);
        g.set_alive(2, [1]);
        g.add_edge(1, 2, [1]);
        let s = translate(&g, Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        assert_eq!(tuples(&s, "E"), vec![vec![0, 1]]);
        assert_eq!(tuples(&s, "LE@1"), vec![vec![0, 1]]);
    }

    #[test]
    fn partial_order_keeps_clique_pairs_and_rejects_linear() {
        let time = TimeDomain::with_order([1, 2, 3], [(1, 2), (1, 3)]);
        assert!(!time.total);
        let mut g = DynamicGraph::new(1, false, time);
        g.set_alive(1, [1]);
        let s = translate(&g, Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        assert_eq!(tuples(&s, "R"), vec![vec![1, 2], vec![1, 3]]);
        let err = translate(&g, Variant::LtwPreserving, TimeEncoding::LinearTime).unwrap_err();
        assert_eq!(err, TranslateError::NonTotalTime);
    }

    #[test]
    fn invalid_graph_is_rejected() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=1));
        g.set_alive(1, [1]);
        g.add_edge(1, 2, [1]); // vertex 2 is never alive
        match translate(&g, Variant::LtwPreserving, TimeEncoding::CliqueTime) {
            Err(TranslateError::InvalidGraph(msgs)) => {
                assert!(msgs.iter().any(|m| m.contains("vertex 2 dead")), "{msgs:?}");
            }
            other => panic!("expected InvalidGraph, got {other:?}"),
        }
    }

    #[test]
    fn empty_relations_stay_declared() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1]);
        g.set_alive(2, [2]);
        let s = translate(&g, Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        assert!(s.relations["E"].tuples.is_empty());
        assert!(s.relations["LE@1"].tuples.is_empty());
        assert_eq!(tuples(&s, "LV@2"), vec![vec![1]]);
        let dump = s.dump();
        assert!(dump.contains("r E 2\n"), "{dump}");
    }

    #[test]
    fn dump_is_deterministic_and_complete() {
        let s = translate(&d1(), Variant::LtwPreserving, TimeEncoding::CliqueTime).unwrap();
        let dump = s.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "u 0 v1@1");
        assert_eq!(lines[7], "u 7 t2");
        assert!(lines.contains(&"r E 2 0 2"));
        assert!(lines.contains(&"r R 2 6 7"));
        assert!(lines.contains(&"f 5 3"));
        assert_eq!(dump, s.dump());
    }
}
