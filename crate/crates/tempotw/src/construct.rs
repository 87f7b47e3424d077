//! Constructive tree decompositions for translated dynamic graphs.
//!
//! Both builders take one tree decomposition per snapshot (bags over
//! original vertex ids) and assemble a decomposition of the Gaifman graph of
//! the treewidth-preserving translation — which is also valid for the
//! local-treewidth-preserving translation, whose Gaifman graph is a
//! subgraph on the same universe.
//!
//! The construction lifts every snapshot bag by relabelling vertices to
//! their copies at that time and adding the time element, then ties the
//! lifted snapshot trees together through the time part:
//!
//! * [`build_clique_time_decomposition`] adds one bag holding *all* time
//!   elements and connects it to the first bag of every snapshot tree.
//!   Width ≤ max{k+1, |T|−1} for input width ≤ k.
//! * [`build_linear_time_decomposition`] lays the time elements out as a
//!   path of bags `{s,t₁},{t₁},{t₁,t₂},{t₂},…` and connects each snapshot
//!   tree to its `{t}` bag. Width ≤ max{k+1, 1}.
//!
//! Copies that touch no live edge may be left out of the input bags; they
//! get singleton bags attached to their time's bag. "First" and "lowest
//! index" are always literal, so outputs are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decomposition::{check_decomposition, TreeDecomposition};
use crate::structures::{translate, RelationalStructure, TimeEncoding, TranslateError, Variant};
use crate::temporal::DynamicGraph;

/// Why a decomposition could not be constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// The graph itself could not be translated.
    Translate(TranslateError),
    /// The decomposition supplied for time `t` is not a valid decomposition
    /// of that snapshot (up to copies it may omit).
    BadSnapshotDecomposition { t: u32, violations: Vec<String> },
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::Translate(e) => write!(f, "{e}"),
            ConstructError::BadSnapshotDecomposition { t, violations } => {
                write!(f, "snapshot decomposition for t={t} is invalid: {}", violations.join("; "))
            }
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<TranslateError> for ConstructError {
    fn from(e: TranslateError) -> Self {
        ConstructError::Translate(e)
    }
}

/// One snapshot decomposition, validated and ready to lift: bags still hold
/// original vertex ids, `covered` is their union.
struct SnapshotInput {
    bags: Vec<BTreeSet<usize>>,
    edges: Vec<(usize, usize)>,
    covered: BTreeSet<usize>,
}

/// Validate the input decomposition for time `t`. The input must be a tree,
/// mention only vertices alive at `t`, cover both endpoints of every edge
/// live at `t` in one bag, and have connected traces; vertices it omits are
/// topped up by the caller. A missing or bagless input counts as the empty
/// decomposition.
fn validated_input(
    g: &DynamicGraph,
    per_snapshot: &BTreeMap<u32, TreeDecomposition>,
    t: u32,
) -> Result<SnapshotInput, ConstructError> {
    let bad = |violations: Vec<String>| ConstructError::BadSnapshotDecomposition { t, violations };
    let input = match per_snapshot.get(&t) {
        Some(d) if !d.bags.is_empty() => d.clone(),
        _ => TreeDecomposition::empty(),
    };

    let snap = g.snapshot(t);
    let mut compact_bags = Vec::with_capacity(input.bags.len());
    let mut covered = BTreeSet::new();
    for bag in &input.bags {
        let mut compact = BTreeSet::new();
        for &v in bag {
            match snap.compact(v) {
                Some(c) => {
                    compact.insert(c);
                    covered.insert(v);
                }
                None => {
                    return Err(bad(vec![format!("bag vertex {v} is not alive at t={t}")]));
                }
            }
        }
        compact_bags.push(compact);
    }

    // Reuse the full checker by extending the input with singleton bags for
    // the snapshot vertices it omits, hung off bag 0. That leaves every
    // defect of the input itself (treeness, edge coverage, traces) visible.
    let mut extended_bags = compact_bags;
    let mut extended_edges: Vec<(usize, usize)> = input.edges.iter().copied().collect();
    for c in 1..=snap.graph.n {
        if !covered.contains(&snap.original(c)) {
            extended_bags.push(BTreeSet::from([c]));
            extended_edges.push((0, extended_bags.len() - 1));
        }
    }
    let extended = TreeDecomposition::new(extended_bags, extended_edges);
    let violations = check_decomposition(&snap.graph, &extended);
    if !violations.is_empty() {
        return Err(bad(violations.iter().map(|v| v.to_string()).collect()));
    }

    Ok(SnapshotInput {
        bags: input.bags.clone(),
        edges: input.edges.iter().copied().collect(),
        covered,
    })
}

/// Shared lifting step: append each snapshot's bags (vertices replaced by
/// their copies at `t`, time element added) and its tree edges. Returns the
/// index of the first bag of each snapshot.
fn lift_snapshots(
    g: &DynamicGraph,
    s: &RelationalStructure,
    per_snapshot: &BTreeMap<u32, TreeDecomposition>,
    bags: &mut Vec<BTreeSet<usize>>,
    edges: &mut Vec<(usize, usize)>,
) -> Result<(BTreeMap<u32, usize>, Vec<(u32, usize)>), ConstructError> {
    let mut first_bag_of = BTreeMap::new();
    let mut leftover = Vec::new();
    for &t in &g.time.times {
        let input = validated_input(g, per_snapshot, t)?;
        let offset = bags.len();
        first_bag_of.insert(t, offset);
        let time_id = s.time_index(t).unwrap() + 1;
        for bag in &input.bags {
            let mut lifted: BTreeSet<usize> =
                bag.iter().map(|&v| s.copy_index(v, t).unwrap() + 1).collect();
            lifted.insert(time_id);
            bags.push(lifted);
        }
        for &(a, b) in &input.edges {
            edges.push((offset + a, offset + b));
        }
        for v in 1..=g.n {
            if g.is_alive_at(v, t) && !input.covered.contains(&v) {
                leftover.push((t, s.copy_index(v, t).unwrap() + 1));
            }
        }
    }
    Ok((first_bag_of, leftover))
}

/// Build a decomposition of `gaifman(translate(G, TwPreserving, CliqueTime))`
/// from per-snapshot decompositions: lifted snapshot trees, one bag with all
/// time elements connected to the first bag of each snapshot tree, and
/// singleton bags for copies the inputs omit. Width ≤ max{k+1, |T|−1}.
pub fn build_clique_time_decomposition(
    g: &DynamicGraph,
    per_snapshot: &BTreeMap<u32, TreeDecomposition>,
) -> Result<TreeDecomposition, ConstructError> {
    let s = translate(g, Variant::TwPreserving, TimeEncoding::CliqueTime)?;
    if g.time.times.is_empty() {
        return Ok(TreeDecomposition::empty());
    }
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let (first_bag_of, leftover) = lift_snapshots(g, &s, per_snapshot, &mut bags, &mut edges)?;

    let time_bag: BTreeSet<usize> =
        g.time.times.iter().map(|&t| s.time_index(t).unwrap() + 1).collect();
    let time_bag_idx = bags.len();
    bags.push(time_bag);
    for &t in &g.time.times {
        edges.push((time_bag_idx, first_bag_of[&t]));
    }

    for (t, copy_id) in leftover {
        bags.push(BTreeSet::from([copy_id]));
        edges.push((first_bag_of[&t], bags.len() - 1));
    }
    Ok(TreeDecomposition::new(bags, edges))
}

/// Build a decomposition of `gaifman(translate(G, TwPreserving, LinearTime))`:
/// lifted snapshot trees, the time path as alternating `{prev,t}` / `{t}`
/// bags starting from `{s,t₁}`, each snapshot tree hanging off its `{t}`
/// bag, and singleton bags for omitted copies. Width ≤ max{k+1, 1}.
pub fn build_linear_time_decomposition(
    g: &DynamicGraph,
    per_snapshot: &BTreeMap<u32, TreeDecomposition>,
) -> Result<TreeDecomposition, ConstructError> {
    let s = translate(g, Variant::TwPreserving, TimeEncoding::LinearTime)?;
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let (first_bag_of, leftover) = lift_snapshots(g, &s, per_snapshot, &mut bags, &mut edges)?;

    let start_id = s.start_index().unwrap() + 1;
    let sorted = g.time.sorted().expect("translate checked totality");
    if sorted.is_empty() {
        bags.push(BTreeSet::from([start_id]));
        return Ok(TreeDecomposition::new(bags, edges));
    }

    let mut prev_id = start_id;
    let mut prev_chain_bag = None;
    let mut time_bag_of = BTreeMap::new();
    for &t in &sorted {
        let time_id = s.time_index(t).unwrap() + 1;
        let pair_idx = bags.len();
        bags.push(BTreeSet::from([prev_id, time_id]));
        if let Some(prev) = prev_chain_bag {
            edges.push((prev, pair_idx));
        }
        let single_idx = bags.len();
        bags.push(BTreeSet::from([time_id]));
        edges.push((pair_idx, single_idx));
        time_bag_of.insert(t, single_idx);
        prev_id = time_id;
        prev_chain_bag = Some(single_idx);
    }

    for &t in &sorted {
        edges.push((time_bag_of[&t], first_bag_of[&t]));
    }
    for (t, copy_id) in leftover {
        bags.push(BTreeSet::from([copy_id]));
        edges.push((time_bag_of[&t], bags.len() - 1));
    }
    Ok(TreeDecomposition::new(bags, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::tests::d1;
    use crate::temporal::TimeDomain;

    fn td(bags: &[&[usize]], edges: &[(usize, usize)]) -> TreeDecomposition {
        TreeDecomposition::new(
            bags.iter().map(|b| b.iter().copied().collect()).collect(),
            edges.iter().copied(),
        )
    }

    fn d1_inputs() -> BTreeMap<u32, TreeDecomposition> {
        BTreeMap::from([(1, td(&[&[1, 2]], &[])), (2, td(&[&[2, 3]], &[]))])
    }

    fn assert_valid(
        g: &DynamicGraph,
        d: &TreeDecomposition,
        encoding: TimeEncoding,
    ) {
        for variant in [Variant::TwPreserving, Variant::LtwPreserving] {
            let gaif = translate(g, variant, encoding).unwrap().gaifman();
            let violations = check_decomposition(&gaif, d);
            assert!(violations.is_empty(), "{variant:?}: {violations:?}");
        }
    }

    #[test]
    fn clique_builder_matches_hand_construction_on_d1() {
        // Universe ids (1-based): v1@1=1, v1@2=2, v2@1=3, v2@2=4,
        // v3@1=5, v3@2=6, t1=7, t2=8.
        let d = build_clique_time_decomposition(&d1(), &d1_inputs()).unwrap();
        let expected = td(
            &[&[1, 3, 7], &[4, 6, 8], &[7, 8], &[5], &[2]],
            &[(0, 2), (1, 2), (0, 3), (1, 4)],
        );
        assert_eq!(d, expected);
        assert_eq!(d.width(), 2);
        assert_valid(&d1(), &d, TimeEncoding::CliqueTime);
    }

    #[test]
    fn linear_builder_matches_hand_construction_on_d1() {
        // Start marker is universe element 9; the time path runs
        // {s,t1},{t1},{t1,t2},{t2} with snapshots hanging off {t} bags.
        let d = build_linear_time_decomposition(&d1(), &d1_inputs()).unwrap();
        let expected = td(
            &[
                &[1, 3, 7],
                &[4, 6, 8],
                &[7, 9],
                &[7],
                &[7, 8],
                &[8],
                &[5],
                &[2],
            ],
            &[(2, 3), (3, 4), (4, 5), (3, 0), (5, 1), (3, 6), (5, 7)],
        );
        assert_eq!(d, expected);
        assert_eq!(d.width(), 2);
        assert_valid(&d1(), &d, TimeEncoding::LinearTime);
    }

    #[test]
    fn clique_builder_handles_partial_liveness() {
        let mut g = DynamicGraph::new(3, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1, 2]);
        g.set_alive(2, [1]);
        g.set_alive(3, [2]);
        g.add_edge(1, 2, [1]);
        g.add_edge(1, 3, [2]);
        let inputs = BTreeMap::from([(1, td(&[&[1, 2]], &[])), (2, td(&[&[1, 3]], &[]))]);
        let d = build_clique_time_decomposition(&g, &inputs).unwrap();
        assert_eq!(d.width(), 2);
        assert_valid(&g, &d, TimeEncoding::CliqueTime);
        let lin = build_linear_time_decomposition(&g, &inputs).unwrap();
        assert_eq!(lin.width(), 2);
        assert_valid(&g, &lin, TimeEncoding::LinearTime);
    }

    #[test]
    fn time_bag_dominates_width_on_edgeless_snapshots() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=4));
        g.set_alive(1, [1, 2, 3, 4]);
        g.set_alive(2, [1, 2, 3, 4]);
        let inputs: BTreeMap<u32, TreeDecomposition> =
            (1..=4).map(|t| (t, td(&[&[1], &[2]], &[(0, 1)]))).collect();
        let d = build_clique_time_decomposition(&g, &inputs).unwrap();
        assert_eq!(d.width(), 3); // the {t1..t4} bag
        assert_valid(&g, &d, TimeEncoding::CliqueTime);

        let lin = build_linear_time_decomposition(&g, &inputs).unwrap();
        assert_eq!(lin.width(), 1); // time path bags stay at size 2
        assert_valid(&g, &lin, TimeEncoding::LinearTime);
    }

    #[test]
    fn single_time_degenerates_to_k_plus_one() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=1));
        g.set_alive(1, [1]);
        g.set_alive(2, [1]);
        g.add_edge(1, 2, [1]);
        let inputs = BTreeMap::from([(1, td(&[&[1, 2]], &[]))]);
        let d = build_clique_time_decomposition(&g, &inputs).unwrap();
        assert_eq!(d.width(), 2); // k+1 = 2 beats |T|-1 = 0
        assert_valid(&g, &d, TimeEncoding::CliqueTime);
    }

    #[test]
    fn missing_input_is_fine_for_edgeless_snapshots_only() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1, 2]);
        g.set_alive(2, [1, 2]);
        g.add_edge(1, 2, [2]);
        let inputs = BTreeMap::from([(2, td(&[&[1, 2]], &[]))]);
        // t=1 has no live edges, so the defaulted empty decomposition works
        // and copies at t=1 become singleton bags.
        let d = build_clique_time_decomposition(&g, &inputs).unwrap();
        assert_valid(&g, &d, TimeEncoding::CliqueTime);

        // Dropping t=2's input leaves its live edge uncovered.
        let err = build_clique_time_decomposition(&g, &BTreeMap::new()).unwrap_err();
        match err {
            ConstructError::BadSnapshotDecomposition { t: 2, violations } => {
                assert!(violations.iter().any(|v| v.contains("edge")), "{violations:?}");
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn dead_bag_vertex_is_rejected() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=2));
        g.set_alive(1, [1, 2]);
        g.set_alive(2, [2]);
        g.add_edge(1, 2, [2]);
        let inputs = BTreeMap::from([
            (1, td(&[&[1, 2]], &[])), // vertex 2 is dead at t=1
            (2, td(&[&[1, 2]], &[])),
        ]);
        let err = build_clique_time_decomposition(&g, &inputs).unwrap_err();
        match err {
            ConstructError::BadSnapshotDecomposition { t: 1, violations } => {
                assert!(
                    violations.iter().any(|v| v.contains("not alive")),
                    "{violations:?}"
                );
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn non_tree_input_is_rejected() {
        let mut g = DynamicGraph::new(2, false, TimeDomain::natural(1..=1));
        g.set_alive(1, [1]);
        g.set_alive(2, [1]);
        let inputs = BTreeMap::from([(1, td(&[&[1], &[2]], &[]))]); // two bags, no edge
        let err = build_clique_time_decomposition(&g, &inputs).unwrap_err();
        assert!(matches!(err, ConstructError::BadSnapshotDecomposition { t: 1, .. }), "{err:?}");
    }

    #[test]
    fn linear_needs_a_total_order() {
        let time = TimeDomain::with_order([1, 2], []);
        let mut g = DynamicGraph::new(1, false, time);
        g.set_alive(1, [1]);
        let err = build_linear_time_decomposition(&g, &BTreeMap::new()).unwrap_err();
        assert_eq!(err, ConstructError::Translate(TranslateError::NonTotalTime));
    }
}
