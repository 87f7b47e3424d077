//! Direct combinatorial algorithms for the temporal-graph problems —
//! journeys, small connected dynamic components, message return paths, and
//! the two coloring notions. They are independent of the logic machinery and
//! act as its oracles: for every small instance, the model checker and the
//! solver here must agree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::temporal::{DynamicGraph, Snapshot};

/// A journey question: is `target` reachable from `source` along edges used
/// at non-decreasing times, with at most `max_length` edges?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JourneyQuery {
    pub source: usize,
    pub target: usize,
    pub max_length: usize,
}

/// Why a solver refused its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    UnknownVertex(usize),
    NeedsDirected,
    NeedsUndirected,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::UnknownVertex(v) => write!(f, "vertex {v} is not in the graph"),
            SolveError::NeedsDirected => write!(f, "this solver needs a directed graph"),
            SolveError::NeedsUndirected => write!(f, "this solver needs an undirected graph"),
        }
    }
}

impl std::error::Error for SolveError {}

fn check_vertex(g: &DynamicGraph, v: usize) -> Result<(), SolveError> {
    if v == 0 || v > g.n {
        return Err(SolveError::UnknownVertex(v));
    }
    Ok(())
}

/// Edge count of a shortest journey from `source` to `target`, or `None` if
/// no journey exists. Breadth-first search over states (vertex, last-used
/// time); successive times only need the order relation, so partial orders
/// work, and waiting at a vertex needs no liveness (matching the formulas,
/// where consecutive edges are linked by origin equality alone).
pub fn shortest_journey(
    g: &DynamicGraph,
    source: usize,
    target: usize,
) -> Result<Option<usize>, SolveError> {
    check_vertex(g, source)?;
    check_vertex(g, target)?;
    if source == target {
        return Ok(Some(0));
    }
    let times = &g.time.times;
    let time_index: BTreeMap<u32, usize> =
        times.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut out: Vec<Vec<(usize, &BTreeSet<u32>)>> = vec![Vec::new(); g.n + 1];
    for (&(u, v), live) in &g.edge_life {
        if live.is_empty() {
            continue;
        }
        out[u].push((v, live));
        if !g.directed {
            out[v].push((u, live));
        }
    }

    let idx = |v: usize, j: usize| (v - 1) * times.len() + j;
    let mut dist: Vec<Option<usize>> = vec![None; g.n * times.len()];
    let mut queue = VecDeque::new();
    for &(w, live) in &out[source] {
        for &t in live {
            let j = time_index[&t];
            if dist[idx(w, j)].is_none() {
                dist[idx(w, j)] = Some(1);
                if w == target {
                    return Ok(Some(1));
                }
                queue.push_back((w, j));
            }
        }
    }
    while let Some((v, j)) = queue.pop_front() {
        let d = dist[idx(v, j)].unwrap();
        for &(w, live) in &out[v] {
            for &t in live {
                if !g.time.before_eq(times[j], t) {
                    continue;
                }
                let j2 = time_index[&t];
                if dist[idx(w, j2)].is_none() {
                    dist[idx(w, j2)] = Some(d + 1);
                    if w == target {
                        return Ok(Some(d + 1));
                    }
                    queue.push_back((w, j2));
                }
            }
        }
    }
    Ok(None)
}

/// Whether a journey within the query's hop bound exists.
pub fn journey_exists(g: &DynamicGraph, q: JourneyQuery) -> Result<bool, SolveError> {
    Ok(shortest_journey(g, q.source, q.target)?.is_some_and(|len| len <= q.max_length))
}

/// Largest set of at least `k` ever-alive vertices with journeys of at most
/// `journey_len` edges between every ordered pair, or `None`. Exhaustive
/// clique search on the symmetrized journey relation: candidates in
/// decreasing symmetric-degree order (ties to the lower id), pruned by the
/// remaining-size bound; the first maximum clique found wins, so the witness
/// is deterministic.
pub fn scdc(
    g: &DynamicGraph,
    k: usize,
    journey_len: usize,
) -> Result<Option<Vec<usize>>, SolveError> {
    if !g.directed {
        return Err(SolveError::NeedsDirected);
    }
    assert!(k >= 1, "component size must be at least 1");
    let candidates = g.alive_vertices();
    let m = candidates.len();
    let mut sym = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let forth = shortest_journey(g, candidates[i], candidates[j])?
                .is_some_and(|len| len <= journey_len);
            let back = forth
                && shortest_journey(g, candidates[j], candidates[i])?
                    .is_some_and(|len| len <= journey_len);
            sym[i][j] = forth && back;
            sym[j][i] = sym[i][j];
        }
    }

    let mut order: Vec<usize> = (0..m).collect();
    let degree: Vec<usize> =
        (0..m).map(|i| sym[i].iter().filter(|&&x| x).count()).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(candidates[a].cmp(&candidates[b])));

    fn grow(
        order: &[usize],
        sym: &[Vec<bool>],
        pos: usize,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + (order.len() - pos) <= best.len() {
            return;
        }
        if pos == order.len() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let cand = order[pos];
        if current.iter().all(|&c| sym[c][cand]) {
            current.push(cand);
            grow(order, sym, pos + 1, current, best);
            current.pop();
        }
        grow(order, sym, pos + 1, current, best);
    }
    let mut best = Vec::new();
    grow(&order, &sym, 0, &mut Vec::new(), &mut best);

    if best.len() < k {
        return Ok(None);
    }
    let mut witness: Vec<usize> = best.into_iter().map(|i| candidates[i]).collect();
    witness.sort_unstable();
    Ok(Some(witness))
}

/// Outcome of the message return path check for one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmrpReport {
    pub ok: bool,
    /// Each out-neighbor with its shortest return-journey length
    /// (`None` = no return journey at all).
    pub returns: BTreeMap<usize, Option<usize>>,
}

/// Whether every out-neighbor of `v` (an arc from `v` live at some time) has
/// a return journey of at most `k` edges back to `v`.
pub fn smrp(g: &DynamicGraph, v: usize, k: usize) -> Result<SmrpReport, SolveError> {
    if !g.directed {
        return Err(SolveError::NeedsDirected);
    }
    check_vertex(g, v)?;
    let mut returns = BTreeMap::new();
    let mut ok = true;
    for (&(a, b), live) in &g.edge_life {
        if a != v || live.is_empty() {
            continue;
        }
        let len = shortest_journey(g, b, v)?;
        ok &= len.is_some_and(|l| l <= k);
        returns.insert(b, len);
    }
    Ok(SmrpReport { ok, returns })
}

/// Proper `k`-coloring of one static snapshot, keyed by original vertex ids.
/// Backtracking in increasing vertex order; a vertex may only open one color
/// beyond those already in use, so the first vertex always gets color 1 and
/// the witness is deterministic.
fn color_snapshot(s: &Snapshot, k: usize) -> Option<BTreeMap<usize, usize>> {
    let n = s.graph.n;
    let adj = s.graph.undirected_adjacency();
    fn go(
        v: usize,
        n: usize,
        k: usize,
        adj: &[Vec<usize>],
        colors: &mut [usize],
        used: usize,
    ) -> bool {
        if v > n {
            return true;
        }
        for c in 1..=k.min(used + 1) {
            if adj[v - 1].iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(v + 1, n, k, adj, colors, used.max(c)) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    let mut colors = vec![0usize; n + 1];
    if go(1, n, k, &adj, &mut colors, 0) {
        Some((1..=n).map(|v| (s.original(v), colors[v])).collect())
    } else {
        None
    }
}

/// A static assignment of `k` colors to the ever-alive vertices that is
/// proper at every time — equivalently, a proper coloring of the union
/// graph. `None` if no such assignment exists.
pub fn permanent_coloring(
    g: &DynamicGraph,
    k: usize,
) -> Result<Option<BTreeMap<usize, usize>>, SolveError> {
    if g.directed {
        return Err(SolveError::NeedsUndirected);
    }
    assert!(k >= 1, "colorings need at least one color");
    Ok(color_snapshot(&g.union_graph(), k))
}

/// A (possibly different) proper `k`-coloring of each snapshot, keyed by
/// time; `None` if some snapshot is not `k`-colorable.
pub fn evolving_coloring(
    g: &DynamicGraph,
    k: usize,
) -> Result<Option<BTreeMap<u32, BTreeMap<usize, usize>>>, SolveError> {
    if g.directed {
        return Err(SolveError::NeedsUndirected);
    }
    assert!(k >= 1, "colorings need at least one color");
    let mut per_time = BTreeMap::new();
    for &t in &g.time.times {
        match color_snapshot(&g.snapshot(t), k) {
            Some(c) => {
                per_time.insert(t, c);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(per_time))
}
