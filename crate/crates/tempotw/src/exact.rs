//! Exact treewidth via dynamic programming over vertex subsets, the
//! min-fill elimination heuristic, and local treewidth.
//!
//! All of these treat their input as an undirected simple graph (arcs are
//! flattened). Exact computation splits the graph into connected
//! components, peels simplicial vertices (whose elimination never adds
//! fill), and runs the `O(2^n poly n)` elimination-ordering DP on each
//! remaining kernel. The size limit applies to each kernel, so large
//! graphs whose components or kernels are small are still exact-solvable.

use crate::decomposition::TreeDecomposition;
use crate::temporal::StaticGraph;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// Default bound on kernel size for exact computation.
pub const DEFAULT_EXACT_LIMIT: usize = 18;

/// Hard cap: the subset DP table is `2^limit` entries.
const MAX_LIMIT: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwError {
    /// A connected component, after simplicial peeling, still has more
    /// vertices than the configured exact limit.
    ComponentTooLarge { size: usize, limit: usize },
    /// An `r`-ball around `v` exceeds the configured exact limit.
    BallTooLarge { v: usize, size: usize, limit: usize },
    LimitTooLarge { limit: usize },
}

impl fmt::Display for TwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwError::ComponentTooLarge { size, limit } => write!(
                f,
                "component kernel has {size} vertices, above the exact limit {limit}"
            ),
            TwError::BallTooLarge { v, size, limit } => write!(
                f,
                "ball around vertex {v} has {size} vertices, above the exact limit {limit}"
            ),
            TwError::LimitTooLarge { limit } => {
                write!(f, "exact limit {limit} above the supported maximum {MAX_LIMIT}")
            }
        }
    }
}

impl std::error::Error for TwError {}

/// Exact treewidth with the default limit. Returns the width and a witness
/// decomposition of that width.
pub fn exact_treewidth(g: &StaticGraph) -> Result<(i32, TreeDecomposition), TwError> {
    exact_treewidth_with_limit(g, DEFAULT_EXACT_LIMIT)
}

/// Exact treewidth; each post-peeling component kernel must have at most
/// `limit` vertices.
pub fn exact_treewidth_with_limit(
    g: &StaticGraph,
    limit: usize,
) -> Result<(i32, TreeDecomposition), TwError> {
    if limit > MAX_LIMIT {
        return Err(TwError::LimitTooLarge { limit });
    }
    let order = exact_elimination_order(g, limit)?;
    let d = decomposition_from_order(g, &order);
    Ok((d.width(), d))
}

/// The min-fill heuristic: repeatedly eliminate a vertex with the fewest
/// missing edges among its neighbors (ties to the lowest id). Returns the
/// achieved width (an upper bound on treewidth) and the decomposition.
pub fn minfill_decomposition(g: &StaticGraph) -> (i32, TreeDecomposition) {
    let mut adj = adjacency_sets(g);
    let mut remaining: BTreeSet<usize> = (1..=g.n).collect();
    let mut order = Vec::with_capacity(g.n);
    while !remaining.is_empty() {
        let mut pick = (usize::MAX, 0usize);
        for &v in &remaining {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !adj[a].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if fill < pick.0 {
                pick = (fill, v);
            }
        }
        let v = pick.1;
        eliminate(&mut adj, v);
        remaining.remove(&v);
        order.push(v);
    }
    let d = decomposition_from_order(g, &order);
    (d.width(), d)
}

/// Local treewidth: the maximum exact treewidth over the subgraphs induced
/// by closed `r`-balls. `-1` for the empty graph.
pub fn local_treewidth(g: &StaticGraph, r: usize) -> Result<i32, TwError> {
    local_treewidth_with_limit(g, r, DEFAULT_EXACT_LIMIT)
}

pub fn local_treewidth_with_limit(
    g: &StaticGraph,
    r: usize,
    limit: usize,
) -> Result<i32, TwError> {
    let adj = g.undirected_adjacency();
    let mut best = -1i32;
    for v in 1..=g.n {
        let ball = ball_around(&adj, v, r);
        if ball.len() > limit {
            return Err(TwError::BallTooLarge { v, size: ball.len(), limit });
        }
        let sub = induced(g, &ball);
        let (w, _) = exact_treewidth_with_limit(&sub, limit)?;
        best = best.max(w);
    }
    Ok(best)
}

/// Vertices at distance at most `r` from `v`, ascending.
pub fn ball_around(adj: &[Vec<usize>], v: usize, r: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len() + 1];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut ball = vec![v];
    while let Some(x) = queue.pop_front() {
        if dist[x] == r {
            continue;
        }
        for &y in &adj[x - 1] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                ball.push(y);
                queue.push_back(y);
            }
        }
    }
    ball.sort_unstable();
    ball
}

/// The subgraph induced by `verts` (ascending ids), compacted to `1..=k`.
pub fn induced(g: &StaticGraph, verts: &[usize]) -> StaticGraph {
    let mut compact = vec![0usize; g.n + 1];
    for (i, &v) in verts.iter().enumerate() {
        compact[v] = i + 1;
    }
    let mut sub = StaticGraph::new(verts.len(), false);
    for &(u, v) in &g.edges {
        if compact[u] != 0 && compact[v] != 0 {
            sub.add_edge(compact[u], compact[v]);
        }
    }
    sub
}

fn adjacency_sets(g: &StaticGraph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.n + 1];
    for &(u, v) in &g.edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

/// Remove `v` from the graph, turning its neighborhood into a clique.
fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    for &u in &nbrs {
        adj[u].remove(&v);
    }
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj[v].clear();
}

/// An optimal elimination order: simplicial peeling plus the subset DP on
/// each kernel component.
fn exact_elimination_order(g: &StaticGraph, limit: usize) -> Result<Vec<usize>, TwError> {
    let mut adj = adjacency_sets(g);
    let mut alive: BTreeSet<usize> = (1..=g.n).collect();
    let mut order = Vec::with_capacity(g.n);

    // Peel simplicial vertices (lowest id first). Eliminating a simplicial
    // vertex adds no fill, and tw(G) = max(deg(v), tw(G - v)) for such v.
    loop {
        let mut found = None;
        'scan: for &v in &alive {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !adj[a].contains(&b) {
                        continue 'scan;
                    }
                }
            }
            found = Some(v);
            break;
        }
        match found {
            Some(v) => {
                eliminate(&mut adj, v);
                alive.remove(&v);
                order.push(v);
            }
            None => break,
        }
    }

    // Split the kernel into components and DP each.
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in &alive {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        if comp.len() > limit {
            return Err(TwError::ComponentTooLarge { size: comp.len(), limit });
        }
        order.extend(subset_dp_order(&comp, &adj));
    }
    Ok(order)
}

/// Held-Karp style DP over subsets of one component: `best[S]` is the
/// minimum over elimination orders of `S` (as a prefix) of the maximum
/// back-degree, where an eliminated vertex's back-degree counts the
/// vertices outside the prefix reachable through it.
fn subset_dp_order(comp: &[usize], adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let k = comp.len();
    if k == 0 {
        return Vec::new();
    }
    let index = |v: usize| comp.binary_search(&v).unwrap();
    let mut bits: Vec<u32> = vec![0; k];
    for (i, &v) in comp.iter().enumerate() {
        for &u in &adj[v] {
            bits[i] |= 1 << index(u);
        }
    }
    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut best = vec![0i8; 1usize << k];
    best[0] = -1;
    for s in 1..=full {
        let mut b = i8::MAX;
        let mut f = s;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let prev = s & !(1 << v);
            let cand = best[prev as usize].max(back_degree(&bits, prev, v));
            if cand < b {
                b = cand;
            }
        }
        best[s as usize] = b;
    }

    // Recover one optimal order back to front, lowest vertex on ties.
    let mut rev = Vec::with_capacity(k);
    let mut s = full;
    while s != 0 {
        let mut f = s;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let prev = s & !(1 << v);
            if best[prev as usize].max(back_degree(&bits, prev, v)) == best[s as usize] {
                rev.push(comp[v]);
                s = prev;
                break;
            }
        }
    }
    rev.reverse();
    rev
}

/// Number of vertices outside `x ∪ {v}` adjacent to `v` or reachable from
/// it through vertices of `x`.
fn back_degree(bits: &[u32], x: u32, v: usize) -> i8 {
    let mut visited = bits[v];
    let mut frontier = bits[v] & x;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= bits[i];
        }
        let new = next & !visited;
        visited |= next;
        frontier = new & x;
    }
    ((visited & !x) & !(1u32 << v)).count_ones() as i8
}

/// Build a tree decomposition from an elimination order: the bag of `v` is
/// `v` plus its neighborhood in the fill graph when eliminated; each bag is
/// attached to the bag of the earliest-eliminated later vertex it contains.
/// Roots of separate components are chained together.
pub fn decomposition_from_order(g: &StaticGraph, order: &[usize]) -> TreeDecomposition {
    if g.n == 0 {
        return TreeDecomposition::empty();
    }
    assert_eq!(order.len(), g.n, "elimination order must cover all vertices");
    let mut pos = vec![0usize; g.n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = adjacency_sets(g);
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(g.n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let mut bag: BTreeSet<usize> = adj[v].iter().copied().collect();
        bag.insert(v);
        match bag.iter().filter(|&&u| u != v).map(|&u| pos[u]).min() {
            Some(parent) => edges.push((i, parent)),
            None => roots.push(i),
        }
        bags.push(bag);
        eliminate(&mut adj, v);
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    TreeDecomposition::new(bags, edges)
}
