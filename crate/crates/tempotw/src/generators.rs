//! Random dynamic-graph generation: the edge-Markovian evolution model,
//! per-snapshot partial k-trees with certified decompositions, and
//! bounded-degree snapshots — plus per-snapshot degree statistics.
//!
//! All generators draw from `ChaCha8` keyed by the caller's seed, with one
//! RNG stream per (time, edge) for the Markov model and one stream per
//! snapshot for the others. Streams make the output independent of sampling
//! order, so identical parameters and seed reproduce the graph bit for bit.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::TreeDecomposition;
use crate::temporal::{DynamicGraph, TimeDomain};

/// How the first snapshot of the Markov chain is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarkovInit {
    /// Start from the edgeless graph.
    Empty,
    /// Each edge present independently with the given probability.
    Density(f64),
}

/// Parameters of the edge-Markovian model: a non-edge becomes an edge with
/// probability `p = c1/n`, an edge survives with probability `1−q = c2/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovParams {
    pub n: usize,
    pub tmax: u32,
    pub c1: f64,
    pub c2: f64,
    pub seed: u64,
    pub init: MarkovInit,
}

/// A generator parameter outside its allowed range.
#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    Rate { name: &'static str, value: f64, limit: f64 },
    CliqueTooLarge { k: usize, n: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Rate { name, value, limit } => {
                write!(f, "parameter {name} = {value} is outside [0, {limit}]")
            }
            GenError::CliqueTooLarge { k, n } => {
                write!(f, "k-tree parameter k = {k} must be smaller than n = {n}")
            }
        }
    }
}

impl std::error::Error for GenError {}

fn check_rate(name: &'static str, value: f64, limit: f64) -> Result<(), GenError> {
    if !(0.0..=limit).contains(&value) {
        return Err(GenError::Rate { name, value, limit });
    }
    Ok(())
}

/// The RNG stream for one (time, vertex pair) of the Markov chain. Pairs are
/// ranked lexicographically (`u < v`), times from zero, so stream ids never
/// collide; sampling order therefore cannot change the output.
fn pair_stream(seed: u64, n: usize, t: u32, u: usize, v: usize) -> ChaCha8Rng {
    let pair = ((u - 1) * n + (v - 1)) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((t as u64 - 1) * (n * n) as u64 + pair);
    rng
}

/// Snapshots `G_1..G_tmax` of the edge-Markovian process on a fixed,
/// always-alive vertex set: `G_1` per `init`, and from each snapshot to the
/// next an absent edge appears with probability `c1/n` while a present edge
/// survives with probability `c2/n`.
pub fn gen_edge_markovian(params: &MarkovParams) -> Result<DynamicGraph, GenError> {
    let n = params.n;
    check_rate("c1", params.c1, n as f64)?;
    check_rate("c2", params.c2, n as f64)?;
    if let MarkovInit::Density(rho) = params.init {
        check_rate("density", rho, 1.0)?;
    }

    let mut g = DynamicGraph::new(n, false, TimeDomain::natural(1..=params.tmax));
    for v in 1..=n {
        g.set_alive(v, 1..=params.tmax);
    }
    let birth = if n > 0 { params.c1 / n as f64 } else { 0.0 };
    let survive = if n > 0 { params.c2 / n as f64 } else { 0.0 };

    let mut present: Vec<(usize, usize)> = Vec::new();
    for t in 1..=params.tmax {
        let mut next = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                let was = present.binary_search(&(u, v)).is_ok();
                let prob = match (t, params.init) {
                    (1, MarkovInit::Empty) => 0.0,
                    (1, MarkovInit::Density(rho)) => rho,
                    _ if was => survive,
                    _ => birth,
                };
                if prob > 0.0 && pair_stream(params.seed, n, t, u, v).gen_bool(prob) {
                    next.push((u, v));
                    g.add_edge(u, v, [t]);
                }
            }
        }
        present = next;
    }
    Ok(g)
}

/// One-step degree recurrence of the model: a vertex of degree `d` expects
/// `(1−q)·d + p·(n−1−d)` neighbors in the next snapshot.
pub fn expected_next_degree(d: usize, n: usize, p: f64, q: f64) -> f64 {
    assert!(n >= 1 && d <= n - 1, "degree {d} out of range for n = {n}");
    (1.0 - q) * d as f64 + p * (n - 1 - d) as f64
}

/// One RNG per snapshot for the per-snapshot generators.
fn snapshot_stream(seed: u64, t: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    rng
}

/// Dynamic graph whose snapshots are independent random partial k-trees,
/// together with the construction-order tree decomposition of each snapshot
/// — width exactly `k`, so `tw(G_t) ≤ k` is certified. Vertices are always
/// alive; bags speak original vertex ids. Each snapshot builds a random
/// k-tree (random root clique, then each vertex joins a random k-clique)
/// and then deletes a quarter of the edges at random, which cannot hurt the
/// witness.
pub fn gen_snapshot_ktree(
    n: usize,
    tmax: u32,
    k: usize,
    seed: u64,
) -> Result<(DynamicGraph, BTreeMap<u32, TreeDecomposition>), GenError> {
    if k >= n {
        return Err(GenError::CliqueTooLarge { k, n });
    }
    let mut g = DynamicGraph::new(n, false, TimeDomain::natural(1..=tmax));
    for v in 1..=n {
        g.set_alive(v, 1..=tmax);
    }
    let mut witnesses = BTreeMap::new();
    for t in 1..=tmax {
        let mut rng = snapshot_stream(seed, t);
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);

        let root: Vec<usize> = order[..=k].to_vec();
        let mut decomposition = TreeDecomposition {
            bags: vec![root.iter().copied().collect()],
            edges: Default::default(),
        };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in root.iter().enumerate() {
            for &b in &root[i + 1..] {
                edges.push((a, b));
            }
        }
        // Every k-clique of the k-tree built so far, with a bag containing it.
        let mut cliques: Vec<(Vec<usize>, usize)> = Vec::new();
        if k > 0 {
            for skip in 0..root.len() {
                let c: Vec<usize> =
                    root.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                cliques.push((c, 0));
            }
        } else {
            cliques.push((Vec::new(), 0));
        }
        for &v in &order[k + 1..] {
            let (clique, host) = cliques[rng.gen_range(0..cliques.len())].clone();
            let bag_idx = decomposition.bags.len();
            let mut bag: std::collections::BTreeSet<usize> = clique.iter().copied().collect();
            bag.insert(v);
            decomposition.bags.push(bag);
            decomposition.edges.insert((host.min(bag_idx), host.max(bag_idx)));
            for &w in &clique {
                edges.push((v, w));
                let mut fresh: Vec<usize> =
                    clique.iter().copied().filter(|&x| x != w).collect();
                fresh.push(v);
                fresh.sort_unstable();
                cliques.push((fresh, bag_idx));
            }
            if k == 0 {
                cliques.push((Vec::new(), bag_idx));
            }
        }

        for (u, v) in edges {
            if rng.gen_bool(0.25) {
                continue;
            }
            g.add_edge(u, v, [t]);
        }
        witnesses.insert(t, decomposition);
    }
    Ok((g, witnesses))
}

/// Dynamic graph whose snapshots have maximum degree at most `d`: each
/// snapshot walks the vertex pairs in a random order and inserts an edge
/// with probability 1/2 whenever both endpoints still have spare degree.
/// Vertices are always alive.
pub fn gen_bounded_degree(n: usize, tmax: u32, d: usize, seed: u64) -> DynamicGraph {
    let mut g = DynamicGraph::new(n, false, TimeDomain::natural(1..=tmax));
    for v in 1..=n {
        g.set_alive(v, 1..=tmax);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            pairs.push((u, v));
        }
    }
    for t in 1..=tmax {
        let mut rng = snapshot_stream(seed, t);
        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rng);
        let mut degree = vec![0usize; n + 1];
        for (u, v) in shuffled {
            if degree[u] < d && degree[v] < d && rng.gen_bool(0.5) {
                degree[u] += 1;
                degree[v] += 1;
                g.add_edge(u, v, [t]);
            }
        }
    }
    g
}

/// Exact per-snapshot degree statistics (degrees in the underlying
/// undirected sense, over the vertices alive at each time).
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRow {
    pub t: u32,
    pub mean: f64,
    pub max: usize,
}

pub fn degree_stats(g: &DynamicGraph) -> Vec<DegreeRow> {
    let mut rows = Vec::new();
    for &t in &g.time.times {
        let snap = g.snapshot(t);
        let degrees: Vec<usize> =
            snap.graph.undirected_adjacency().iter().map(|a| a.len()).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mean = if degrees.is_empty() {
            0.0
        } else {
            degrees.iter().sum::<usize>() as f64 / degrees.len() as f64
        };
        rows.push(DegreeRow { t, mean, max });
    }
    rows
}

/// The statistics as a `t,mean_degree,max_degree` table.
pub fn degree_stats_csv(g: &DynamicGraph) -> String {
    let mut out = String::from("t,mean_degree,max_degree\n");
    for row in degree_stats(g) {
        out.push_str(&format!("{},{:.6},{}\n", row.t, row.mean, row.max));
    }
    out
}
