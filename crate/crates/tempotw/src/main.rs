//! Command-line front end: reproducible pipelines over dynamic graphs,
//! relational translations, tree decompositions, and FO/MSO model checking.
//!
//! Exit codes: 0 = success / answer "yes"; 1 = answer "no", invalid
//! decomposition, or a violated bound (with a report); 2 = usage or format
//! error. Every randomized subcommand takes an explicit `--seed`, and
//! identical inputs, flags, and seed produce byte-identical outputs.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tempotw::construct::{build_clique_time_decomposition, build_linear_time_decomposition};
use tempotw::decomposition::{check_decomposition, TreeDecomposition};
use tempotw::exact::{
    exact_treewidth_with_limit, local_treewidth_with_limit, minfill_decomposition,
    DEFAULT_EXACT_LIMIT,
};
use tempotw::generators::{
    degree_stats_csv, gen_bounded_degree, gen_edge_markovian, gen_snapshot_ktree, MarkovInit,
    MarkovParams,
};
use tempotw::logic::{model_check, parse_formula};
use tempotw::pace::{load_gr, load_td, write_gr, write_td};
use tempotw::structures::{translate, TimeEncoding, Variant};
use tempotw::temporal::DynamicGraph;
use tempotw::tgr::{load_tgr, write_tgr, TgrError};

#[derive(Parser)]
#[command(
    name = "tempotw",
    version,
    about = "Dynamic graphs, their relational translations, tree decompositions, \
             and FO/MSO model checking"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Local-treewidth-preserving translation (per-time liveness relations).
    Ltw,
    /// Treewidth-preserving translation (per-vertex copy relations and Xi).
    Tw,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Ltw => Variant::LtwPreserving,
            VariantArg::Tw => Variant::TwPreserving,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TimeArg {
    /// Encode the time order as the full precedence relation.
    Clique,
    /// Encode a total time order as successor steps from a start marker.
    Linear,
}

impl From<TimeArg> for TimeEncoding {
    fn from(t: TimeArg) -> TimeEncoding {
        match t {
            TimeArg::Clique => TimeEncoding::CliqueTime,
            TimeArg::Linear => TimeEncoding::LinearTime,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Lift per-snapshot decompositions through the clique-time translation.
    ConstructClique,
    /// Lift per-snapshot decompositions through the linear-time translation.
    ConstructLinear,
    /// Min-fill elimination heuristic on a static graph.
    Minfill,
    /// Exact treewidth on a static graph (subject to --exact-limit).
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    /// Clique-time construction width ≤ max{k+1, |T|−1} on k-tree snapshots.
    TwBound,
    /// Local treewidth of the translation ≤ max{max_t ltw(G_t,r), |T|−1}
    /// (clique time) and ≤ max{max_t ltw(G_t,r), 1} (linear time).
    LtwBound,
    /// Linear-time construction width ≤ k+1 on k-tree snapshots.
    LinearBound,
    /// Mean snapshot degree of the edge-Markovian model ≤ c1+c2 (plus 4·SE).
    MarkovDegree,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random dynamic graph and write it as .tgr.
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Check a .tgr file's internal consistency.
    Validate { input: PathBuf },
    /// Translate a dynamic graph into a relational structure dump.
    Translate {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        time: TimeArg,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Gaifman graph of a translation as .gr.
    Gaifman {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        time: TimeArg,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a tree decomposition (construct-* read .tgr, the rest read .gr).
    Decompose {
        #[arg(long, value_enum)]
        method: MethodArg,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest component size the exact solver accepts.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
    },
    /// Check a .td decomposition against a .gr graph.
    CheckTd { graph: PathBuf, decomposition: PathBuf },
    /// Exact treewidth of a .gr graph.
    Tw {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
    },
    /// Exact local treewidth (max treewidth over closed r-balls) of a .gr graph.
    Ltw {
        #[arg(long)]
        r: usize,
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
    },
    /// Model-check an FO/MSO sentence against a translated dynamic graph.
    Mc {
        /// Sentence as an s-expression.
        #[arg(long)]
        formula: Option<String>,
        /// File holding the sentence.
        #[arg(long)]
        formula_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ltw")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "clique")]
        time: TimeArg,
        input: PathBuf,
    },
    /// Run a combinatorial solver and print its report.
    Solve {
        #[command(subcommand)]
        problem: SolveCmd,
    },
    /// Generate random instances and assert a theorem's inequality on each.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenModel {
    /// Edge-Markovian evolution: birth probability c1/n, survival c2/n.
    Markov {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmax: u32,
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        seed: u64,
        /// Start from this edge density instead of the empty graph.
        #[arg(long)]
        density: Option<f64>,
        #[command(flatten)]
        io: GenIo,
    },
    /// Independent random partial k-trees per snapshot.
    Ktree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmax: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        io: GenIo,
    },
    /// Random snapshots with maximum degree at most d.
    BoundedDegree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmax: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        io: GenIo,
    },
}

#[derive(clap::Args)]
struct GenIo {
    /// Write the .tgr here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-snapshot degree statistics as CSV.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Find k distinct vertices pairwise connected by journeys of length ≤ len.
    Scdc {
        #[arg(long)]
        k: usize,
        /// Journey length bound (defaults to k).
        #[arg(long)]
        len: Option<usize>,
        input: PathBuf,
    },
    /// Check that every out-neighbor of a vertex can return by a journey of length ≤ k.
    Smrp {
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
    /// One proper k-coloring shared by all snapshots.
    PermColor {
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
    /// A proper k-coloring chosen per snapshot.
    EvolColor {
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        return Ok(buf);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_dynamic(path: &PathBuf) -> Result<DynamicGraph, String> {
    let g = load_tgr(&read_input(path)?).map_err(|e| e.to_string())?;
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(format!("{}: {}", path.display(), violations[0]))
    }
}

/// Min-fill decompositions of every snapshot, with bags relabelled back to
/// original vertex ids — the per-snapshot inputs the constructions expect.
fn snapshot_decompositions(g: &DynamicGraph) -> BTreeMap<u32, TreeDecomposition> {
    let mut out = BTreeMap::new();
    for &t in &g.time.times {
        let snap = g.snapshot(t);
        if snap.graph.n == 0 {
            continue;
        }
        let (_, d) = minfill_decomposition(&snap.graph);
        let bags = d
            .bags
            .iter()
            .map(|bag| bag.iter().map(|&c| snap.original(c)).collect())
            .collect();
        out.insert(t, TreeDecomposition::new(bags, d.edges.iter().copied()));
    }
    out
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.cmd {
        Cmd::Gen { model } => {
            let (g, io) = match model {
                GenModel::Markov { n, tmax, c1, c2, seed, density, io } => {
                    let init = match density {
                        Some(rho) => MarkovInit::Density(rho),
                        None => MarkovInit::Empty,
                    };
                    let params = MarkovParams { n, tmax, c1, c2, seed, init };
                    (gen_edge_markovian(&params).map_err(|e| e.to_string())?, io)
                }
                GenModel::Ktree { n, tmax, k, seed, io } => {
                    let (g, _) = gen_snapshot_ktree(n, tmax, k, seed).map_err(|e| e.to_string())?;
                    (g, io)
                }
                GenModel::BoundedDegree { n, tmax, d, seed, io } => {
                    (gen_bounded_degree(n, tmax, d, seed), io)
                }
            };
            if let Some(stats) = &io.stats {
                emit(&Some(stats.clone()), &degree_stats_csv(&g))?;
            }
            emit(&io.out, &write_tgr(&g))?;
            Ok(true)
        }
        Cmd::Validate { input } => {
            // A syntactically well-formed document describing an
            // inconsistent graph is a finding (exit 1), not a format error.
            let g = match load_tgr(&read_input(&input)?) {
                Ok(g) => g,
                Err(TgrError::Invalid { msgs }) => {
                    for m in &msgs {
                        println!("violation: {m}");
                    }
                    return Ok(false);
                }
                Err(e) => return Err(e.to_string()),
            };
            let violations = g.validate();
            for v in &violations {
                println!("violation: {v}");
            }
            if violations.is_empty() {
                println!(
                    "valid: n={} directed={} times={} edges={}",
                    g.n,
                    g.directed,
                    g.time.times.len(),
                    g.edges.len()
                );
            }
            Ok(violations.is_empty())
        }
        Cmd::Translate { variant, time, input, out } => {
            let g = load_dynamic(&input)?;
            let s = translate(&g, variant.into(), time.into()).map_err(|e| e.to_string())?;
            emit(&out, &s.dump())?;
            Ok(true)
        }
        Cmd::Gaifman { variant, time, input, out } => {
            let g = load_dynamic(&input)?;
            let s = translate(&g, variant.into(), time.into()).map_err(|e| e.to_string())?;
            emit(&out, &write_gr(&s.gaifman()))?;
            Ok(true)
        }
        Cmd::Decompose { method, input, out, exact_limit } => {
            let (d, n) = match method {
                MethodArg::Minfill => {
                    let g = load_gr(&read_input(&input)?).map_err(|e| e.to_string())?;
                    (minfill_decomposition(&g).1, g.n)
                }
                MethodArg::Exact => {
                    let g = load_gr(&read_input(&input)?).map_err(|e| e.to_string())?;
                    let (_, d) =
                        exact_treewidth_with_limit(&g, exact_limit).map_err(|e| e.to_string())?;
                    (d, g.n)
                }
                MethodArg::ConstructClique | MethodArg::ConstructLinear => {
                    let g = load_dynamic(&input)?;
                    let inputs = snapshot_decompositions(&g);
                    let (d, encoding) = match method {
                        MethodArg::ConstructClique => (
                            build_clique_time_decomposition(&g, &inputs),
                            TimeEncoding::CliqueTime,
                        ),
                        _ => (
                            build_linear_time_decomposition(&g, &inputs),
                            TimeEncoding::LinearTime,
                        ),
                    };
                    let d = d.map_err(|e| e.to_string())?;
                    let s = translate(&g, Variant::TwPreserving, encoding)
                        .map_err(|e| e.to_string())?;
                    (d, s.gaifman().n)
                }
            };
            if out.is_some() {
                println!("width {}", d.width());
            }
            emit(&out, &write_td(&d, n))?;
            Ok(true)
        }
        Cmd::CheckTd { graph, decomposition } => {
            let g = load_gr(&read_input(&graph)?).map_err(|e| e.to_string())?;
            let (d, _) = load_td(&read_input(&decomposition)?).map_err(|e| e.to_string())?;
            let violations = check_decomposition(&g, &d);
            for v in &violations {
                println!("violation: {v}");
            }
            if violations.is_empty() {
                println!("valid width {}", d.width());
            }
            Ok(violations.is_empty())
        }
        Cmd::Tw { input, exact_limit } => {
            let g = load_gr(&read_input(&input)?).map_err(|e| e.to_string())?;
            let (tw, _) = exact_treewidth_with_limit(&g, exact_limit).map_err(|e| e.to_string())?;
            println!("tw {tw}");
            Ok(true)
        }
        Cmd::Ltw { r, input, exact_limit } => {
            let g = load_gr(&read_input(&input)?).map_err(|e| e.to_string())?;
            let v = local_treewidth_with_limit(&g, r, exact_limit).map_err(|e| e.to_string())?;
            println!("ltw {v}");
            Ok(true)
        }
        Cmd::Mc { formula, formula_file, variant, time, input } => {
            let text = match (formula, formula_file) {
                (Some(f), None) => f,
                (None, Some(p)) => read_input(&p)?,
                _ => return Err("pass exactly one of --formula and --formula-file".into()),
            };
            let phi = parse_formula(&text).map_err(|e| e.to_string())?;
            let g = load_dynamic(&input)?;
            let s = translate(&g, variant.into(), time.into()).map_err(|e| e.to_string())?;
            let holds = model_check(&s, &phi).map_err(|e| e.to_string())?;
            println!("RESULT {}", if holds { "yes" } else { "no" });
            Ok(holds)
        }
        Cmd::Solve { problem } => solve(problem),
        Cmd::Verify { theorem, trials, seed } => verify(theorem, trials, seed),
    }
}

fn solve(problem: SolveCmd) -> Result<bool, String> {
    match problem {
        SolveCmd::Scdc { k, len, input } => {
            let g = load_dynamic(&input)?;
            let witness =
                tempotw::solvers::scdc(&g, k, len.unwrap_or(k)).map_err(|e| e.to_string())?;
            match witness {
                Some(set) => {
                    println!("RESULT yes");
                    let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                    println!("WITNESS {}", ids.join(" "));
                    Ok(true)
                }
                None => {
                    println!("RESULT no");
                    Ok(false)
                }
            }
        }
        SolveCmd::Smrp { vertex, k, input } => {
            let g = load_dynamic(&input)?;
            let report = tempotw::solvers::smrp(&g, vertex, k).map_err(|e| e.to_string())?;
            println!("RESULT {}", if report.ok { "yes" } else { "no" });
            for (u, len) in &report.returns {
                match len {
                    Some(l) => println!("RETURN {u} {l}"),
                    None => println!("RETURN {u} inf"),
                }
            }
            Ok(report.ok)
        }
        SolveCmd::PermColor { k, input } => {
            let g = load_dynamic(&input)?;
            match tempotw::solvers::permanent_coloring(&g, k).map_err(|e| e.to_string())? {
                Some(coloring) => {
                    println!("RESULT yes");
                    for (v, c) in &coloring {
                        println!("COLOR {v} {c}");
                    }
                    Ok(true)
                }
                None => {
                    println!("RESULT no");
                    Ok(false)
                }
            }
        }
        SolveCmd::EvolColor { k, input } => {
            let g = load_dynamic(&input)?;
            match tempotw::solvers::evolving_coloring(&g, k).map_err(|e| e.to_string())? {
                Some(colorings) => {
                    println!("RESULT yes");
                    for (t, coloring) in &colorings {
                        for (v, c) in coloring {
                            println!("COLOR {t} {v} {c}");
                        }
                    }
                    Ok(true)
                }
                None => {
                    println!("RESULT no");
                    Ok(false)
                }
            }
        }
    }
}

/// Per-trial RNG: one stream per trial index off the master seed, so trial
/// i is reproducible in isolation and the report order is the trial order.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn verify(theorem: TheoremArg, trials: u64, seed: u64) -> Result<bool, String> {
    let mut all_ok = true;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let (line, ok) = match theorem {
            TheoremArg::TwBound | TheoremArg::LinearBound => {
                let k = rng.gen_range(1..=3usize);
                let tmax = rng.gen_range(1..=5u32);
                let n = rng.gen_range(k + 2..=10);
                let (g, witnesses) =
                    gen_snapshot_ktree(n, tmax, k, rng.gen()).map_err(|e| e.to_string())?;
                let (built, encoding, bound) = match theorem {
                    TheoremArg::TwBound => (
                        build_clique_time_decomposition(&g, &witnesses),
                        TimeEncoding::CliqueTime,
                        (k as i32 + 1).max(tmax as i32 - 1),
                    ),
                    _ => (
                        build_linear_time_decomposition(&g, &witnesses),
                        TimeEncoding::LinearTime,
                        k as i32 + 1,
                    ),
                };
                let built = built.map_err(|e| e.to_string())?;
                let s = translate(&g, Variant::TwPreserving, encoding)
                    .map_err(|e| e.to_string())?;
                let valid = check_decomposition(&s.gaifman(), &built).is_empty();
                let width = built.width();
                let ok = valid && width <= bound;
                (
                    format!(
                        "trial {i}: n={n} k={k} T={tmax} width={width} bound={bound} valid={valid}"
                    ),
                    ok,
                )
            }
            TheoremArg::LtwBound => {
                let n = rng.gen_range(4..=8usize);
                let tmax = rng.gen_range(1..=3u32);
                let r = rng.gen_range(1..=2usize);
                let params = MarkovParams {
                    n,
                    tmax,
                    c1: rng.gen_range(1.0..=2.5),
                    c2: 1.0,
                    seed: rng.gen(),
                    init: MarkovInit::Empty,
                };
                let g = gen_edge_markovian(&params).map_err(|e| e.to_string())?;
                let mut per_snapshot = 0i32;
                for &t in &g.time.times {
                    let snap = g.snapshot(t);
                    let v = local_treewidth_with_limit(&snap.graph, r, DEFAULT_EXACT_LIMIT)
                        .map_err(|e| e.to_string())?;
                    per_snapshot = per_snapshot.max(v);
                }
                let mut widths = Vec::new();
                let mut ok = true;
                for (encoding, time_part) in [
                    (TimeEncoding::CliqueTime, tmax as i32 - 1),
                    (TimeEncoding::LinearTime, 1),
                ] {
                    let s = translate(&g, Variant::LtwPreserving, encoding)
                        .map_err(|e| e.to_string())?;
                    let ltw = local_treewidth_with_limit(&s.gaifman(), r, DEFAULT_EXACT_LIMIT)
                        .map_err(|e| e.to_string())?;
                    let bound = per_snapshot.max(time_part);
                    ok &= ltw <= bound;
                    widths.push(format!("ltw={ltw} bound={bound}"));
                }
                (
                    format!("trial {i}: n={n} T={tmax} r={r} clique[{}] linear[{}]",
                        widths[0], widths[1]),
                    ok,
                )
            }
            TheoremArg::MarkovDegree => {
                let combos = [(2.0, 1.0), (1.0, 1.0), (3.0, 2.0)];
                let (c1, c2) = combos[rng.gen_range(0..combos.len())];
                let n = 30usize;
                let params = MarkovParams {
                    n,
                    tmax: 40,
                    c1,
                    c2,
                    seed: rng.gen(),
                    init: MarkovInit::Empty,
                };
                let g = gen_edge_markovian(&params).map_err(|e| e.to_string())?;
                let mut ok = true;
                let mut worst = f64::NEG_INFINITY;
                for &t in &g.time.times {
                    if t < 2 {
                        continue;
                    }
                    let degrees: Vec<f64> = g
                        .snapshot(t)
                        .graph
                        .undirected_adjacency()
                        .iter()
                        .map(|a| a.len() as f64)
                        .collect();
                    let mean = degrees.iter().sum::<f64>() / n as f64;
                    let var =
                        degrees.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64;
                    let bound = c1 + c2 + 4.0 * (var / n as f64).sqrt();
                    ok &= mean <= bound;
                    worst = worst.max(mean - bound);
                }
                (
                    format!("trial {i}: c1={c1} c2={c2} worst_margin={worst:.3}"),
                    ok,
                )
            }
        };
        println!("{line} {}", if ok { "ok" } else { "VIOLATED" });
        all_ok &= ok;
    }
    println!(
        "{}: {trials} trials",
        if all_ok { "verified" } else { "violations found" }
    );
    Ok(all_ok)
}
