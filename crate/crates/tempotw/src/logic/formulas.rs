//! Generators for the formula families used by the temporal-graph problems:
//! journeys, the linear-time depth/order machinery, small connected dynamic
//! components, message return paths, and the two coloring sentences.
//!
//! Journey, SCDC, and SMRP formulas speak the `LtwPreserving` vocabulary
//! (`V`, `E`, `LE@t`, and for linear time `T`, `R`, `s`); the coloring
//! sentences speak the `TwPreserving` vocabulary (`V`, `T`, `Xi`). Per-time
//! relation names bake the concrete time domain into each formula, so every
//! generator takes the domain it is meant for.

use super::Formula;
use crate::structures::TimeEncoding;
use crate::temporal::TimeDomain;

fn atom(relation: impl Into<String>, args: &[&str]) -> Formula {
    Formula::Atom {
        relation: relation.into(),
        args: args.iter().map(|a| a.to_string()).collect(),
    }
}

fn exists(v: &str, body: Formula) -> Formula {
    Formula::Exists(v.to_string(), Box::new(body))
}

fn forall(v: &str, body: Formula) -> Formula {
    Formula::Forall(v.to_string(), Box::new(body))
}

fn exists_set(v: &str, body: Formula) -> Formula {
    Formula::ExistsSet(v.to_string(), Box::new(body))
}

fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

fn same_v(a: &str, b: &str) -> Formula {
    Formula::SameV(a.to_string(), b.to_string())
}

fn member(set: &str, element: &str) -> Formula {
    Formula::Member { set: set.to_string(), element: element.to_string() }
}

/// Conjunction that drops the wrapper around a single conjunct.
fn conj(mut fs: Vec<Formula>) -> Formula {
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Formula::And(fs)
    }
}

/// Disjunction that drops the wrapper around a single disjunct.
fn disj(mut fs: Vec<Formula>) -> Formula {
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Formula::Or(fs)
    }
}

/// All length-`len` sequences of times that are non-decreasing under the
/// time order, enumerated with positions cycling in ascending value order.
fn nondecreasing_sequences(time: &TimeDomain, len: usize) -> Vec<Vec<u32>> {
    fn rec(time: &TimeDomain, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for &t in &time.times {
            if let Some(&last) = cur.last() {
                if !time.before_eq(last, t) {
                    continue;
                }
            }
            cur.push(t);
            rec(time, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(time, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// One journey disjunct of exactly `seq.len()` edges, edge `i` used at the
/// fixed time `seq[i-1]`. Each edge is a same-time copy pair `(a_i, b_i)`
/// linked to its neighbors through `sameV`, so the walk may re-enter a
/// vertex at a later time.
fn clique_chain(u: &str, v: &str, seq: &[u32]) -> Formula {
    let len = seq.len();
    let mut f = same_v(v, &format!("b{len}"));
    for i in (1..=len).rev() {
        let ai = format!("a{i}");
        let bi = format!("b{i}");
        let hop = conj(vec![
            atom("V", &[&bi]),
            atom("E", &[&ai, &bi]),
            atom(format!("LE@{}", seq[i - 1]), &[&ai, &bi]),
            f,
        ]);
        let link = if i == 1 { same_v(u, &ai) } else { same_v(&format!("b{}", i - 1), &ai) };
        f = exists(&ai, conj(vec![atom("V", &[&ai]), link, exists(&bi, hop)]));
    }
    f
}

/// One journey disjunct of exactly `len` edges with quantified edge times
/// `t1..tlen`, chained through `leq`; `order` is the time domain sorted by
/// the (total) time order, so the `j`-th depth level names relation
/// `LE@order[j-1]`.
fn linear_chain(u: &str, v: &str, len: usize, order: &[u32]) -> Formula {
    let m = order.len();
    let mut f = same_v(v, &format!("b{len}"));
    for i in (1..=len).rev() {
        let ai = format!("a{i}");
        let bi = format!("b{i}");
        let ti = format!("t{i}");
        let live = disj(
            (1..=m)
                .map(|j| {
                    conj(vec![
                        depth_at(&ti, j),
                        atom(format!("LE@{}", order[j - 1]), &[&ai, &bi]),
                    ])
                })
                .collect(),
        );
        let hop = conj(vec![atom("V", &[&bi]), atom("E", &[&ai, &bi]), live, f]);
        let link = if i == 1 { same_v(u, &ai) } else { same_v(&format!("b{}", i - 1), &ai) };
        let walker = exists(&ai, conj(vec![atom("V", &[&ai]), link, exists(&bi, hop)]));
        let mut guards = vec![atom("T", &[&ti])];
        if i > 1 {
            guards.push(leq_between(&format!("t{}", i - 1), &ti, m));
        }
        guards.push(walker);
        f = exists(&ti, conj(guards));
    }
    f
}

/// 𝒥_n with chosen endpoint variables. See [`journey_formula`].
pub(crate) fn journey_with(
    u: &str,
    v: &str,
    n: usize,
    encoding: TimeEncoding,
    time: &TimeDomain,
) -> Formula {
    let mut lengths = vec![same_v(u, v)];
    match encoding {
        TimeEncoding::CliqueTime => {
            for len in 1..=n {
                for seq in nondecreasing_sequences(time, len) {
                    lengths.push(clique_chain(u, v, &seq));
                }
            }
        }
        TimeEncoding::LinearTime => {
            let order = time
                .sorted()
                .expect("linear-time journey formulas need a totally ordered time domain");
            for len in 1..=n {
                lengths.push(linear_chain(u, v, len, &order));
            }
        }
    }
    disj(lengths)
}

/// 𝒥_n(u, v): some journey of at most `n` edges leads from the vertex under
/// copy `u` to the vertex under copy `v` — edges used at non-decreasing
/// times, `n = 0` degenerating to `sameV`. Free variables `u` and `v`; truth
/// depends only on the origins of the copies they denote. Evaluate against
/// an `LtwPreserving` structure of the same time domain and encoding.
pub fn journey_formula(n: usize, encoding: TimeEncoding, time: &TimeDomain) -> Formula {
    journey_with("u", "v", n, encoding, time)
}

/// d_level with a chosen term for the time element. See [`depth_formula`].
pub(crate) fn depth_at(t: &str, level: usize) -> Formula {
    assert!(level >= 1, "depth levels start at 1");
    if level == 1 {
        return atom("R", &["s", t]);
    }
    let p = format!("p{}", level - 1);
    exists(&p, conj(vec![atom("T", &[&p]), atom("R", &[&p, t]), depth_at(&p, level - 1)]))
}

/// d_level(t): the time element `t` is the `level`-th element of the total
/// time order — distance `level` from the start marker along the successor
/// relation. Free variable `t`; linear-time structures only (evaluating the
/// `s` constant elsewhere reports the missing start marker).
pub fn depth_formula(level: usize) -> Formula {
    depth_at("t", level)
}

/// leq with chosen terms. See [`leq_formula`].
pub(crate) fn leq_between(x: &str, y: &str, m: usize) -> Formula {
    let mut cases = vec![Formula::Equals(x.to_string(), y.to_string())];
    for level in 1..m {
        let y_at_or_above = disj((1..=level).map(|j| depth_at(y, j)).collect());
        cases.push(conj(vec![depth_at(x, level), not(y_at_or_above)]));
    }
    disj(cases)
}

/// leq(x, y) over a linear-time structure with `m` time elements: `x = y`,
/// or `x` sits at some depth `level < m` while `y` does not sit at any depth
/// up to `level`. Free variables `x` and `y`; the formula grows with `m`.
pub fn leq_formula(m: usize) -> Formula {
    leq_between("x", "y", m)
}

/// Sentence for the size-`k` connected dynamic component problem: there are
/// `k` copies of pairwise-distinct vertices such that for every ordered pair
/// and all copies `x`, `y` of the two vertices, 𝒥_journey_len(x, y) holds.
pub fn scdc_sentence(
    k: usize,
    journey_len: usize,
    encoding: TimeEncoding,
    time: &TimeDomain,
) -> Formula {
    assert!(k >= 1, "component size must be at least 1");
    let mut pairs = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                continue;
            }
            let reach = forall(
                "y",
                implies(
                    conj(vec![atom("V", &["y"]), same_v("y", &format!("v{j}"))]),
                    journey_with("x", "y", journey_len, encoding, time),
                ),
            );
            pairs.push(forall(
                "x",
                implies(
                    conj(vec![atom("V", &["x"]), same_v("x", &format!("v{i}"))]),
                    reach,
                ),
            ));
        }
    }

    let mut f = None;
    for i in (1..=k).rev() {
        let vi = format!("v{i}");
        let mut conjs = vec![atom("V", &[&vi])];
        for j in 1..i {
            conjs.push(not(same_v(&format!("v{j}"), &vi)));
        }
        if i == k {
            conjs.append(&mut pairs);
        }
        if let Some(inner) = f.take() {
            conjs.push(inner);
        }
        f = Some(exists(&vi, conj(conjs)));
    }
    f.unwrap()
}

/// Formula for the message return path problem with one free variable `v`:
/// every copy `u` with an arc from `v` admits a copy `w` of the same vertex
/// with a journey of at most `k` edges back to `v`'s vertex.
pub fn smrp_sentence(k: usize, encoding: TimeEncoding, time: &TimeDomain) -> Formula {
    forall(
        "u",
        implies(
            conj(vec![atom("V", &["u"]), atom("E", &["v", "u"])]),
            exists(
                "w",
                conj(vec![
                    atom("V", &["w"]),
                    same_v("w", "u"),
                    journey_with("w", "v", k, encoding, time),
                ]),
            ),
        ),
    )
}

fn set_name(i: usize) -> String {
    format!("V{i}")
}

/// Every vertex copy lies in exactly one of the `k` color classes. Sets may
/// contain stray non-copy elements; only copy membership is constrained.
fn partitioned(k: usize) -> Formula {
    let mut conjs = vec![disj((1..=k).map(|i| member(&set_name(i), "x")).collect())];
    for i in 1..=k {
        for j in i + 1..=k {
            conjs.push(not(conj(vec![member(&set_name(i), "x"), member(&set_name(j), "x")])));
        }
    }
    forall("x", implies(atom("V", &["x"]), conj(conjs)))
}

/// No color class contains both endpoint copies of an edge live at the time
/// denoted by `t` (a variable or a bound time element).
fn proper_at(k: usize, t: &str) -> Formula {
    forall(
        "x",
        forall(
            "y",
            implies(
                atom("Xi", &["x", "y", t]),
                conj(
                    (1..=k)
                        .map(|i| not(conj(vec![member(&set_name(i), "x"), member(&set_name(i), "y")])))
                        .collect(),
                ),
            ),
        ),
    )
}

/// Sentence for permanent `k`-coloring over a `TwPreserving` structure: one
/// static family of color classes proper at every time. With `consistency`
/// set (the default reading), copies of one vertex must share a class, which
/// makes the coloring an assignment to the vertices themselves; without it,
/// each copy is colored independently.
pub fn permanent_coloring_sentence(k: usize, consistency: bool) -> Formula {
    assert!(k >= 1, "colorings need at least one color");
    let mut body = vec![partitioned(k)];
    if consistency {
        body.push(forall(
            "x",
            forall(
                "y",
                implies(
                    conj(vec![atom("V", &["x"]), atom("V", &["y"]), same_v("x", "y")]),
                    conj(
                        (1..=k)
                            .map(|i| implies(member(&set_name(i), "x"), member(&set_name(i), "y")))
                            .collect(),
                    ),
                ),
            ),
        ));
    }
    body.push(forall("t", proper_at(k, "t")));
    let mut f = conj(body);
    for i in (1..=k).rev() {
        f = exists_set(&set_name(i), f);
    }
    f
}

/// Sentence for evolving `k`-coloring over a `TwPreserving` structure: for
/// each time there is a (possibly different) family of color classes proper
/// at that time — the quantifier order swapped against the permanent case.
pub fn evolving_coloring_sentence(k: usize) -> Formula {
    assert!(k >= 1, "colorings need at least one color");
    let mut f = conj(vec![partitioned(k), proper_at(k, "t")]);
    for i in (1..=k).rev() {
        f = exists_set(&set_name(i), f);
    }
    forall("t", implies(atom("T", &["t"]), f))
}
