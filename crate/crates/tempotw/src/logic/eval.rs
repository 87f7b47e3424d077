//! Brute-force formula evaluation over relational structures.
//!
//! Individual quantifiers range over the whole universe; set quantifiers
//! range over all subsets (universes of at most 63 elements, since subsets
//! are enumerated as bit masks). Evaluation is quantifier-by-quantifier
//! backtracking with short-circuiting and is the correctness oracle for the
//! rest of the crate — deliberately no cleverness.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use super::Formula;
use crate::structures::RelationalStructure;

/// Values for the free variables of a formula. The domains must match the
/// formula's free variables exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub individuals: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, BTreeSet<usize>>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn bind(mut self, var: &str, element: usize) -> Self {
        self.individuals.insert(var.to_string(), element);
        self
    }

    pub fn bind_set(mut self, var: &str, elements: impl IntoIterator<Item = usize>) -> Self {
        self.sets.insert(var.to_string(), elements.into_iter().collect());
        self
    }
}

/// Why evaluation failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnknownRelation(String),
    ArityMismatch { relation: String, expected: usize, got: usize },
    /// Relations of arity above 4 are outside the evaluator's tuple encoding.
    ArityTooLarge { relation: String },
    UnboundVariable(String),
    /// The constant `s` was used on a structure without a start marker.
    NoStartElement,
    /// A set quantifier (or set value) over a universe above 63 elements.
    UniverseTooLargeForSets { size: usize },
    /// The assignment does not cover exactly the formula's free variables.
    AssignmentMismatch { missing: Vec<String>, extra: Vec<String> },
    /// `model_check` was handed a formula with free variables.
    NotASentence { free: Vec<String> },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownRelation(name) => write!(f, "unknown relation {name}"),
            EvalError::ArityMismatch { relation, expected, got } => {
                write!(f, "relation {relation} has arity {expected}, got {got} arguments")
            }
            EvalError::ArityTooLarge { relation } => {
                write!(f, "relation {relation} has arity above 4")
            }
            EvalError::UnboundVariable(v) => write!(f, "unbound variable {v}"),
            EvalError::NoStartElement => {
                write!(f, "constant s needs a linear-time structure with a start marker")
            }
            EvalError::UniverseTooLargeForSets { size } => {
                write!(f, "set quantification needs a universe of at most 63 elements, got {size}")
            }
            EvalError::AssignmentMismatch { missing, extra } => {
                write!(f, "assignment mismatch: missing [{}], extra [{}]", missing.join(", "), extra.join(", "))
            }
            EvalError::NotASentence { free } => {
                write!(f, "formula has free variables: {}", free.join(", "))
            }
        }
    }
}

impl std::error::Error for EvalError {}

struct Ctx<'a> {
    structure: &'a RelationalStructure,
    /// Relation name → (arity, slot-encoded tuples).
    relations: HashMap<&'a str, (usize, HashSet<u64>)>,
    universe: usize,
    start: Option<usize>,
}

fn encode(tuple: &[usize]) -> u64 {
    tuple.iter().fold(0u64, |acc, &e| (acc << 16) | e as u64)
}

impl<'a> Ctx<'a> {
    fn build(s: &'a RelationalStructure) -> Result<Self, EvalError> {
        let mut relations = HashMap::new();
        for (name, rel) in &s.relations {
            if rel.arity > 4 {
                return Err(EvalError::ArityTooLarge { relation: name.clone() });
            }
            let tuples = rel.tuples.iter().map(|t| encode(t)).collect();
            relations.insert(name.as_str(), (rel.arity, tuples));
        }
        Ok(Ctx { structure: s, relations, universe: s.elements.len(), start: s.start_index() })
    }

    /// Check every atom's vocabulary up front, so errors do not depend on
    /// which branches short-circuiting happens to visit.
    fn check_vocabulary(&self, f: &Formula) -> Result<bool, EvalError> {
        let mut has_sets = false;
        let mut stack = vec![f];
        while let Some(f) = stack.pop() {
            match f {
                Formula::ExistsSet(_, b) | Formula::ForallSet(_, b) => {
                    has_sets = true;
                    stack.push(b);
                }
                Formula::Exists(_, b) | Formula::Forall(_, b) | Formula::Not(b) => stack.push(b),
                Formula::And(fs) | Formula::Or(fs) => stack.extend(fs.iter()),
                Formula::Implies(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Formula::Atom { relation, args } => match self.relations.get(relation.as_str()) {
                    None => return Err(EvalError::UnknownRelation(relation.clone())),
                    Some((arity, _)) if *arity != args.len() => {
                        return Err(EvalError::ArityMismatch {
                            relation: relation.clone(),
                            expected: *arity,
                            got: args.len(),
                        });
                    }
                    Some(_) => {}
                },
                Formula::Member { .. } => has_sets = true,
                Formula::Equals(..) | Formula::SameV(..) => {}
            }
        }
        Ok(has_sets)
    }
}

struct Env {
    individuals: Vec<(String, usize)>,
    sets: Vec<(String, u64)>,
}

impl Env {
    fn resolve(&self, ctx: &Ctx<'_>, term: &str) -> Result<usize, EvalError> {
        if let Some((_, e)) = self.individuals.iter().rev().find(|(v, _)| v == term) {
            return Ok(*e);
        }
        if term == "s" {
            return ctx.start.ok_or(EvalError::NoStartElement);
        }
        Err(EvalError::UnboundVariable(term.to_string()))
    }

    fn resolve_set(&self, set: &str) -> Result<u64, EvalError> {
        self.sets
            .iter()
            .rev()
            .find(|(v, _)| v == set)
            .map(|(_, m)| *m)
            .ok_or_else(|| EvalError::UnboundVariable(set.to_string()))
    }
}

fn eval(ctx: &Ctx<'_>, env: &mut Env, f: &Formula) -> Result<bool, EvalError> {
    match f {
        Formula::Exists(v, body) => {
            for e in 0..ctx.universe {
                env.individuals.push((v.clone(), e));
                let hit = eval(ctx, env, body)?;
                env.individuals.pop();
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Forall(v, body) => {
            for e in 0..ctx.universe {
                env.individuals.push((v.clone(), e));
                let hit = eval(ctx, env, body)?;
                env.individuals.pop();
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::ExistsSet(v, body) => {
            for mask in 0..(1u64 << ctx.universe) {
                env.sets.push((v.clone(), mask));
                let hit = eval(ctx, env, body)?;
                env.sets.pop();
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ForallSet(v, body) => {
            for mask in 0..(1u64 << ctx.universe) {
                env.sets.push((v.clone(), mask));
                let hit = eval(ctx, env, body)?;
                env.sets.pop();
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::And(fs) => {
            for sub in fs {
                if !eval(ctx, env, sub)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for sub in fs {
                if eval(ctx, env, sub)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Not(body) => Ok(!eval(ctx, env, body)?),
        Formula::Implies(a, b) => {
            if !eval(ctx, env, a)? {
                return Ok(true);
            }
            eval(ctx, env, b)
        }
        Formula::Atom { relation, args } => {
            let (_, tuples) = &ctx.relations[relation.as_str()];
            let mut code = 0u64;
            for a in args {
                code = (code << 16) | env.resolve(ctx, a)? as u64;
            }
            Ok(tuples.contains(&code))
        }
        Formula::Equals(a, b) => Ok(env.resolve(ctx, a)? == env.resolve(ctx, b)?),
        Formula::SameV(a, b) => {
            let ea = env.resolve(ctx, a)?;
            let eb = env.resolve(ctx, b)?;
            let oa = ctx.structure.origin(ea);
            Ok(oa.is_some() && oa == ctx.structure.origin(eb))
        }
        Formula::Member { set, element } => {
            let mask = env.resolve_set(set)?;
            let e = env.resolve(ctx, element)?;
            Ok(mask >> e & 1 == 1)
        }
    }
}

/// Evaluate `f` over `s` under `assignment`, whose domain must equal the
/// free variables of `f` exactly.
pub fn evaluate(
    s: &RelationalStructure,
    f: &Formula,
    assignment: &Assignment,
) -> Result<bool, EvalError> {
    let ctx = Ctx::build(s)?;
    let uses_sets = ctx.check_vocabulary(f)?;
    if (uses_sets || !assignment.sets.is_empty()) && ctx.universe > 63 {
        return Err(EvalError::UniverseTooLargeForSets { size: ctx.universe });
    }

    let (free_ind, free_set) = f.free_variables();
    let given_ind: BTreeSet<String> = assignment.individuals.keys().cloned().collect();
    let given_set: BTreeSet<String> = assignment.sets.keys().cloned().collect();
    let missing: Vec<String> = free_ind
        .difference(&given_ind)
        .chain(free_set.difference(&given_set))
        .cloned()
        .collect();
    let extra: Vec<String> = given_ind
        .difference(&free_ind)
        .chain(given_set.difference(&free_set))
        .cloned()
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(EvalError::AssignmentMismatch { missing, extra });
    }

    let mut env = Env {
        individuals: assignment.individuals.iter().map(|(v, &e)| (v.clone(), e)).collect(),
        sets: assignment
            .sets
            .iter()
            .map(|(v, elems)| (v.clone(), elems.iter().fold(0u64, |m, &e| m | 1 << e)))
            .collect(),
    };
    eval(&ctx, &mut env, f)
}

/// Evaluate a sentence (no free variables of either kind).
pub fn model_check(s: &RelationalStructure, f: &Formula) -> Result<bool, EvalError> {
    let (ind, set) = f.free_variables();
    if !ind.is_empty() || !set.is_empty() {
        return Err(EvalError::NotASentence { free: ind.into_iter().chain(set).collect() });
    }
    evaluate(s, f, &Assignment::new())
}
