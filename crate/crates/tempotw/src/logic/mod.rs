//! First-order and monadic second-order formulas over relational structures.
//!
//! Formulas are plain ASTs; terms are variable names, with the single
//! constant `s` denoting the start marker of a linear-time structure
//! (binding a variable named `s` shadows the constant). The textual form is
//! an s-expression language, see [`parse`]; evaluation is brute force, see
//! [`eval`]; [`formulas`] generates every formula family used by the
//! temporal-graph problems.

pub mod eval;
pub mod formulas;
pub mod parse;

pub use eval::{evaluate, model_check, Assignment, EvalError};
pub use parse::{parse_formula, ParseError};

use std::collections::BTreeSet;
use std::fmt;

/// A formula. Individual variables and set variables live in separate
/// namespaces; relation names are resolved against a structure at
/// evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
    /// N-ary conjunction; empty means true.
    And(Vec<Formula>),
    /// N-ary disjunction; empty means false.
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// A relation atom `(NAME t1 t2 ...)`.
    Atom { relation: String, args: Vec<String> },
    Equals(String, String),
    /// The interpreted origin comparison: true iff both terms denote vertex
    /// copies descending from the same vertex.
    SameV(String, String),
    /// `(in X x)`: the element denoted by `x` belongs to set variable `X`.
    Member { set: String, element: String },
}

impl Formula {
    /// True iff the formula is first order: no set quantifier, no `in` atom.
    pub fn is_fo(&self) -> bool {
        match self {
            Formula::ExistsSet(..) | Formula::ForallSet(..) | Formula::Member { .. } => false,
            Formula::Exists(_, f) | Formula::Forall(_, f) | Formula::Not(f) => f.is_fo(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_fo),
            Formula::Implies(a, b) => a.is_fo() && b.is_fo(),
            Formula::Atom { .. } | Formula::Equals(..) | Formula::SameV(..) => true,
        }
    }

    /// Free individual and set variables, as two sorted sets. The constant
    /// `s` is never free (unless some enclosing quantifier rebinds it, in
    /// which scope it is an ordinary bound variable).
    pub fn free_variables(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut individuals = BTreeSet::new();
        let mut sets = BTreeSet::new();
        let mut bound_ind: Vec<&str> = Vec::new();
        let mut bound_set: Vec<&str> = Vec::new();
        self.collect_free(&mut bound_ind, &mut bound_set, &mut individuals, &mut sets);
        (individuals, sets)
    }

    fn collect_free<'a>(
        &'a self,
        bound_ind: &mut Vec<&'a str>,
        bound_set: &mut Vec<&'a str>,
        individuals: &mut BTreeSet<String>,
        sets: &mut BTreeSet<String>,
    ) {
        let note = |term: &str, bound: &[&str], out: &mut BTreeSet<String>, constant_s: bool| {
            if bound.iter().rev().any(|&b| b == term) {
                return;
            }
            if constant_s && term == "s" {
                return;
            }
            out.insert(term.to_string());
        };
        match self {
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound_ind.push(v);
                f.collect_free(bound_ind, bound_set, individuals, sets);
                bound_ind.pop();
            }
            Formula::ExistsSet(v, f) | Formula::ForallSet(v, f) => {
                bound_set.push(v);
                f.collect_free(bound_ind, bound_set, individuals, sets);
                bound_set.pop();
            }
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound_ind, bound_set, individuals, sets);
                }
            }
            Formula::Not(f) => f.collect_free(bound_ind, bound_set, individuals, sets),
            Formula::Implies(a, b) => {
                a.collect_free(bound_ind, bound_set, individuals, sets);
                b.collect_free(bound_ind, bound_set, individuals, sets);
            }
            Formula::Atom { args, .. } => {
                for a in args {
                    note(a, bound_ind, individuals, true);
                }
            }
            Formula::Equals(a, b) | Formula::SameV(a, b) => {
                note(a, bound_ind, individuals, true);
                note(b, bound_ind, individuals, true);
            }
            Formula::Member { set, element } => {
                note(set, bound_set, sets, false);
                note(element, bound_ind, individuals, true);
            }
        }
    }

    /// True iff the formula has no free variables of either kind.
    pub fn is_sentence(&self) -> bool {
        let (ind, set) = self.free_variables();
        ind.is_empty() && set.is_empty()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Exists(v, b) => write!(f, "(exists {v} {b})"),
            Formula::Forall(v, b) => write!(f, "(forall {v} {b})"),
            Formula::ExistsSet(v, b) => write!(f, "(existsSet {v} {b})"),
            Formula::ForallSet(v, b) => write!(f, "(forallSet {v} {b})"),
            Formula::And(fs) => {
                write!(f, "(and")?;
                for sub in fs {
                    write!(f, " {sub}")?;
                }
                write!(f, ")")
            }
            Formula::Or(fs) => {
                write!(f, "(or")?;
                for sub in fs {
                    write!(f, " {sub}")?;
                }
                write!(f, ")")
            }
            Formula::Not(b) => write!(f, "(not {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Atom { relation, args } => {
                write!(f, "({relation}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Equals(a, b) => write!(f, "(= {a} {b})"),
            Formula::SameV(a, b) => write!(f, "(sameV {a} {b})"),
            Formula::Member { set, element } => write!(f, "(in {set} {element})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(rel: &str, args: &[&str]) -> Formula {
        Formula::Atom {
            relation: rel.to_string(),
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }

    #[test]
    fn free_variable_analysis() {
        let f = Formula::Exists(
            "x".into(),
            Box::new(Formula::And(vec![
                atom("E", &["x", "y"]),
                Formula::Member { set: "X".into(), element: "x".into() },
            ])),
        );
        let (ind, set) = f.free_variables();
        assert_eq!(ind.into_iter().collect::<Vec<_>>(), ["y"]);
        assert_eq!(set.into_iter().collect::<Vec<_>>(), ["X"]);
        assert!(!f.is_sentence());
    }

    #[test]
    fn start_constant_is_not_free_unless_shadowed() {
        let f = atom("R", &["s", "t"]);
        let (ind, _) = f.free_variables();
        assert_eq!(ind.into_iter().collect::<Vec<_>>(), ["t"]);

        // Once bound, `s` is an ordinary variable.
        let g = Formula::Exists("s".into(), Box::new(atom("T", &["s"])));
        assert!(g.is_sentence());
    }

    #[test]
    fn fo_detection() {
        let fo = Formula::Forall("x".into(), Box::new(Formula::Equals("x".into(), "x".into())));
        assert!(fo.is_fo());
        let mso = Formula::ExistsSet("X".into(), Box::new(fo.clone()));
        assert!(!mso.is_fo());
        let member = Formula::Member { set: "X".into(), element: "x".into() };
        assert!(!member.is_fo());
    }

    #[test]
    fn display_is_canonical() {
        let f = Formula::Exists(
            "x".into(),
            Box::new(Formula::Implies(
                Box::new(atom("V", &["x"])),
                Box::new(Formula::Or(vec![
                    Formula::Equals("x".into(), "x".into()),
                    Formula::Not(Box::new(Formula::SameV("x".into(), "x".into()))),
                ])),
            )),
        );
        assert_eq!(
            f.to_string(),
            "(exists x (implies (V x) (or (= x x) (not (sameV x x)))))"
        );
    }
}
