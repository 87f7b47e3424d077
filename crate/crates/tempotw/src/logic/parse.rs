//! S-expression parser for the formula language.
//!
//! Grammar: a formula is a parenthesized list. The head symbol selects the
//! node: `exists forall existsSet forallSet` (variable + body), `and or`
//! (any number of bodies), `not` (one), `implies` (two), `=` `sameV` (two
//! terms), `in` (set variable + term); any other head is a relation name
//! and the remaining symbols are its term arguments. Terms are variable
//! names; the symbol `s` denotes the start constant unless bound.
//! `parse_formula ∘ to_string` is the identity on all formulas.

use super::Formula;
use std::fmt;

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

const KEYWORDS: [&str; 11] = [
    "exists", "forall", "existsSet", "forallSet", "and", "or", "not", "implies", "=", "in",
    "sameV",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Symbol(String),
}

struct Lexer {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Lexer {
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut symbol_start = None::<(usize, usize)>;
    let mut symbol = String::new();
    for c in text.chars() {
        let is_delim = c == '(' || c == ')' || c.is_whitespace();
        if is_delim {
            if let Some((l, co)) = symbol_start.take() {
                tokens.push((Token::Symbol(std::mem::take(&mut symbol)), l, co));
            }
        }
        match c {
            '(' => tokens.push((Token::LParen, line, col)),
            ')' => tokens.push((Token::RParen, line, col)),
            _ if c.is_whitespace() => {}
            _ => {
                if symbol_start.is_none() {
                    symbol_start = Some((line, col));
                }
                symbol.push(c);
            }
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    if let Some((l, co)) = symbol_start {
        tokens.push((Token::Symbol(symbol), l, co));
    }
    Lexer { tokens, pos: 0, end: (line, col) }
}

impl Lexer {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }

    fn next(&mut self) -> Result<(Token, usize, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.err(self.end.0, self.end.1, "unexpected end of input")),
        }
    }

    fn expect_symbol(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        match self.next()? {
            (Token::Symbol(s), l, c) => Ok((s, l, c)),
            (_, l, c) => Err(self.err(l, c, format!("expected {what}"))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            (Token::RParen, _, _) => Ok(()),
            (_, l, c) => Err(self.err(l, c, "expected ')'")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.next()? {
            (Token::LParen, _, _) => {}
            (_, l, c) => return Err(self.err(l, c, "expected '('")),
        }
        let head = match self.next()? {
            (Token::Symbol(s), _, _) => s,
            (_, l, c) => return Err(self.err(l, c, "expected a keyword or relation name")),
        };
        match head.as_str() {
            "exists" | "forall" | "existsSet" | "forallSet" => {
                let (var, vl, vc) = self.expect_symbol("a variable name")?;
                if KEYWORDS.contains(&var.as_str()) {
                    return Err(self.err(vl, vc, format!("reserved word `{var}` cannot be a variable")));
                }
                let body = Box::new(self.formula()?);
                self.expect_rparen()?;
                Ok(match head.as_str() {
                    "exists" => Formula::Exists(var, body),
                    "forall" => Formula::Forall(var, body),
                    "existsSet" => Formula::ExistsSet(var, body),
                    _ => Formula::ForallSet(var, body),
                })
            }
            "and" | "or" => {
                let mut subs = Vec::new();
                loop {
                    match self.tokens.get(self.pos) {
                        Some((Token::RParen, _, _)) => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => subs.push(self.formula()?),
                        None => return Err(self.err(self.end.0, self.end.1, "unexpected end of input")),
                    }
                }
                Ok(if head == "and" { Formula::And(subs) } else { Formula::Or(subs) })
            }
            "not" => {
                let body = Box::new(self.formula()?);
                self.expect_rparen()?;
                Ok(Formula::Not(body))
            }
            "implies" => {
                let a = Box::new(self.formula()?);
                let b = Box::new(self.formula()?);
                self.expect_rparen()?;
                Ok(Formula::Implies(a, b))
            }
            "=" | "sameV" => {
                let (a, _, _) = self.expect_symbol("a term")?;
                let (b, _, _) = self.expect_symbol("a term")?;
                self.expect_rparen()?;
                Ok(if head == "=" { Formula::Equals(a, b) } else { Formula::SameV(a, b) })
            }
            "in" => {
                let (set, _, _) = self.expect_symbol("a set variable")?;
                let (element, _, _) = self.expect_symbol("a term")?;
                self.expect_rparen()?;
                Ok(Formula::Member { set, element })
            }
            _ => {
                let mut args = Vec::new();
                loop {
                    match self.next()? {
                        (Token::RParen, _, _) => break,
                        (Token::Symbol(s), _, _) => args.push(s),
                        (Token::LParen, l, c) => {
                            return Err(self.err(l, c, "relation arguments must be variables"));
                        }
                    }
                }
                Ok(Formula::Atom { relation: head, args })
            }
        }
    }
}

/// Parse one formula; trailing input is an error.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut lexer = lex(text);
    let formula = lexer.formula()?;
    if let Some((_, l, c)) = lexer.tokens.get(lexer.pos) {
        return Err(ParseError { line: *l, col: *c, msg: "unexpected trailing input".into() });
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quantified_atom() {
        let f = parse_formula("(exists x (V x))").unwrap();
        assert_eq!(
            f,
            Formula::Exists(
                "x".into(),
                Box::new(Formula::Atom { relation: "V".into(), args: vec!["x".into()] })
            )
        );
    }

    #[test]
    fn parses_tautology_and_mso() {
        let f = parse_formula("(forall t (implies (T t) (T t)))").unwrap();
        assert!(matches!(f, Formula::Forall(_, _)));
        assert!(f.is_fo());

        let g = parse_formula("(existsSet X (forall x (implies (in X x) (V x))))").unwrap();
        assert!(!g.is_fo());
        assert!(g.is_sentence());
    }

    #[test]
    fn per_time_relation_names_are_symbols() {
        let f = parse_formula("(and (LE@2 x y) (Lv@3 x) (= x y))").unwrap();
        assert_eq!(f.to_string(), "(and (LE@2 x y) (Lv@3 x) (= x y))");
    }

    #[test]
    fn round_trips_whitespace_variants() {
        let text = "(forall x\n  (implies (V x)\n           (or (= x x) (sameV x x))))";
        let f = parse_formula(text).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), f);
    }

    #[test]
    fn reports_positions() {
        let err = parse_formula("(exists x (V x)").unwrap_err();
        assert!(err.msg.contains("end of input"), "{err}");

        let err = parse_formula("(exists and (V x))").unwrap_err();
        assert_eq!((err.line, err.col), (1, 9));
        assert!(err.msg.contains("reserved word"), "{err}");

        let err = parse_formula("(V x) (T y)").unwrap_err();
        assert!(err.msg.contains("trailing"), "{err}");
        assert_eq!((err.line, err.col), (1, 7));

        let err = parse_formula("(and (V x) ((T y)))").unwrap_err();
        assert!(err.msg.contains("keyword or relation name"), "{err}");
    }

    #[test]
    fn empty_connectives_parse() {
        assert_eq!(parse_formula("(and)").unwrap(), Formula::And(vec![]));
        assert_eq!(parse_formula("(or)").unwrap(), Formula::Or(vec![]));
    }
}
