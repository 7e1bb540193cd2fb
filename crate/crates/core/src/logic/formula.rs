//! First-order formulas over `→` and `=`, and their parser.
//!
//! ```text
//! formula := disj
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | ('A' | 'E') var '.' formula | '(' formula ')' | var ('->' | '=') var
//! ```
//!
//! `A` and `E` are reserved. A quantifier's scope runs to the end of the
//! enclosing parenthesis.

use std::collections::BTreeSet;
use std::fmt;

use super::{LogicError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Step(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn free_variables(&self) -> BTreeSet<String> {
        match self {
            Formula::Step(x, y) | Formula::Eq(x, y) => [x.clone(), y.clone()].into(),
            Formula::Not(f) => f.free_variables(),
            Formula::And(f, g) | Formula::Or(f, g) => &f.free_variables() | &g.free_variables(),
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                let mut v = f.free_variables();
                v.remove(x);
                v
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Number of nested quantifiers on the deepest path.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Step(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(f, g) | Formula::Or(f, g) => f.quantifier_depth().max(g.quantifier_depth()),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn step(x: &str, y: &str) -> Formula {
        Formula::Step(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.into(), y.into())
    }
}

impl fmt::Display for Formula {
    /// Fully parenthesized except atoms; parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Step(x, y) => write!(f, "{x} -> {y}"),
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(g, h) => write!(f, "({g}) & ({h})"),
            Formula::Or(g, h) => write!(f, "({g}) | ({h})"),
            Formula::Exists(x, g) => write!(f, "E {x} . ({g})"),
            Formula::Forall(x, g) => write!(f, "A {x} . ({g})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Forall,
    Exists,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Equals,
    Open,
    Close,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Var(v) => return write!(f, "variable {v:?}"),
            Tok::Forall => "`A`",
            Tok::Exists => "`E`",
            Tok::Dot => "`.`",
            Tok::Not => "`!`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Arrow => "`->`",
            Tok::Equals => "`=`",
            Tok::Open => "`(`",
            Tok::Close => "`)`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                word.push(d);
                chars.next();
            }
            let tok = match word.as_str() {
                "A" => Tok::Forall,
                "E" => Tok::Exists,
                _ => Tok::Var(word),
            };
            out.push((i, tok));
            continue;
        }
        chars.next();
        let tok = match c {
            '.' => Tok::Dot,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '=' => Tok::Equals,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '-' if chars.peek().map(|&(_, d)| d) == Some('>') => {
                chars.next();
                Tok::Arrow
            }
            _ => return Err(LogicError::Parse { position: i, message: format!("unexpected character {c:?}") }),
        };
        out.push((i, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let (position, tok) = &self.toks[self.at];
        Err(LogicError::Parse { position: *position, message: format!("expected {expected}, found {tok}") })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn var(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail("a variable"),
        }
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            q @ (Tok::Forall | Tok::Exists) => {
                self.bump();
                let x = self.var()?;
                self.expect(Tok::Dot, "`.` after the quantified variable")?;
                let body = self.disj()?;
                Ok(if q == Tok::Forall { Formula::forall(&x, body) } else { Formula::exists(&x, body) })
            }
            Tok::Open => {
                self.bump();
                let f = self.disj()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(f)
            }
            Tok::Var(x) => {
                self.bump();
                let op = self.peek().clone();
                if !matches!(op, Tok::Arrow | Tok::Equals) {
                    return self.fail("`->` or `=`");
                }
                self.bump();
                let y = self.var()?;
                Ok(if op == Tok::Arrow { Formula::Step(x, y) } else { Formula::Eq(x, y) })
            }
            _ => self.fail("a formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let f = p.disj()?;
    if *p.peek() != Tok::End {
        return p.fail("end of input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    #[test]
    fn simple_sentences() {
        assert_eq!(parse_formula("E x . x -> x").unwrap(), F::exists("x", F::step("x", "x")));
        assert_eq!(parse_formula("A x.x=x").unwrap(), F::forall("x", F::eq("x", "x")));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("A x . A y . (x -> y | ! x = y)").unwrap();
        let expected = F::forall("x", F::forall("y", F::or(F::step("x", "y"), F::not(F::eq("x", "y")))));
        assert_eq!(f, expected);
        let g = parse_formula("a = b | b = c & ! c -> a").unwrap();
        assert_eq!(g, F::or(F::eq("a", "b"), F::and(F::eq("b", "c"), F::not(F::step("c", "a")))));
    }

    #[test]
    fn quantifier_scope_runs_right() {
        let f = parse_formula("x = x & E y . y = y | y -> x").unwrap();
        let body = F::or(F::eq("y", "y"), F::step("y", "x"));
        assert_eq!(f, F::and(F::eq("x", "x"), F::exists("y", body)));
        let g = parse_formula("(E y . y = y) | y -> x").unwrap();
        assert_eq!(g, F::or(F::exists("y", F::eq("y", "y")), F::step("y", "x")));
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_formula("x -> -> y").unwrap_err();
        assert!(matches!(err, LogicError::Parse { position: 5, .. }), "{err:?}");
        assert!(matches!(parse_formula("E . x = x"), Err(LogicError::Parse { position: 2, .. })));
        assert!(matches!(parse_formula("(x = y"), Err(LogicError::Parse { position: 6, .. })));
        assert!(matches!(parse_formula("x = y)"), Err(LogicError::Parse { position: 5, .. })));
        assert!(matches!(parse_formula("x"), Err(LogicError::Parse { position: 1, .. })));
        assert!(matches!(parse_formula("x # y"), Err(LogicError::Parse { position: 2, .. })));
        assert!(matches!(parse_formula(""), Err(LogicError::Parse { position: 0, .. })));
    }

    #[test]
    fn free_variables_and_display_round_trip() {
        let f = parse_formula("E x . (x -> y & A y . y = z)").unwrap();
        assert_eq!(f.free_variables(), ["y".to_string(), "z".to_string()].into());
        assert_eq!(f.quantifier_depth(), 2);
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        assert!(parse_formula("A x . E y . x -> y").unwrap().is_sentence());
    }
}
