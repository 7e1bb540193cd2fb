//! Direct witness search for existential sentences, independent of the
//! automata.
//!
//! The first variable ranges over words of length `width` placed at the
//! origin; all others over words of length `width` placed anywhere in
//! `[-width, 2 width)`. Up to translation this covers every tuple whose
//! members have support width at most `width` and start within `width` of
//! the first one.

use std::collections::BTreeSet;

use super::{Formula, LogicError, Result};
use crate::ca::{step, Configuration, LocalRule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    Witness(Vec<(String, Configuration)>),
    NoneFound,
}

impl BruteForce {
    pub fn found(&self) -> bool {
        matches!(self, BruteForce::Witness(_))
    }
}

fn split_prefix(f: &Formula) -> (Vec<String>, &Formula) {
    let mut vars = Vec::new();
    let mut body = f;
    while let Formula::Exists(x, g) = body {
        vars.push(x.clone());
        body = g;
    }
    (vars, body)
}

fn quantifier_free(f: &Formula) -> bool {
    match f {
        Formula::Step(..) | Formula::Eq(..) => true,
        Formula::Not(g) => quantifier_free(g),
        Formula::And(g, h) | Formula::Or(g, h) => quantifier_free(g) && quantifier_free(h),
        Formula::Exists(..) | Formula::Forall(..) => false,
    }
}

struct Candidate {
    config: Configuration,
    image: Configuration,
}

fn eval(f: &Formula, env: &[(&str, &Candidate)]) -> bool {
    let get = |v: &str| env.iter().rev().find(|(u, _)| *u == v).expect("sentence binds every variable").1;
    match f {
        Formula::Step(x, y) => get(x).image == get(y).config,
        Formula::Eq(x, y) => get(x).config == get(y).config,
        Formula::Not(g) => !eval(g, env),
        Formula::And(g, h) => eval(g, env) && eval(h, env),
        Formula::Or(g, h) => eval(g, env) || eval(h, env),
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("matrix is quantifier-free"),
    }
}

fn candidates(rule: &LocalRule, width: usize, offsets: impl Iterator<Item = i64> + Clone) -> Vec<Candidate> {
    let n = rule.alphabet_size() as usize;
    let mut set = BTreeSet::new();
    for m in 0..n.pow(width as u32) {
        let cells: Vec<u8> = (0..width).map(|i| (m / n.pow(i as u32) % n) as u8).collect();
        for off in offsets.clone() {
            set.insert(Configuration::new(cells.clone(), off));
        }
    }
    set.into_iter().map(|config| Candidate { image: step(rule, &config), config }).collect()
}

/// Looks for a witness of `E x_1 … E x_m . matrix` with `m <= max_depth`.
/// A witness proves the sentence; `NoneFound` proves nothing.
pub fn brute_force_existential(
    rule: &LocalRule,
    sentence: &Formula,
    width: usize,
    max_depth: usize,
) -> Result<BruteForce> {
    let (vars, matrix) = split_prefix(sentence);
    if !quantifier_free(matrix) {
        return Err(LogicError::NotExistential);
    }
    if !sentence.is_sentence() {
        return Err(LogicError::FreeVariables(sentence.free_variables().into_iter().collect()));
    }
    if vars.len() > max_depth {
        return Err(LogicError::TooDeep { quantifiers: vars.len(), bound: max_depth });
    }
    let w = width as i64;
    let first = candidates(rule, width, 0..1);
    let rest = candidates(rule, width, -w..=w);
    let mut env: Vec<(&str, &Candidate)> = Vec::with_capacity(vars.len());
    Ok(search(&vars, matrix, &first, &rest, &mut env))
}

fn search<'a>(
    vars: &'a [String],
    matrix: &Formula,
    first: &'a [Candidate],
    rest: &'a [Candidate],
    env: &mut Vec<(&'a str, &'a Candidate)>,
) -> BruteForce {
    let depth = env.len();
    if depth == vars.len() {
        if eval(matrix, env) {
            return BruteForce::Witness(env.iter().map(|(v, c)| (v.to_string(), c.config.clone())).collect());
        }
        return BruteForce::NoneFound;
    }
    let pool = if depth == 0 { first } else { rest };
    for c in pool {
        env.push((&vars[depth], c));
        let found = search(vars, matrix, first, rest, env);
        env.pop();
        if found.found() {
            return found;
        }
    }
    BruteForce::NoneFound
}
