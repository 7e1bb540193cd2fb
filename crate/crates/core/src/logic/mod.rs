//! First-order theory of `⟨finite configurations, →, =⟩` for one rule,
//! decided with automata over convolution encodings.
//!
//! Every subformula with free variables `v_1 < … < v_k` denotes the set of
//! canonical encodings of the satisfying tuples. Negation complements within
//! the canonical words, conjunction and disjunction first cylindrify both
//! sides to the union of their variables, `∃` projects a track away and
//! `∀x φ` is `¬∃x¬φ`. A sentence holds iff its arity-0 automaton accepts the
//! empty word.

mod brute;
mod encoding;
mod formula;

pub use brute::{brute_force_existential, BruteForce};
pub use encoding::{decode_tuple, encode_tuple, equality_automaton, step_automaton, ConvolutionLanguage};
pub use formula::{parse_formula, Formula};

use serde::Serialize;
use thiserror::Error;

use crate::automata::{
    canonical_language, complement, cylindrify_track, normalize, product, project_track, AutomataError, ProductMode,
    TrackAlphabet,
};
use crate::ca::LocalRule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not a sentence, free variables: {}", .0.join(", "))]
    FreeVariables(Vec<String>),
    #[error("not an existential sentence with a quantifier-free matrix")]
    NotExistential,
    #[error("{quantifiers} quantifiers exceed the bound {bound}")]
    TooDeep { quantifiers: usize, bound: usize },
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

pub type Result<T> = std::result::Result<T, LogicError>;

/// Minimal DFA size of one subformula, recorded bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubformulaStats {
    pub formula: String,
    pub variables: Vec<String>,
    pub states: usize,
}

pub fn model_check(rule: &LocalRule, sentence: &Formula) -> Result<bool> {
    Ok(model_check_with_stats(rule, sentence)?.0)
}

pub fn model_check_with_stats(rule: &LocalRule, sentence: &Formula) -> Result<(bool, Vec<SubformulaStats>)> {
    let free = sentence.free_variables();
    if !free.is_empty() {
        return Err(LogicError::FreeVariables(free.into_iter().collect()));
    }
    let mut stats = Vec::new();
    let lang = language(rule, sentence, &mut stats)?;
    Ok((lang.dfa.accepts(&[]), stats))
}

/// The automaton of a formula over its sorted free variables.
pub fn language(rule: &LocalRule, f: &Formula, stats: &mut Vec<SubformulaStats>) -> Result<ConvolutionLanguage> {
    let base = rule.alphabet_size() as usize;
    let lang = match f {
        Formula::Step(x, y) | Formula::Eq(x, y) => {
            let mut variables = vec![x.clone(), y.clone()];
            variables.sort();
            variables.dedup();
            let tracks = TrackAlphabet::new(base, variables.len())?;
            let at = |v: &String| variables.iter().position(|u| u == v).expect("atom variable");
            let dfa = if matches!(f, Formula::Step(..)) {
                step_automaton(rule, tracks, at(x), at(y))
            } else {
                equality_automaton(tracks, at(x), at(y))
            };
            ConvolutionLanguage { dfa, variables, tracks }
        }
        Formula::Not(g) => {
            let inner = language(rule, g, stats)?;
            let flipped = complement(&inner.dfa).to_nfa();
            let canonical = canonical_language(inner.tracks).to_nfa();
            ConvolutionLanguage { dfa: normalize(&product(&flipped, &canonical, ProductMode::Intersect)?), ..inner }
        }
        Formula::And(g, h) | Formula::Or(g, h) => {
            let left = language(rule, g, stats)?;
            let right = language(rule, h, stats)?;
            let mut variables: Vec<String> = left.variables.iter().chain(&right.variables).cloned().collect();
            variables.sort();
            variables.dedup();
            let a = align(left, &variables)?;
            let b = align(right, &variables)?;
            let mode = if matches!(f, Formula::And(..)) { ProductMode::Intersect } else { ProductMode::Union };
            ConvolutionLanguage { dfa: normalize(&product(&a.dfa.to_nfa(), &b.dfa.to_nfa(), mode)?), ..a }
        }
        Formula::Exists(x, g) => {
            let inner = language(rule, g, stats)?;
            match inner.variables.iter().position(|v| v == x) {
                // the domain is non-empty, so a vacuous quantifier changes nothing
                None => inner,
                Some(i) => {
                    let projected = project_track(&inner.dfa.to_nfa(), inner.tracks, i)?;
                    let mut variables = inner.variables;
                    variables.remove(i);
                    let tracks = TrackAlphabet::new(base, variables.len())?;
                    ConvolutionLanguage { dfa: normalize(&projected), variables, tracks }
                }
            }
        }
        Formula::Forall(x, g) => {
            let dual = Formula::not(Formula::exists(x, Formula::not((**g).clone())));
            language(rule, &dual, stats)?
        }
    };
    stats.push(SubformulaStats { formula: f.to_string(), variables: lang.variables.clone(), states: lang.dfa.num_states() });
    Ok(lang)
}

/// Adds unconstrained tracks so the language ranges over `variables`.
fn align(mut lang: ConvolutionLanguage, variables: &[String]) -> Result<ConvolutionLanguage> {
    for (i, v) in variables.iter().enumerate() {
        if lang.variables.get(i) != Some(v) {
            let widened = cylindrify_track(&lang.dfa.to_nfa(), lang.tracks, i)?;
            lang.variables.insert(i, v.clone());
            lang.tracks = TrackAlphabet::new(lang.tracks.base(), lang.variables.len())?;
            lang.dfa = normalize(&widened);
        }
    }
    Ok(lang)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::is_empty;

    fn check(rule: u32, text: &str) -> bool {
        model_check(&LocalRule::eca(rule).unwrap(), &parse_formula(text).unwrap()).unwrap()
    }

    #[test]
    fn sentence_battery() {
        assert!(check(204, "A x . x -> x"));
        assert!(!check(204, "E x . E y . (x -> y & ! x = y)"));
        assert!(check(0, "E x . E y . (x -> y & ! x = y)"));
        for r in [0, 90, 110, 204, 30, 184] {
            assert!(check(r, "E x . x -> x"), "rule {r}");
            assert!(!check(r, "E x . ! x = x"), "rule {r}");
        }
    }

    #[test]
    fn global_map_is_a_function() {
        for r in [0, 30, 90, 110] {
            assert!(check(r, "A x . E y . x -> y"), "rule {r}");
            assert!(check(r, "A x . A y . A z . (! (x -> y & x -> z) | y = z)"), "rule {r}");
        }
    }

    #[test]
    fn surjectivity_and_injectivity() {
        let injective = "A x . A y . A z . (! (x -> z & y -> z) | x = y)";
        let surjective = "A y . E x . x -> y";
        // rule 90: a single 1 has no finite preimage, and the kernel is trivial
        assert!(check(90, injective) && !check(90, surjective));
        assert!(check(204, injective) && check(204, surjective));
        assert!(check(170, injective) && check(170, surjective));
        assert!(!check(0, injective) && !check(0, surjective));
        assert!(!check(110, surjective));
    }

    #[test]
    fn negation_and_conjunction_at_top_level() {
        let sentences = ["E x . x -> x", "A x . E y . y -> x", "E x . E y . (x -> y & ! x = y)", "A x . x = x"];
        for r in [0, 90, 110, 204] {
            let rule = LocalRule::eca(r).unwrap();
            for a in sentences {
                let f = parse_formula(a).unwrap();
                let truth = model_check(&rule, &f).unwrap();
                assert_eq!(model_check(&rule, &Formula::not(f.clone())).unwrap(), !truth);
                for b in sentences {
                    let g = parse_formula(b).unwrap();
                    let both = model_check(&rule, &Formula::and(f.clone(), g.clone())).unwrap();
                    assert_eq!(both, truth && model_check(&rule, &g).unwrap());
                }
            }
        }
    }

    #[test]
    fn intermediate_languages_stay_canonical() {
        let rule = LocalRule::eca(110).unwrap();
        let f = parse_formula("E x . (x -> y & ! y = z) | ! E w . w -> z").unwrap();
        let mut stats = Vec::new();
        let lang = language(&rule, &f, &mut stats).unwrap();
        let outside = complement(&canonical_language(lang.tracks)).to_nfa();
        assert!(is_empty(&product(&lang.dfa.to_nfa(), &outside, ProductMode::Intersect).unwrap()));
        assert_eq!(lang.variables, ["y", "z"]);
        assert_eq!(stats.last().unwrap().variables, ["y", "z"]);
        assert!(stats.iter().all(|s| s.states > 0));
    }

    #[test]
    fn free_variables_rejected() {
        let err = model_check(&LocalRule::eca(0).unwrap(), &parse_formula("x -> y").unwrap()).unwrap_err();
        assert_eq!(err, LogicError::FreeVariables(vec!["x".into(), "y".into()]));
    }
}
