//! Convolution alphabets, canonical encodings, and the track operations used
//! for quantifier elimination.
//!
//! A word over an arity-`k` track alphabet is *canonical* when it is empty or
//! its first and last columns are both non-zero. Projection and
//! cylindrification are defined relative to canonical encodings.

use super::{determinize, minimize, product, AutomataError, Dfa, Nfa, ProductMode, Result};

/// Columns of `arity` letters over `0..base`, packed little-endian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrackAlphabet {
    base: usize,
    arity: usize,
}

impl TrackAlphabet {
    pub fn new(base: usize, arity: usize) -> Result<Self> {
        if base == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        Ok(TrackAlphabet { base, arity })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of column symbols, `base^arity`.
    pub fn size(&self) -> usize {
        self.base.pow(self.arity as u32)
    }

    pub fn encode(&self, letters: &[usize]) -> usize {
        debug_assert_eq!(letters.len(), self.arity);
        letters.iter().rev().fold(0, |acc, &l| acc * self.base + l)
    }

    pub fn decode(&self, symbol: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arity);
        let mut s = symbol;
        for _ in 0..self.arity {
            out.push(s % self.base);
            s /= self.base;
        }
        out
    }

    #[inline]
    pub fn letter(&self, symbol: usize, track: usize) -> usize {
        (symbol / self.base.pow(track as u32)) % self.base
    }

    /// The symbol with track `track` deleted.
    pub fn delete_track(&self, symbol: usize, track: usize) -> usize {
        let low = self.base.pow(track as u32);
        (symbol % low) + (symbol / (low * self.base)) * low
    }

    pub fn check(&self, a: &Nfa) -> Result<()> {
        if a.alphabet_size() != self.size() {
            return Err(AutomataError::TrackMismatch { expected: self.size(), actual: a.alphabet_size() });
        }
        Ok(())
    }
}

/// DFA for the canonical encodings over `tracks`: the empty word, or words
/// whose first and last columns are non-zero.
pub fn canonical_language(tracks: TrackAlphabet) -> Dfa {
    // 0: start (accepting), 1: last column non-zero (accepting),
    // 2: last column zero, 3: dead
    let n = tracks.size();
    let mut delta = vec![0; 4 * n];
    for s in 0..n {
        let nonzero = s != 0;
        delta[s] = if nonzero { 1 } else { 3 };
        delta[n + s] = if nonzero { 1 } else { 2 };
        delta[2 * n + s] = if nonzero { 1 } else { 2 };
        delta[3 * n + s] = 3;
    }
    minimize(&Dfa::from_table(n, delta, 0, vec![true, true, false, false]).expect("static table"))
}

fn restrict_to_canonical(a: &Nfa, tracks: TrackAlphabet) -> Result<Nfa> {
    product(a, &canonical_language(tracks).to_nfa(), ProductMode::Intersect)
}

/// Existential projection: delete track `index`, then trim zero boundary
/// columns. The result accepts exactly the trimmed images of `L(a)`.
pub fn project_track(a: &Nfa, tracks: TrackAlphabet, index: usize) -> Result<Nfa> {
    tracks.check(a)?;
    if index >= tracks.arity() {
        return Err(AutomataError::ArityOutOfRange { arity: tracks.arity(), index });
    }
    let smaller = TrackAlphabet::new(tracks.base(), tracks.arity() - 1)?;
    let mut image = a.relabel(smaller.size(), |s| tracks.delete_track(s, index))?;
    // 0^m u 0^n in the image  <=>  u accepted after zero-closure at both ends
    let start = image.closure_on(image.initial(), 0);
    image.set_initial_states((0..image.num_states()).filter(|&q| start[q]).collect());
    let accept = image.co_closure_on(0);
    image.set_accepting_states(accept);
    restrict_to_canonical(&image, smaller)
}

/// Introduces a fresh unconstrained track at `position`. The result accepts
/// the canonical encodings whose restriction to the original tracks (delete
/// the new track, trim) lies in `L(a)`.
pub fn cylindrify_track(a: &Nfa, tracks: TrackAlphabet, position: usize) -> Result<Nfa> {
    tracks.check(a)?;
    if position > tracks.arity() {
        return Err(AutomataError::ArityOutOfRange { arity: tracks.arity(), index: position });
    }
    let larger = TrackAlphabet::new(tracks.base(), tracks.arity() + 1)?;
    let core = restrict_to_canonical(a, tracks)?;
    let n = core.num_states();
    // states: 0..n from `core`, PRE = n, POST = n + 1
    let pre = n;
    let post = n + 1;
    let mut out = Nfa::new(larger.size(), n + 2)?;
    out.set_initial(pre)?;
    let eps_in_core = core.initial().iter().any(|&q| core.is_accepting(q));
    for c in 0..larger.size() {
        let h = larger.delete_track(c, position);
        if h == 0 {
            out.add_transition(pre, c, pre)?;
            out.add_transition(post, c, post)?;
        } else {
            for &q in core.initial() {
                for &r in core.successors(q, h) {
                    out.add_transition(pre, c, r)?;
                }
            }
        }
        for q in 0..n {
            for &r in core.successors(q, h) {
                out.add_transition(q, c, r)?;
            }
            if h == 0 && core.is_accepting(q) {
                out.add_transition(q, c, post)?;
            }
        }
    }
    for q in 0..n {
        if core.is_accepting(q) {
            out.set_accepting(q, true)?;
        }
    }
    out.set_accepting(post, true)?;
    out.set_accepting(pre, eps_in_core)?;
    restrict_to_canonical(&out, larger)
}

/// Convenience: determinize and minimize.
pub fn normalize(a: &Nfa) -> Dfa {
    minimize(&determinize(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{are_equivalent, is_empty};

    #[test]
    fn symbol_packing() {
        let t = TrackAlphabet::new(3, 3).unwrap();
        let s = t.encode(&[2, 0, 1]);
        assert_eq!(s, 2 + 9);
        assert_eq!(t.decode(s), vec![2, 0, 1]);
        assert_eq!(t.letter(s, 2), 1);
        assert_eq!(t.delete_track(s, 0), TrackAlphabet::new(3, 2).unwrap().encode(&[0, 1]));
        assert_eq!(t.delete_track(s, 1), TrackAlphabet::new(3, 2).unwrap().encode(&[2, 1]));
    }

    #[test]
    fn canonical_membership() {
        let t = TrackAlphabet::new(2, 1).unwrap();
        let c = canonical_language(t);
        assert!(c.accepts(&[]));
        assert!(c.accepts(&[1]));
        assert!(c.accepts(&[1, 0, 1]));
        assert!(!c.accepts(&[0]));
        assert!(!c.accepts(&[1, 0]));
        let zero = canonical_language(TrackAlphabet::new(2, 0).unwrap());
        assert!(zero.accepts(&[]));
        assert!(!zero.accepts(&[0]));
    }

    #[test]
    fn project_trims_leading_zero_column() {
        // word [(0,1),(1,1)]: track0 = 0 1, track1 = 1 1
        let t = TrackAlphabet::new(2, 2).unwrap();
        let w = vec![t.encode(&[0, 1]), t.encode(&[1, 1])];
        let a = Nfa::from_words(4, &[w]).unwrap();
        let p = project_track(&a, t, 1).unwrap();
        let expected = Nfa::from_words(2, &[vec![1]]).unwrap();
        assert!(are_equivalent(&p, &expected).unwrap());
    }

    #[test]
    fn project_empty_language() {
        let t = TrackAlphabet::new(2, 2).unwrap();
        let p = project_track(&Nfa::empty_language(4).unwrap(), t, 0).unwrap();
        assert!(is_empty(&p));
    }

    #[test]
    fn project_to_arity_zero() {
        let t = TrackAlphabet::new(2, 1).unwrap();
        let a = Nfa::from_words(2, &[vec![1, 0, 1]]).unwrap();
        let p = project_track(&a, t, 0).unwrap();
        assert_eq!(p.alphabet_size(), 1);
        assert!(p.accepts(&[]));
        assert!(!p.accepts(&[0]));
        let none = project_track(&Nfa::empty_language(2).unwrap(), t, 0).unwrap();
        assert!(!none.accepts(&[]));
    }

    #[test]
    fn track_index_errors() {
        let t = TrackAlphabet::new(2, 1).unwrap();
        let a = Nfa::universal(2).unwrap();
        assert!(matches!(project_track(&a, t, 1), Err(AutomataError::ArityOutOfRange { .. })));
        assert!(matches!(cylindrify_track(&a, t, 2), Err(AutomataError::ArityOutOfRange { .. })));
        assert!(matches!(project_track(&Nfa::universal(3).unwrap(), t, 0), Err(AutomataError::TrackMismatch { .. })));
    }

    #[test]
    fn cylindrify_true_gives_all_canonical() {
        let t0 = TrackAlphabet::new(2, 0).unwrap();
        let truth = Nfa::from_words(1, &[vec![]]).unwrap();
        let c = cylindrify_track(&truth, t0, 0).unwrap();
        let t1 = TrackAlphabet::new(2, 1).unwrap();
        assert!(are_equivalent(&c, &canonical_language(t1).to_nfa()).unwrap());
    }

    #[test]
    fn cylindrify_empty_is_empty() {
        let t = TrackAlphabet::new(2, 1).unwrap();
        let c = cylindrify_track(&Nfa::empty_language(2).unwrap(), t, 1).unwrap();
        assert!(is_empty(&c));
    }

    #[test]
    fn cylindrify_admits_extension_columns() {
        // {1} over one track; add track 1: [(0,1),(1,0)] deletes to [0,1] -> trims to [1]
        let t = TrackAlphabet::new(2, 1).unwrap();
        let a = Nfa::from_words(2, &[vec![1]]).unwrap();
        let c = cylindrify_track(&a, t, 1).unwrap();
        let t2 = TrackAlphabet::new(2, 2).unwrap();
        assert!(c.accepts(&[t2.encode(&[0, 1]), t2.encode(&[1, 0])]));
        assert!(c.accepts(&[t2.encode(&[1, 1])]));
        assert!(!c.accepts(&[t2.encode(&[1, 0]), t2.encode(&[1, 0])]));
        assert!(!c.accepts(&[t2.encode(&[0, 1])]));
    }
}
