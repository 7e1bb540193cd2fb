//! Convolution encodings of configuration tuples and the atom automata.
//!
//! A tuple `(X_1, …, X_k)` is written over the interval spanned by the
//! union of the supports, one column per cell, track `i` holding `X_i`.
//! Only relative positions are kept, which suffices because the shift
//! commutes with the global map.

use crate::automata::{canonical_language, minimize, normalize, product, Dfa, ProductMode, TrackAlphabet};
use crate::ca::{Configuration, LocalRule};

/// An automaton over an arity-`k` track alphabet, track `i` standing for
/// `variables[i]`. Variables are sorted.
#[derive(Debug, Clone)]
pub struct ConvolutionLanguage {
    pub dfa: Dfa,
    pub variables: Vec<String>,
    pub tracks: TrackAlphabet,
}

impl ConvolutionLanguage {
    pub fn accepts(&self, configs: &[Configuration]) -> bool {
        self.dfa.accepts(&encode_tuple(self.tracks, configs))
    }
}

pub fn encode_tuple(tracks: TrackAlphabet, configs: &[Configuration]) -> Vec<usize> {
    debug_assert_eq!(configs.len(), tracks.arity());
    let supports: Vec<(i64, i64)> = configs.iter().filter_map(Configuration::support).collect();
    let Some(l) = supports.iter().map(|s| s.0).min() else {
        return Vec::new();
    };
    let r = supports.iter().map(|s| s.1).max().expect("non-empty");
    (l..r)
        .map(|i| tracks.encode(&configs.iter().map(|c| c.get(i) as usize).collect::<Vec<_>>()))
        .collect()
}

/// Reads each track back, placing the first column at position 0.
pub fn decode_tuple(tracks: TrackAlphabet, word: &[usize]) -> Vec<Configuration> {
    (0..tracks.arity())
        .map(|t| Configuration::new(word.iter().map(|&s| tracks.letter(s, t) as u8).collect(), 0))
        .collect()
}

fn canonical(dfa: &Dfa, tracks: TrackAlphabet) -> Dfa {
    let both = product(&dfa.to_nfa(), &canonical_language(tracks).to_nfa(), ProductMode::Intersect)
        .expect("same track alphabet");
    normalize(&both)
}

/// `X_x = X_y` on tracks `x`, `y` of `tracks`.
pub fn equality_automaton(tracks: TrackAlphabet, x: usize, y: usize) -> Dfa {
    let n = tracks.size();
    // state 0 live, state 1 dead
    let mut delta = vec![1; 2 * n];
    for (s, d) in delta[..n].iter_mut().enumerate() {
        if tracks.letter(s, x) == tracks.letter(s, y) {
            *d = 0;
        }
    }
    let dfa = Dfa::from_table(n, delta, 0, vec![true, false]).expect("static table");
    canonical(&dfa, tracks)
}

/// `X_x → X_y`: `X_y` is the image of `X_x` under the global map.
///
/// Cell `i` of the image depends on `x(i+o ..= i+d)` with `o` the anchor and
/// `d = o + w - 1`; it is checked after reading column `i + k`, where
/// `k = max(0, d)`. The state holds the last `h = k + max(0, -o)` columns,
/// zero before the word starts, and acceptance feeds `h` zero columns so the
/// cells just past the word are checked too.
pub fn step_automaton(rule: &LocalRule, tracks: TrackAlphabet, x: usize, y: usize) -> Dfa {
    let n = rule.alphabet_size() as usize;
    assert_eq!(tracks.base(), n, "track base equals the rule alphabet");
    let w = rule.width() as i64;
    let o = rule.anchor();
    let d = o + w - 1;
    let k = d.max(0);
    let h = (k + (-o).max(0)) as usize;
    let pair = n * n;
    let states = pair.pow(h as u32);
    // state: column pairs, most recent at the low digit
    let back = |state: usize, p: usize| -> (usize, usize) {
        let c = (state / pair.pow(p as u32 - 1)) % pair;
        (c / n, c % n)
    };
    // None: a check failed
    let advance = |state: usize, cx: usize, cy: usize| -> Option<usize> {
        let col = |p: i64| -> (usize, usize) { if p == 0 { (cx, cy) } else { back(state, p as usize) } };
        let (_, target) = col(k);
        let mut index = 0;
        for m in 0..w {
            index = index * n + col(k - o - m).0;
        }
        if rule.lookup(index) as usize != target {
            return None;
        }
        Some(if h == 0 { 0 } else { (state * pair + cx * n + cy) % states })
    };
    let dead = states;
    let sigma = tracks.size();
    let mut delta = vec![dead; (states + 1) * sigma];
    for q in 0..states {
        for s in 0..sigma {
            if let Some(r) = advance(q, tracks.letter(s, x), tracks.letter(s, y)) {
                delta[q * sigma + s] = r;
            }
        }
    }
    let mut accepting: Vec<bool> = (0..states)
        .map(|q| (0..h).try_fold(q, |q, _| advance(q, 0, 0)).is_some())
        .collect();
    accepting.push(false);
    let dfa = Dfa::from_table(sigma, delta, 0, accepting).expect("table sized to alphabet");
    canonical(&minimize(&dfa), tracks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::are_equivalent;
    use crate::ca::step;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn encode_by_hand() {
        let t = TrackAlphabet::new(2, 2).unwrap();
        let w = encode_tuple(t, &[cfg("1@0"), cfg("11@-1")]);
        assert_eq!(w, vec![t.encode(&[0, 1]), t.encode(&[1, 1])]);
        assert!(encode_tuple(t, &[Configuration::empty(), Configuration::empty()]).is_empty());
    }

    #[test]
    fn encode_decode_round_trip() {
        let t = TrackAlphabet::new(3, 3).unwrap();
        let xs = [cfg("21@4"), Configuration::empty(), cfg("1002@-1")];
        let back = decode_tuple(t, &encode_tuple(t, &xs));
        // the common interval starts at -1
        let shifted: Vec<Configuration> = xs.iter().map(|c| c.translate(1)).collect();
        assert_eq!(back, shifted);
    }

    #[test]
    fn identity_rule_step_is_equality() {
        let id = LocalRule::eca(204).unwrap();
        let t = TrackAlphabet::new(2, 2).unwrap();
        let a = step_automaton(&id, t, 0, 1).to_nfa();
        let b = equality_automaton(t, 0, 1).to_nfa();
        assert!(are_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn rule_110_examples() {
        let r = LocalRule::eca(110).unwrap();
        let t = TrackAlphabet::new(2, 2).unwrap();
        let a = step_automaton(&r, t, 0, 1);
        assert!(a.accepts(&encode_tuple(t, &[cfg("1@0"), cfg("11@-1")])));
        assert!(!a.accepts(&encode_tuple(t, &[cfg("1@0"), cfg("1@0")])));
        assert!(a.accepts(&[]));
    }

    #[test]
    fn step_automaton_agrees_with_global_map() {
        let rules = [
            LocalRule::eca(30).unwrap(),
            LocalRule::eca(90).unwrap(),
            LocalRule::new(2, 2, 0, vec![0, 1, 1, 0]).unwrap(),
            LocalRule::new(2, 2, -3, vec![0, 1, 0, 1]).unwrap(),
            LocalRule::new(2, 1, 2, vec![0, 1]).unwrap(),
            LocalRule::new(3, 2, -1, (0..9).map(|i| ((i / 3 + 2 * (i % 3)) % 3) as u8).collect()).unwrap(),
        ];
        for r in &rules {
            let n = r.alphabet_size() as usize;
            let t = TrackAlphabet::new(n, 2).unwrap();
            let a = step_automaton(r, t, 0, 1);
            let swapped = step_automaton(r, t, 1, 0);
            // every pair of words of length <= 4 at offsets 0 and -3..=3
            let words: Vec<Vec<u8>> = (0..=4u32)
                .flat_map(|len| {
                    (0..n.pow(len)).map(move |m| (0..len).map(|i| (m / n.pow(i) % n) as u8).collect())
                })
                .collect();
            for u in &words {
                let x = Configuration::new(u.clone(), 0);
                let gx = step(r, &x);
                assert!(a.accepts(&encode_tuple(t, &[x.clone(), gx.clone()])));
                for v in &words {
                    for off in -3..=3 {
                        let y = Configuration::new(v.clone(), off);
                        let expect = gx == y;
                        assert_eq!(a.accepts(&encode_tuple(t, &[x.clone(), y.clone()])), expect);
                        assert_eq!(swapped.accepts(&encode_tuple(t, &[y.clone(), x.clone()])), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn atoms_on_one_track() {
        let zero = LocalRule::eca(0).unwrap();
        let t = TrackAlphabet::new(2, 1).unwrap();
        // x -> x under rule 0 holds only for the empty configuration
        let a = step_automaton(&zero, t, 0, 0);
        assert!(a.accepts(&[]));
        assert!(!a.accepts(&[1]));
        let e = equality_automaton(t, 0, 0);
        assert!(are_equivalent(&e.to_nfa(), &canonical_language(t).to_nfa()).unwrap());
    }
}
