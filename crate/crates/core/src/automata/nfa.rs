use std::collections::{HashMap, VecDeque};

use super::{determinize, AutomataError, Result};

/// Nondeterministic finite automaton without epsilon moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet_size: usize,
    // successors[state][symbol], sorted and deduplicated
    successors: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    Intersect,
    Union,
}

impl Nfa {
    /// An automaton with `num_states` states, no transitions, nothing initial
    /// and nothing accepting.
    pub fn new(alphabet_size: usize, num_states: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        Ok(Nfa {
            alphabet_size,
            successors: vec![vec![Vec::new(); alphabet_size]; num_states],
            initial: Vec::new(),
            accepting: vec![false; num_states],
        })
    }

    /// Builds an automaton from explicit parts, validating every index.
    pub fn from_parts(
        alphabet_size: usize,
        num_states: usize,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet_size, num_states)?;
        for (from, symbol, to) in transitions {
            nfa.add_transition(from, symbol, to)?;
        }
        for q in initial {
            nfa.set_initial(q)?;
        }
        for q in accepting {
            nfa.set_accepting(q, true)?;
        }
        Ok(nfa)
    }

    /// The automaton accepting no word at all.
    pub fn empty_language(alphabet_size: usize) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet_size, 1)?;
        nfa.set_initial(0)?;
        Ok(nfa)
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet_size: usize) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet_size, 1)?;
        nfa.set_initial(0)?;
        nfa.set_accepting(0, true)?;
        for a in 0..alphabet_size {
            nfa.add_transition(0, a, 0)?;
        }
        Ok(nfa)
    }

    /// The automaton accepting exactly `words`.
    pub fn from_words(alphabet_size: usize, words: &[Vec<usize>]) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet_size, 1)?;
        nfa.set_initial(0)?;
        for word in words {
            let mut q = 0;
            for &a in word {
                let next = nfa.add_state();
                nfa.add_transition(q, a, next)?;
                q = next;
            }
            nfa.set_accepting(q, true)?;
        }
        Ok(nfa)
    }

    pub fn add_state(&mut self) -> usize {
        self.successors.push(vec![Vec::new(); self.alphabet_size]);
        self.accepting.push(false);
        self.successors.len() - 1
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state < self.num_states() {
            Ok(())
        } else {
            Err(AutomataError::InvalidState { state, num_states: self.num_states() })
        }
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        if symbol >= self.alphabet_size {
            return Err(AutomataError::InvalidSymbol { symbol, alphabet_size: self.alphabet_size });
        }
        let succ = &mut self.successors[from][symbol];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        if let Err(pos) = self.initial.binary_search(&state) {
            self.initial.insert(pos, state);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) -> Result<()> {
        self.check_state(state)?;
        self.accepting[state] = accepting;
        Ok(())
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.successors.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn successors(&self, state: usize, symbol: usize) -> &[usize] {
        &self.successors[state][symbol]
    }

    /// All transitions as `(from, symbol, to)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.successors.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, succ)| succ.iter().map(move |&r| (q, a, r)))
        })
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    /// Membership by forward simulation. Symbols out of range reject.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = vec![false; self.num_states()];
        for &q in &self.initial {
            current[q] = true;
        }
        for &a in word {
            if a >= self.alphabet_size {
                return false;
            }
            let mut next = vec![false; self.num_states()];
            for (q, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &r in &self.successors[q][a] {
                    next[r] = true;
                }
            }
            current = next;
        }
        current.iter().zip(&self.accepting).any(|(&on, &f)| on && f)
    }

    /// Replaces every symbol `a` by `map(a)` over a new alphabet.
    pub(crate) fn relabel(&self, new_alphabet: usize, map: impl Fn(usize) -> usize) -> Result<Nfa> {
        let mut out = Nfa::new(new_alphabet, self.num_states())?;
        for (q, a, r) in self.transitions() {
            out.add_transition(q, map(a), r)?;
        }
        out.initial = self.initial.clone();
        out.accepting = self.accepting.clone();
        Ok(out)
    }

    pub(crate) fn set_initial_states(&mut self, states: Vec<usize>) {
        self.initial = states;
        self.initial.sort_unstable();
        self.initial.dedup();
    }

    pub(crate) fn set_accepting_states(&mut self, accepting: Vec<bool>) {
        self.accepting = accepting;
    }

    /// States reachable from `from` through transitions on `symbol` only
    /// (reflexive).
    pub(crate) fn closure_on(&self, from: &[usize], symbol: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = from.to_vec();
        for &q in from {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &r in &self.successors[q][symbol] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// States that reach an accepting state through transitions on `symbol`
    /// only (reflexive).
    pub(crate) fn co_closure_on(&self, symbol: usize) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for q in 0..n {
            for &r in &self.successors[q][symbol] {
                preds[r].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(r) = stack.pop() {
            for &q in &preds[r] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }
}

fn check_same_alphabet(a: &Nfa, b: &Nfa) -> Result<()> {
    if a.alphabet_size != b.alphabet_size {
        return Err(AutomataError::AlphabetMismatch { left: a.alphabet_size, right: b.alphabet_size });
    }
    Ok(())
}

/// Intersection by the reachable pair construction, union by disjoint sum.
pub fn product(a: &Nfa, b: &Nfa, mode: ProductMode) -> Result<Nfa> {
    check_same_alphabet(a, b)?;
    match mode {
        ProductMode::Union => {
            let shift = a.num_states();
            let mut out = Nfa::new(a.alphabet_size, shift + b.num_states())?;
            for (q, s, r) in a.transitions() {
                out.add_transition(q, s, r)?;
            }
            for (q, s, r) in b.transitions() {
                out.add_transition(q + shift, s, r + shift)?;
            }
            for &q in a.initial() {
                out.set_initial(q)?;
            }
            for &q in b.initial() {
                out.set_initial(q + shift)?;
            }
            for q in a.accepting_states() {
                out.set_accepting(q, true)?;
            }
            for q in b.accepting_states() {
                out.set_accepting(q + shift, true)?;
            }
            Ok(out)
        }
        ProductMode::Intersect => {
            let mut index: HashMap<(usize, usize), usize> = HashMap::new();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            let mut queue = VecDeque::new();
            for &p in a.initial() {
                for &q in b.initial() {
                    index.insert((p, q), pairs.len());
                    pairs.push((p, q));
                    queue.push_back((p, q));
                }
            }
            let mut edges = Vec::new();
            while let Some((p, q)) = queue.pop_front() {
                let from = index[&(p, q)];
                for s in 0..a.alphabet_size {
                    for &p2 in a.successors(p, s) {
                        for &q2 in b.successors(q, s) {
                            let to = *index.entry((p2, q2)).or_insert_with(|| {
                                pairs.push((p2, q2));
                                queue.push_back((p2, q2));
                                pairs.len() - 1
                            });
                            edges.push((from, s, to));
                        }
                    }
                }
            }
            let initial_count = a.initial().len() * b.initial().len();
            let accepting: Vec<usize> = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(p, q))| a.is_accepting(p) && b.is_accepting(q))
                .map(|(i, _)| i)
                .collect();
            if pairs.is_empty() {
                return Nfa::empty_language(a.alphabet_size);
            }
            Nfa::from_parts(a.alphabet_size, pairs.len(), edges, 0..initial_count, accepting)
        }
    }
}

/// True iff no accepting state is reachable from an initial state.
pub fn is_empty(a: &Nfa) -> bool {
    let mut seen = vec![false; a.num_states()];
    let mut stack: Vec<usize> = a.initial().to_vec();
    for &q in a.initial() {
        seen[q] = true;
    }
    while let Some(q) = stack.pop() {
        if a.is_accepting(q) {
            return false;
        }
        for s in 0..a.alphabet_size() {
            for &r in a.successors(q, s) {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
    }
    true
}

/// Language equivalence: the symmetric difference of the determinized
/// automata must be empty.
pub fn are_equivalent(a: &Nfa, b: &Nfa) -> Result<bool> {
    check_same_alphabet(a, b)?;
    let da = determinize(a);
    let db = determinize(b);
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((da.initial(), db.initial()), ());
    queue.push_back((da.initial(), db.initial()));
    while let Some((p, q)) = queue.pop_front() {
        if da.is_accepting(p) != db.is_accepting(q) {
            return Ok(false);
        }
        for s in 0..a.alphabet_size() {
            let next = (da.next(p, s), db.next(q, s));
            if seen.insert(next, ()).is_none() {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}
