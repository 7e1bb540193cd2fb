use std::collections::{HashMap, VecDeque};

use super::{AutomataError, Nfa, Result};

/// Complete deterministic automaton. The transition function is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    // delta[state * alphabet_size + symbol]
    delta: Vec<usize>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a dense transition table. `delta` must have
    /// `num_states * alphabet_size` entries.
    pub fn from_table(alphabet_size: usize, delta: Vec<usize>, initial: usize, accepting: Vec<bool>) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        let num_states = accepting.len();
        if delta.len() != num_states * alphabet_size {
            return Err(AutomataError::InvalidState { state: delta.len() / alphabet_size, num_states });
        }
        if let Some(&bad) = delta.iter().find(|&&q| q >= num_states) {
            return Err(AutomataError::InvalidState { state: bad, num_states });
        }
        if initial >= num_states {
            return Err(AutomataError::InvalidState { state: initial, num_states });
        }
        Ok(Dfa { alphabet_size, delta, initial, accepting })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    #[inline]
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet_size + symbol]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut q = self.initial;
        for &a in word {
            if a >= self.alphabet_size {
                return false;
            }
            q = self.next(q, a);
        }
        self.accepting[q]
    }

    pub fn to_nfa(&self) -> Nfa {
        let n = self.num_states();
        let edges = (0..n).flat_map(|q| (0..self.alphabet_size).map(move |a| (q, a, self.next(q, a))));
        let accepting = (0..n).filter(|&q| self.accepting[q]);
        Nfa::from_parts(self.alphabet_size, n, edges, [self.initial], accepting)
            .expect("a valid DFA converts to a valid NFA")
    }
}

/// Subset construction restricted to reachable subsets. The empty subset,
/// when reachable, becomes the sink.
pub fn determinize(a: &Nfa) -> Dfa {
    let k = a.alphabet_size();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut delta = Vec::new();
    let start = a.initial().to_vec();
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut queue = VecDeque::from([0usize]);
    let mut mark = vec![false; a.num_states()];
    while let Some(i) = queue.pop_front() {
        let subset = subsets[i].clone();
        for s in 0..k {
            let mut next = Vec::new();
            for &q in &subset {
                for &r in a.successors(q, s) {
                    if !mark[r] {
                        mark[r] = true;
                        next.push(r);
                    }
                }
            }
            for &r in &next {
                mark[r] = false;
            }
            next.sort_unstable();
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    index.insert(next.clone(), j);
                    subsets.push(next);
                    queue.push_back(j);
                    j
                }
            };
            // rows are filled in BFS order, so row i starts at i * k
            if delta.len() < (i + 1) * k {
                delta.resize((i + 1) * k, 0);
            }
            delta[i * k + s] = j;
        }
    }
    delta.resize(subsets.len() * k, 0);
    let accepting = subsets.iter().map(|set| set.iter().any(|&q| a.is_accepting(q))).collect();
    Dfa { alphabet_size: k, delta, initial: 0, accepting }
}

/// Complement relative to all words over the alphabet.
pub fn complement(a: &Dfa) -> Dfa {
    Dfa {
        alphabet_size: a.alphabet_size,
        delta: a.delta.clone(),
        initial: a.initial,
        accepting: a.accepting.iter().map(|&f| !f).collect(),
    }
}

/// Minimal complete DFA by partition refinement over the reachable part.
/// States are renumbered in breadth-first order from the initial state, so
/// equal languages yield identical automata.
pub fn minimize(a: &Dfa) -> Dfa {
    let k = a.alphabet_size;
    // reachable states
    let mut reach = vec![usize::MAX; a.num_states()];
    let mut order = vec![a.initial];
    reach[a.initial] = 0;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for s in 0..k {
            let r = a.next(q, s);
            if reach[r] == usize::MAX {
                reach[r] = order.len();
                order.push(r);
            }
        }
    }
    let n = order.len();
    let mut class: Vec<usize> = order.iter().map(|&q| usize::from(a.accepting[q])).collect();
    let mut num_classes = if class.iter().all(|&c| c == class[0]) { 1 } else { 2 };
    if num_classes == 1 {
        class.iter_mut().for_each(|c| *c = 0);
    }
    loop {
        let mut sig_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next_class = vec![0; n];
        for i in 0..n {
            let q = order[i];
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[i]);
            for s in 0..k {
                sig.push(class[reach[a.next(q, s)]]);
            }
            let len = sig_index.len();
            next_class[i] = *sig_index.entry(sig).or_insert(len);
        }
        let count = sig_index.len();
        class = next_class;
        if count == num_classes {
            break;
        }
        num_classes = count;
    }
    // renumber classes in BFS order from the initial class
    let mut rename = vec![usize::MAX; num_classes];
    let mut reps = vec![usize::MAX; num_classes];
    for i in 0..n {
        if reps[class[i]] == usize::MAX {
            reps[class[i]] = i;
        }
    }
    let mut bfs = vec![class[0]];
    rename[class[0]] = 0;
    let mut head = 0;
    while head < bfs.len() {
        let c = bfs[head];
        head += 1;
        let q = order[reps[c]];
        for s in 0..k {
            let d = class[reach[a.next(q, s)]];
            if rename[d] == usize::MAX {
                rename[d] = bfs.len();
                bfs.push(d);
            }
        }
    }
    let mut delta = vec![0; num_classes * k];
    let mut accepting = vec![false; num_classes];
    for &c in &bfs {
        let q = order[reps[c]];
        let id = rename[c];
        accepting[id] = a.accepting[q];
        for s in 0..k {
            delta[id * k + s] = rename[class[reach[a.next(q, s)]]];
        }
    }
    Dfa { alphabet_size: k, delta, initial: 0, accepting }
}
