//! One-way deterministic letter-to-word transducers.
//!
//! A state maps some letters to `(target, output word)` explicitly; every
//! other letter moves to the state's default target with empty output, or,
//! without a default, to an implicit sink that emits nothing further and has
//! no end-of-input output. Transducers are therefore total on their input
//! alphabet.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use super::{ProcessError, Result};
use crate::automata::TrackAlphabet;

/// The interface shared by tabulated transducers and generated ones whose
/// transition function is computed rather than stored.
pub trait FiniteTransducer {
    type State: Clone;

    fn input_size(&self) -> usize;
    fn output_size(&self) -> usize;
    fn start(&self) -> Self::State;
    /// Appends the output for `letter` and returns the next state, `None`
    /// for the sink.
    fn step(&self, state: &Self::State, letter: usize, out: &mut Vec<usize>) -> Option<Self::State>;
    /// Appends the end-of-input output.
    fn finish(&self, state: &Self::State, out: &mut Vec<usize>);
    /// Upper bound on the output length of one transition or of `finish`.
    fn output_bound(&self) -> usize;
}

/// Runs `t` over `word`.
pub fn apply<T: FiniteTransducer + ?Sized>(t: &T, word: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(word.len() + t.output_bound());
    let mut state = Some(t.start());
    for &a in word {
        if a >= t.input_size() {
            return Err(ProcessError::LetterOutOfRange { letter: a, alphabet_size: t.input_size() });
        }
        if let Some(q) = &state {
            state = t.step(q, a, &mut out);
        }
    }
    if let Some(q) = &state {
        t.finish(q, &mut out);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct State {
    edges: BTreeMap<usize, (usize, Vec<usize>)>,
    default: Option<usize>,
    final_output: Vec<usize>,
}

/// A tabulated transducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    input_size: usize,
    output_size: usize,
    initial: usize,
    states: Vec<State>,
}

impl Transducer {
    /// `num_states` states with no edges, no defaults, empty final output.
    pub fn new(input_size: usize, output_size: usize, num_states: usize) -> Result<Self> {
        if num_states == 0 {
            return Err(ProcessError::Malformed("a transducer needs at least one state".into()));
        }
        Ok(Transducer { input_size, output_size, initial: 0, states: vec![State::default(); num_states] })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q >= self.states.len() {
            return Err(ProcessError::Malformed(format!("state {q} out of range")));
        }
        Ok(())
    }

    fn check_output(&self, word: &[usize]) -> Result<()> {
        if let Some(&b) = word.iter().find(|&&b| b >= self.output_size) {
            return Err(ProcessError::LetterOutOfRange { letter: b, alphabet_size: self.output_size });
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: usize) -> Result<()> {
        self.check_state(q)?;
        self.initial = q;
        Ok(())
    }

    pub fn set_edge(&mut self, q: usize, letter: usize, target: usize, output: Vec<usize>) -> Result<()> {
        self.check_state(q)?;
        self.check_state(target)?;
        if letter >= self.input_size {
            return Err(ProcessError::LetterOutOfRange { letter, alphabet_size: self.input_size });
        }
        self.check_output(&output)?;
        self.states[q].edges.insert(letter, (target, output));
        Ok(())
    }

    pub fn set_default(&mut self, q: usize, target: Option<usize>) -> Result<()> {
        self.check_state(q)?;
        if let Some(r) = target {
            self.check_state(r)?;
        }
        self.states[q].default = target;
        Ok(())
    }

    pub fn set_final(&mut self, q: usize, output: Vec<usize>) -> Result<()> {
        self.check_state(q)?;
        self.check_output(&output)?;
        self.states[q].final_output = output;
        Ok(())
    }

    /// A one-state transducer mapping each letter `a` to `f(a)`.
    pub fn letter_map(input_size: usize, output_size: usize, f: impl Fn(usize) -> Vec<usize>) -> Result<Self> {
        let mut t = Transducer::new(input_size, output_size, 1)?;
        for a in 0..input_size {
            t.set_edge(0, a, 0, f(a))?;
        }
        Ok(t)
    }

    pub fn identity(alphabet_size: usize) -> Self {
        Transducer::letter_map(alphabet_size, alphabet_size, |a| vec![a]).expect("letters in range")
    }

    /// Emits nothing on every input.
    pub fn erasing(input_size: usize, output_size: usize) -> Self {
        let mut t = Transducer::new(input_size, output_size, 1).expect("one state");
        t.states[0].default = Some(0);
        t
    }

    /// Column symbol ↦ its letter on `track`.
    pub fn projection(tracks: TrackAlphabet, track: usize) -> Result<Self> {
        if track >= tracks.arity() {
            return Err(ProcessError::Malformed(format!("track {track} out of range for arity {}", tracks.arity())));
        }
        Transducer::letter_map(tracks.size(), tracks.base(), |c| vec![tracks.letter(c, track)])
    }

    /// The route of `letter` from `q`: `(target or sink, output)`.
    pub fn transition(&self, q: usize, letter: usize) -> (Option<usize>, &[usize]) {
        match self.states[q].edges.get(&letter) {
            Some((r, out)) => (Some(*r), out),
            None => (self.states[q].default, &[]),
        }
    }

    pub fn final_output(&self, q: usize) -> &[usize] {
        &self.states[q].final_output
    }

    /// `second ∘ self`: apply `self`, then `second`.
    pub fn then(&self, second: &Transducer) -> Result<Transducer> {
        if self.output_size != second.input_size {
            return Err(ProcessError::AlphabetMismatch { left: self.output_size, right: second.input_size });
        }
        // composite states are (Some p, q), or (None, q) once the first machine
        // has sunk; (None, MAX) stands for the sink reached through an output word
        let mut index: HashMap<(Option<usize>, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        fn intern(
            index: &mut HashMap<(Option<usize>, usize), usize>,
            queue: &mut VecDeque<(Option<usize>, usize)>,
            key: (Option<usize>, usize),
        ) -> usize {
            let next = index.len();
            *index.entry(key).or_insert_with(|| {
                queue.push_back(key);
                next
            })
        }
        let run_second = |mut q: usize, word: &[usize], out: &mut Vec<usize>| -> Option<usize> {
            for &b in word {
                let (r, o) = second.transition(q, b);
                out.extend_from_slice(o);
                q = r?;
            }
            Some(q)
        };
        intern(&mut index, &mut queue, (Some(self.initial), second.initial));
        let mut states: Vec<State> = Vec::new();
        while let Some(key) = queue.pop_front() {
            let mut st = State::default();
            match key {
                (None, usize::MAX) => {}
                (None, q) => {
                    st.default = Some(index[&key]);
                    st.final_output = second.final_output(q).to_vec();
                }
                (Some(p), q) => {
                    for (&a, (p2, u)) in &self.states[p].edges {
                        let mut v = Vec::new();
                        if let Some(q2) = run_second(q, u, &mut v) {
                            let target = intern(&mut index, &mut queue, (Some(*p2), q2));
                            st.edges.insert(a, (target, v));
                        } else {
                            // second machine sunk: emits what it produced, then nothing
                            let sink = intern(&mut index, &mut queue, (None, usize::MAX));
                            st.edges.insert(a, (sink, v));
                        }
                    }
                    st.default = Some(intern(&mut index, &mut queue, (self.states[p].default, q)));
                    let mut v = Vec::new();
                    if let Some(q2) = run_second(q, &self.states[p].final_output, &mut v) {
                        v.extend_from_slice(second.final_output(q2));
                    }
                    st.final_output = v;
                }
            }
            states.push(st);
        }
        Ok(Transducer { input_size: self.input_size, output_size: second.output_size, initial: 0, states })
    }

    /// Text fixture. Header lines `input N`, `output N`, `states N`,
    /// `initial q`; then `q a r : out…` edges, `default q r` and
    /// `final q : out…` lines. `#` starts a comment.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        writeln!(s, "input {}\noutput {}\nstates {}\ninitial {}", self.input_size, self.output_size, self.states.len(), self.initial)
            .unwrap();
        for (q, st) in self.states.iter().enumerate() {
            if let Some(r) = st.default {
                writeln!(s, "default {q} {r}").unwrap();
            }
            if !st.final_output.is_empty() {
                writeln!(s, "final {q} :{}", words(&st.final_output)).unwrap();
            }
            for (a, (r, out)) in &st.edges {
                writeln!(s, "{q} {a} {r} :{}", words(out)).unwrap();
            }
        }
        s
    }

    pub fn from_fixture(text: &str) -> Result<Self> {
        let mut header: HashMap<&str, usize> = HashMap::new();
        let mut body = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, out) = match line.split_once(':') {
                Some((h, o)) => (h, Some(o)),
                None => (line, None),
            };
            let fields: Vec<&str> = head.split_whitespace().collect();
            let bad = |m: &str| ProcessError::Parse { line: i + 1, message: m.to_string() };
            let nums = |xs: &[&str]| -> Result<Vec<usize>> {
                xs.iter().map(|x| x.parse::<usize>().map_err(|_| bad(&format!("not a number: {x:?}")))).collect()
            };
            let out = match out {
                Some(o) => Some(nums(&o.split_whitespace().collect::<Vec<_>>())?),
                None => None,
            };
            match fields.first().copied() {
                Some(k @ ("input" | "output" | "states" | "initial")) if fields.len() == 2 && out.is_none() => {
                    header.insert(k, nums(&fields[1..])?[0]);
                }
                Some("default") if fields.len() == 3 && out.is_none() => body.push((i + 1, 'd', nums(&fields[1..])?, vec![])),
                Some("final") if fields.len() == 2 => body.push((i + 1, 'f', nums(&fields[1..])?, out.unwrap_or_default())),
                _ if fields.len() == 3 && out.is_some() => body.push((i + 1, 'e', nums(&fields)?, out.unwrap())),
                _ => return Err(bad("unrecognized line")),
            }
        }
        let need = |k: &str| header.get(k).copied().ok_or_else(|| ProcessError::Parse { line: 0, message: format!("missing `{k}`") });
        let mut t = Transducer::new(need("input")?, need("output")?, need("states")?)?;
        t.set_initial(header.get("initial").copied().unwrap_or(0))?;
        for (line, kind, n, out) in body {
            let at = |e: ProcessError| ProcessError::Parse { line, message: e.to_string() };
            match kind {
                'd' => t.set_default(n[0], Some(n[1])).map_err(at)?,
                'f' => t.set_final(n[0], out).map_err(at)?,
                _ => t.set_edge(n[0], n[1], n[2], out).map_err(at)?,
            }
        }
        Ok(t)
    }
}

fn words(xs: &[usize]) -> String {
    xs.iter().map(|x| format!(" {x}")).collect()
}

impl FiniteTransducer for Transducer {
    type State = usize;

    fn input_size(&self) -> usize {
        self.input_size
    }

    fn output_size(&self) -> usize {
        self.output_size
    }

    fn start(&self) -> usize {
        self.initial
    }

    fn step(&self, &q: &usize, letter: usize, out: &mut Vec<usize>) -> Option<usize> {
        let (r, o) = self.transition(q, letter);
        out.extend_from_slice(o);
        r
    }

    fn finish(&self, &q: &usize, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.states[q].final_output);
    }

    fn output_bound(&self) -> usize {
        self.states
            .iter()
            .flat_map(|s| s.edges.values().map(|(_, o)| o.len()).chain([s.final_output.len()]))
            .max()
            .unwrap_or(0)
    }
}
