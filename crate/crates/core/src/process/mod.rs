//! Computational processes: a computor transducer iterated on an initial
//! word, observed through constant-space transducers.

mod cellular;
mod compiled;
mod construction;
mod smn;
mod transducer;

pub use cellular::{ca_to_process, CaProcess};
pub use compiled::{
    compile_construction, decode_numerals, CompiledComputor, CompiledConstruction, Observation, PassState, TrackKind,
    OBS_HASH, OBS_ONE, OBS_TICK,
};
pub use construction::{ConstructionProgram, Layout, MachineState, Op, OutSym, StageSnapshot, MAX_REQUIREMENTS};
pub use smn::{smn_program, smn_reduction};
pub use transducer::{apply, FiniteTransducer, Transducer};

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcessError {
    #[error("letter {letter} outside alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    #[error("alphabet mismatch: {left} output letters feed {right} input letters")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("malformed transducer: {0}")]
    Malformed(String),
    #[error("fixture line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot compile construction: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, ProcessError>;

/// `⟨τ, X⟩`. The computor maps words over its alphabet to words over the
/// same alphabet.
#[derive(Debug, Clone)]
pub struct Process<T = Transducer> {
    computor: T,
    initial: Vec<usize>,
}

/// `{ ρ(X_t) : t ≤ T }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationSample {
    pub horizon: usize,
    pub words: BTreeSet<Vec<usize>>,
}

impl<T: FiniteTransducer> Process<T> {
    pub fn new(computor: T, initial: Vec<usize>) -> Result<Self> {
        if computor.input_size() != computor.output_size() {
            return Err(ProcessError::AlphabetMismatch { left: computor.output_size(), right: computor.input_size() });
        }
        if let Some(&a) = initial.iter().find(|&&a| a >= computor.input_size()) {
            return Err(ProcessError::LetterOutOfRange { letter: a, alphabet_size: computor.input_size() });
        }
        Ok(Process { computor, initial })
    }

    pub fn computor(&self) -> &T {
        &self.computor
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    /// `X_{t+1} = τ(X_t)`.
    pub fn step(&self, x: &[usize]) -> Vec<usize> {
        apply(&self.computor, x).expect("computor preserves its alphabet")
    }

    /// `X_0, …, X_T`.
    pub fn run(&self, steps: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(self.initial.clone());
        for t in 0..steps {
            let next = self.step(&out[t]);
            out.push(next);
        }
        out
    }

    /// Images of `X_0, …, X_T` under `observer`; duplicates collapse.
    pub fn observe(&self, observer: &impl FiniteTransducer, horizon: usize) -> Result<ObservationSample> {
        if observer.input_size() != self.computor.output_size() {
            return Err(ProcessError::AlphabetMismatch { left: self.computor.output_size(), right: observer.input_size() });
        }
        let mut words = BTreeSet::new();
        let mut x = self.initial.clone();
        for t in 0..=horizon {
            words.insert(apply(observer, &x)?);
            if t < horizon {
                x = self.step(&x);
            }
        }
        Ok(ObservationSample { horizon, words })
    }
}
