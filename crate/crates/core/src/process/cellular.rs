//! Cellular automata as processes on finite words.
//!
//! A configuration is carried as its cell window. One pass emits, for every
//! input position, the local rule applied to the window ending there (a
//! delay of `w - 1` letters, zero-filled on the left), and flushes `w - 1`
//! zeros at the end. The word therefore grows by `w - 1` per step and is
//! never trimmed; its left end moves by `-(anchor + w - 1)` per step.

use super::{Process, Transducer};
use crate::ca::{Configuration, LocalRule};

#[derive(Debug, Clone)]
pub struct CaProcess {
    pub process: Process<Transducer>,
    rule: LocalRule,
    offset: i64,
}

pub fn ca_to_process(rule: &LocalRule, x: &Configuration) -> CaProcess {
    let n = rule.alphabet_size() as usize;
    let w = rule.width();
    // state: previous w-1 letters as a base-n number, oldest most significant
    let states = n.pow(w as u32 - 1);
    let mut t = Transducer::new(n, n, states).expect("at least one state");
    for q in 0..states {
        for a in 0..n {
            let index = q * n + a;
            t.set_edge(q, a, index % states, vec![rule.lookup(index) as usize]).expect("in range");
        }
        let mut flush = Vec::with_capacity(w - 1);
        let mut s = q;
        for _ in 0..w - 1 {
            flush.push(rule.lookup(s * n) as usize);
            s = (s * n) % states;
        }
        t.set_final(q, flush).expect("in range");
    }
    let initial = x.cells().iter().map(|&c| c as usize).collect();
    CaProcess {
        process: Process::new(t, initial).expect("square alphabet"),
        rule: rule.clone(),
        offset: x.offset(),
    }
}

impl CaProcess {
    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    /// The configuration represented by `X_t`.
    pub fn decode(&self, t: usize, word: &[usize]) -> Configuration {
        let shift = self.rule.anchor() + self.rule.width() as i64 - 1;
        Configuration::new(word.iter().map(|&c| c as u8).collect(), self.offset - t as i64 * shift)
    }

    /// Decoded `X_0, …, X_T`.
    pub fn orbit(&self, steps: usize) -> Vec<Configuration> {
        self.process.run(steps).iter().enumerate().map(|(t, w)| self.decode(t, w)).collect()
    }
}
