//! One-dimensional cellular automata on configurations of finite support.

mod config;
mod render;
mod rule;

pub use config::Configuration;
pub use render::{render_orbit, render_pbm};
pub use rule::{LocalRule, RuleFile};

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CaError {
    #[error("rule number {0} out of range 0..=255")]
    RuleNumber(u32),
    #[error("rule maps the all-zero neighborhood to {0}, it must be quiescent")]
    NonQuiescent(u8),
    #[error("invalid rule table: {0}")]
    InvalidTable(String),
    #[error("invalid configuration {text:?}: {reason}")]
    BadConfiguration { text: String, reason: String },
    #[error("rendering requires a binary alphabet, rule has {0} letters")]
    NonBinary(u8),
    #[error("rule file: {0}")]
    RuleFile(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CaError>;

/// Applies the global map once.
pub fn step(rule: &LocalRule, x: &Configuration) -> Configuration {
    let Some((left, right)) = x.support() else {
        return Configuration::empty();
    };
    let w = rule.width() as i64;
    let o = rule.anchor();
    // result(i) depends on x(i+o .. i+o+w); non-zero only if that window meets [left, right)
    let lo = left - o - w + 1;
    let hi = right - o;
    let base = rule.alphabet_size() as usize;
    let modulus = base.pow(rule.width() as u32 - 1);
    let mut index = 0usize;
    // prime the rolling index with the first w-1 letters of the first window
    for p in (lo + o)..(lo + o + w - 1) {
        index = index * base + x.get(p) as usize;
    }
    let mut cells = Vec::with_capacity((hi - lo) as usize);
    for i in lo..hi {
        let incoming = x.get(i + o + w - 1) as usize;
        index = (index % modulus) * base + incoming;
        cells.push(rule.lookup(index));
    }
    Configuration::new(cells, lo)
}

/// A recorded orbit `X_0, ..., X_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub rule: LocalRule,
    pub configurations: Vec<Configuration>,
}

impl Orbit {
    pub fn initial(&self) -> &Configuration {
        &self.configurations[0]
    }

    pub fn steps(&self) -> usize {
        self.configurations.len() - 1
    }
}

pub fn orbit(rule: &LocalRule, x: &Configuration, steps: usize) -> Orbit {
    let mut configurations = Vec::with_capacity(steps + 1);
    configurations.push(x.clone());
    for t in 0..steps {
        let next = step(rule, &configurations[t]);
        configurations.push(next);
    }
    Orbit { rule: rule.clone(), configurations }
}

/// Does `y` occur among `X_0..X_T` of the orbit of `x`? A semi-decision probe:
/// `false` only means "not within the bound".
pub fn reach_bounded(rule: &LocalRule, x: &Configuration, y: &Configuration, steps: usize) -> bool {
    let mut current = x.clone();
    for t in 0..=steps {
        if &current == y {
            return true;
        }
        if t < steps {
            current = step(rule, &current);
        }
    }
    false
}

/// Do the orbits of `x` and `y` share a configuration within `steps` steps
/// of each?
pub fn confluent_bounded(rule: &LocalRule, x: &Configuration, y: &Configuration, steps: usize) -> bool {
    let from_x: HashSet<Configuration> = orbit(rule, x, steps).configurations.into_iter().collect();
    orbit(rule, y, steps).configurations.iter().any(|c| from_x.contains(c))
}
