//! Finite automata over small integer alphabets.
//!
//! Symbols are dense indices `0..alphabet_size` and states are dense indices
//! `0..num_states`. No labels are carried through constructions, so every
//! operation is a pure function of its inputs and produces deterministic
//! state numberings.
//!
//! Multi-track (convolution) alphabets are layered on top through
//! [`TrackAlphabet`]: a column of `k` letters over a base alphabet of size `b`
//! is the single symbol `sum(letter_i * b^i)`. The all-zero column is always
//! symbol `0`.

mod dfa;
mod dump;
mod nfa;
mod tracks;

pub use dfa::{complement, determinize, minimize, Dfa};
pub use dump::{parse_dump, DumpFormat};
pub use nfa::{are_equivalent, is_empty, product, Nfa, ProductMode};
pub use tracks::{canonical_language, cylindrify_track, normalize, project_track, TrackAlphabet};

use thiserror::Error;

/// Errors raised by automaton constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("alphabet mismatch: {left} vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("track index {index} out of range for arity {arity}")]
    ArityOutOfRange { arity: usize, index: usize },
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("state {state} out of range ({num_states} states)")]
    InvalidState { state: usize, num_states: usize },
    #[error("symbol {symbol} out of range ({alphabet_size} symbols)")]
    InvalidSymbol { symbol: usize, alphabet_size: usize },
    #[error("automaton alphabet has {actual} symbols, track alphabet expects {expected}")]
    TrackMismatch { expected: usize, actual: usize },
    #[error("dump line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, AutomataError>;
