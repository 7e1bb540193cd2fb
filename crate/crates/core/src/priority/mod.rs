//! A finite-horizon engine for the priority construction of an r.e. set `S`
//! together with the auxiliary set `A`, plus the pieces used to recover the
//! jump from `S ⊕ A`.
//!
//! Requirements are ranked `P_0 < N_0 < P_1 < N_1 < …` (lower rank, higher
//! priority). At stage `s` positives with `e <= s` and negatives with `e < s`
//! are eligible, and exactly the first one able to act does so.

mod engine;
mod enumerators;
mod limits;

pub use engine::{
    least_witness_above, run_construction, ActionKind, Construction, ConstructionState, NStatus, NegativeState,
    StageAction,
};
pub use enumerators::{
    CanonicalEnumerators, Enumerators, GrowingSet, MockEnumerators, MockPhi, MockSpec, MockW, Phi, PhiKeyword,
};
pub use limits::{decide_witness_limit, disjoint_sum, WitnessLimit};

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Requirement {
    Positive(usize),
    Negative(usize),
}

impl Requirement {
    /// `2e` for positives, `2e + 1` for negatives.
    pub fn rank(&self) -> usize {
        match *self {
            Requirement::Positive(e) => 2 * e,
            Requirement::Negative(e) => 2 * e + 1,
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            Requirement::Positive(e) | Requirement::Negative(e) => e,
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Positive(e) => write!(f, "P{e}"),
            Requirement::Negative(e) => write!(f, "N{e}"),
        }
    }
}
