//! The stage engine.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use super::enumerators::{Enumerators, GrowingSet, Phi};
use super::Requirement;
use crate::machines::pair;

/// Per-negative bookkeeping.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NegativeState {
    pub witness: Option<u64>,
    pub restraint: Option<u64>,
    pub injuries: u32,
    /// `(stage, witness)` for every assignment.
    pub assignments: Vec<(u64, u64)>,
    pub injury_stages: Vec<u64>,
}

/// The construction after some number of stages.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionState {
    stage: u64,
    s_members: BTreeSet<u64>,
    s_order: Vec<u64>,
    a_members: BTreeSet<u64>,
    a_order: Vec<u64>,
    /// element placed in S by each positive
    positives: Vec<Option<u64>>,
    negatives: Vec<NegativeState>,
    max_used: u64,
}

impl ConstructionState {
    /// Index of the next stage to run; equals the number of stages run.
    pub fn stage(&self) -> u64 {
        self.stage
    }

    pub fn s_approx(&self) -> &BTreeSet<u64> {
        &self.s_members
    }

    pub fn a_approx(&self) -> &BTreeSet<u64> {
        &self.a_members
    }

    /// S in enumeration order.
    pub fn s_order(&self) -> &[u64] {
        &self.s_order
    }

    pub fn a_order(&self) -> &[u64] {
        &self.a_order
    }

    pub fn s_view(&self) -> GrowingSet<'_> {
        GrowingSet { members: &self.s_members, order: &self.s_order }
    }

    pub fn positive(&self, e: usize) -> Option<u64> {
        self.positives.get(e).copied().flatten()
    }

    pub fn negative(&self, e: usize) -> NegativeState {
        self.negatives.get(e).cloned().unwrap_or_default()
    }

    pub fn negatives(&self) -> &[NegativeState] {
        &self.negatives
    }

    pub fn witness(&self, e: usize) -> Option<u64> {
        self.negatives.get(e).and_then(|n| n.witness)
    }

    pub fn restraint(&self, e: usize) -> Option<u64> {
        self.negatives.get(e).and_then(|n| n.restraint)
    }

    pub fn injuries(&self, e: usize) -> u32 {
        self.negatives.get(e).map_or(0, |n| n.injuries)
    }

    pub fn max_used(&self) -> u64 {
        self.max_used
    }

    fn negative_mut(&mut self, e: usize) -> &mut NegativeState {
        if self.negatives.len() <= e {
            self.negatives.resize(e + 1, NegativeState::default());
        }
        &mut self.negatives[e]
    }

    fn mention(&mut self, x: u64) {
        self.max_used = self.max_used.max(x);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NStatus {
    Satisfied,
    NeedsWitness,
    ReadyToDiagonalize,
    Waiting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    #[serde(rename = "enumerate_S")]
    EnumerateS,
    AssignWitness,
    #[serde(rename = "enumerate_A")]
    EnumerateA,
    Idle,
}

/// One JSONL log record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageAction {
    pub stage: u64,
    pub action: ActionKind,
    #[serde(serialize_with = "serialize_requirement")]
    pub requirement: Option<Requirement>,
    /// x for enumerate_S, w for assign_witness and enumerate_A
    pub element: Option<u64>,
    /// the acting negative's witness after the action
    pub witness: Option<u64>,
    /// the acting negative's restraint after the action
    pub restraint: Option<u64>,
    /// negatives injured by this action
    pub injuries: Vec<usize>,
    pub s_size: usize,
    pub a_size: usize,
}

fn serialize_requirement<S: serde::Serializer>(r: &Option<Requirement>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// A construction driven by a fixed choice of enumerators.
#[derive(Debug)]
pub struct Construction<E> {
    state: ConstructionState,
    enumerators: E,
    /// P_e found `S ∩ W_e ≠ ∅`; stays true as both sets only grow
    p_met: Vec<bool>,
}

impl<E: Enumerators> Construction<E> {
    pub fn new(enumerators: E) -> Self {
        Construction { state: ConstructionState::default(), enumerators, p_met: Vec::new() }
    }

    pub fn state(&self) -> &ConstructionState {
        &self.state
    }

    pub fn enumerators_mut(&mut self) -> &mut E {
        &mut self.enumerators
    }

    pub fn into_state(self) -> ConstructionState {
        self.state
    }

    fn cap(&self) -> usize {
        self.enumerators.requirement_cap().unwrap_or(usize::MAX)
    }

    /// P_e's candidate at the current stage: `None` if `S ∩ W_e^{<s}` is
    /// non-empty, else the least `x ∈ W_e^{<s}` above `2e` and above every
    /// set restraint of a higher-priority negative.
    pub fn p_requires_attention(&mut self, e: usize) -> Option<u64> {
        let s = self.state.stage;
        if self.state.positive(e).is_some() || self.p_met.get(e).copied().unwrap_or(false) {
            return None;
        }
        if self.enumerators.meets_w(e, self.state.s_view(), s) {
            if self.p_met.len() <= e {
                self.p_met.resize(e + 1, false);
            }
            self.p_met[e] = true;
            return None;
        }
        let floor = (0..e.min(self.state.negatives.len()))
            .filter_map(|i| self.state.negatives[i].restraint)
            .fold(2 * e as u64, u64::max);
        self.enumerators.least_in_w(e, floor, s)
    }

    /// N_e's status at the current stage, with the converged computation's
    /// use when ready.
    pub fn n_status(&mut self, e: usize) -> (NStatus, Option<u64>) {
        let s = self.state.stage;
        let Some(w) = self.state.witness(e) else {
            return (NStatus::NeedsWitness, None);
        };
        let in_a = self.state.a_members.contains(&w);
        let phi = self.enumerators.phi(e, self.state.s_view(), w, s);
        let status = match (phi, in_a) {
            (Phi::Converged { value: 0, use_ }, false) => return (NStatus::ReadyToDiagonalize, use_),
            (Phi::Converged { .. }, false) => NStatus::Satisfied,
            (Phi::Converged { value, .. }, true) if value != 1 => NStatus::Satisfied,
            (Phi::Pending, true) => NStatus::Satisfied,
            _ => NStatus::Waiting,
        };
        (status, None)
    }

    /// Runs one stage: the highest-priority requirement that can act does,
    /// and nothing else changes.
    pub fn stage_step(&mut self) -> StageAction {
        let s = self.state.stage;
        self.state.mention(s);
        let mut action = None;
        for e in 0..self.cap() {
            if e as u64 > s {
                break;
            }
            if let Some(x) = self.p_requires_attention(e) {
                action = Some(self.act_positive(e, x));
                break;
            }
            if (e as u64) < s {
                match self.n_status(e) {
                    (NStatus::NeedsWitness, _) => {
                        action = Some(self.assign_witness(e));
                        break;
                    }
                    (NStatus::ReadyToDiagonalize, use_) => {
                        action = Some(self.diagonalize(e, use_));
                        break;
                    }
                    _ => {}
                }
            }
        }
        let action = action.unwrap_or(StageAction {
            stage: s,
            action: ActionKind::Idle,
            requirement: None,
            element: None,
            witness: None,
            restraint: None,
            injuries: Vec::new(),
            s_size: 0,
            a_size: 0,
        });
        self.state.stage += 1;
        StageAction { s_size: self.state.s_members.len(), a_size: self.state.a_members.len(), ..action }
    }

    fn act_positive(&mut self, e: usize, x: u64) -> StageAction {
        let st = &mut self.state;
        st.s_members.insert(x);
        st.s_order.push(x);
        if st.positives.len() <= e {
            st.positives.resize(e + 1, None);
        }
        st.positives[e] = Some(x);
        st.mention(x);
        let stage = st.stage;
        let mut injured = Vec::new();
        for (i, n) in st.negatives.iter_mut().enumerate().skip(e) {
            if n.restraint.is_some_and(|r| r >= x) {
                n.witness = None;
                n.restraint = None;
                n.injuries += 1;
                n.injury_stages.push(stage);
                injured.push(i);
            }
        }
        StageAction {
            stage,
            action: ActionKind::EnumerateS,
            requirement: Some(Requirement::Positive(e)),
            element: Some(x),
            witness: None,
            restraint: None,
            injuries: injured,
            s_size: 0,
            a_size: 0,
        }
    }

    fn assign_witness(&mut self, e: usize) -> StageAction {
        let st = &mut self.state;
        let bound = st.max_used;
        let w = least_witness_above(e as u64, bound);
        st.mention(w);
        let stage = st.stage;
        let n = st.negative_mut(e);
        n.witness = Some(w);
        n.assignments.push((stage, w));
        StageAction {
            stage,
            action: ActionKind::AssignWitness,
            requirement: Some(Requirement::Negative(e)),
            element: Some(w),
            witness: Some(w),
            restraint: n.restraint,
            injuries: Vec::new(),
            s_size: 0,
            a_size: 0,
        }
    }

    fn diagonalize(&mut self, e: usize, use_: Option<u64>) -> StageAction {
        let st = &mut self.state;
        let w = st.witness(e).expect("ready negatives have a witness");
        st.a_members.insert(w);
        st.a_order.push(w);
        if let Some(u) = use_ {
            st.mention(u);
        }
        let stage = st.stage;
        let n = st.negative_mut(e);
        n.restraint = use_;
        StageAction {
            stage,
            action: ActionKind::EnumerateA,
            requirement: Some(Requirement::Negative(e)),
            element: Some(w),
            witness: Some(w),
            restraint: use_,
            injuries: Vec::new(),
            s_size: 0,
            a_size: 0,
        }
    }

    /// Runs `stages` more stages, writing one JSON line per stage to `log`.
    pub fn run_logged(&mut self, stages: u64, mut log: impl Write) -> std::io::Result<()> {
        for _ in 0..stages {
            let a = self.stage_step();
            serde_json::to_writer(&mut log, &a)?;
            log.write_all(b"\n")?;
        }
        log.flush()
    }

    pub fn run(&mut self, stages: u64) -> Vec<StageAction> {
        (0..stages).map(|_| self.stage_step()).collect()
    }
}

/// Least `⟨e, u⟩ > bound`.
pub fn least_witness_above(e: u64, bound: u64) -> u64 {
    // ⟨e, u⟩ is increasing in u; step to the right diagonal, then walk
    let (mut lo, mut hi) = (0u64, 1u64);
    while pair(e, hi).is_some_and(|z| z <= bound) {
        lo = hi;
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pair(e, mid).is_some_and(|z| z <= bound) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    pair(e, lo).expect("witness fits in u64")
}

/// `T` stages from the empty state.
pub fn run_construction<E: Enumerators>(stages: u64, enumerators: E) -> (ConstructionState, Vec<StageAction>) {
    let mut c = Construction::new(enumerators);
    let log = c.run(stages);
    (c.into_state(), log)
}
