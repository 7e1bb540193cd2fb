//! Sources for `W_e^{<s}` and `Φ_e^{S}_s`: the canonical program numbering,
//! or a mock specification for predictable tests.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::machines::{CompiledProgram, EmptyOracle, Machine, Program};

/// A finite set that only grows, with its members in insertion order.
#[derive(Debug, Clone, Copy)]
pub struct GrowingSet<'a> {
    pub members: &'a BTreeSet<u64>,
    pub order: &'a [u64],
}

/// An oracle computation observed at a stage bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phi {
    Converged { value: u64, use_: Option<u64> },
    Pending,
}

/// Stage-bounded access to `W_e` and `Φ_e`. Calls for the same `e` arrive
/// with non-decreasing `s`, and sets passed in only grow.
pub trait Enumerators {
    /// `x ∈ W_e^{<s}`.
    fn in_w(&mut self, e: usize, x: u64, s: u64) -> bool;

    /// The least `x ∈ W_e^{<s}` with `x > above`.
    fn least_in_w(&mut self, e: usize, above: u64, s: u64) -> Option<u64> {
        (above.saturating_add(1)..s).find(|&x| self.in_w(e, x, s))
    }

    /// Does `W_e^{<s}` meet `set`?
    fn meets_w(&mut self, e: usize, set: GrowingSet<'_>, s: u64) -> bool {
        set.order.iter().any(|&x| self.in_w(e, x, s))
    }

    /// `Φ_e^{oracle}_s(input)`.
    fn phi(&mut self, e: usize, oracle: GrowingSet<'_>, input: u64, s: u64) -> Phi;

    /// Only requirements with index below the cap are considered.
    fn requirement_cap(&self) -> Option<usize> {
        None
    }
}

// ---------------------------------------------------------------------------
// canonical

/// `W_e` and `Φ_e` from program `e` of the numbering. Runs are cached and
/// resumed across stages.
#[derive(Debug, Default)]
pub struct CanonicalEnumerators {
    programs: Vec<Option<Arc<CompiledProgram>>>,
    pools: HashMap<usize, Pool>,
    phis: HashMap<usize, PhiRun>,
    cap: Option<usize>,
}

#[derive(Debug, Default)]
struct Pool {
    live: BTreeMap<u64, Machine>,
    /// input -> halting step
    halted: BTreeMap<u64, u64>,
    dead: HashSet<u64>,
    /// every input in `[lo, hi)` has been started
    covered: Option<(u64, u64)>,
    watch: Vec<u64>,
    seen: usize,
}

#[derive(Debug)]
struct PhiRun {
    input: u64,
    machine: Machine,
    seen: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InputStatus {
    Halted,
    Running,
    Dead,
}

impl CanonicalEnumerators {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        CanonicalEnumerators { cap: Some(cap), ..Self::default() }
    }

    fn program(&mut self, e: usize) -> Arc<CompiledProgram> {
        if self.programs.len() <= e {
            self.programs.resize(e + 1, None);
        }
        Arc::clone(
            self.programs[e].get_or_insert_with(|| CompiledProgram::new(&Program::decode(&BigUint::from(e)))),
        )
    }

    fn pool_status(&mut self, e: usize, x: u64, s: u64) -> InputStatus {
        let program = self.program(e);
        let pool = self.pools.entry(e).or_default();
        pool.status(&program, x, s)
    }
}

impl Pool {
    fn status(&mut self, program: &Arc<CompiledProgram>, x: u64, s: u64) -> InputStatus {
        if let Some(&k) = self.halted.get(&x) {
            return if k <= s { InputStatus::Halted } else { InputStatus::Running };
        }
        if self.dead.contains(&x) {
            return InputStatus::Dead;
        }
        let m = self.live.entry(x).or_insert_with(|| Machine::new(Arc::clone(program), x));
        let out = m.advance(&EmptyOracle, s);
        if out.halted() {
            self.live.remove(&x);
            self.halted.insert(x, out.steps);
            InputStatus::Halted
        } else if m.is_looping() {
            self.live.remove(&x);
            self.dead.insert(x);
            InputStatus::Dead
        } else {
            InputStatus::Running
        }
    }

    fn start(&mut self, program: &Arc<CompiledProgram>, from: u64, to: u64) {
        for x in from..to {
            if !self.halted.contains_key(&x) && !self.dead.contains(&x) {
                self.live.entry(x).or_insert_with(|| Machine::new(Arc::clone(program), x));
            }
        }
    }

    fn cover(&mut self, program: &Arc<CompiledProgram>, lo: u64, hi: u64) {
        if lo >= hi {
            return;
        }
        match self.covered {
            None => {
                self.start(program, lo, hi);
                self.covered = Some((lo, hi));
            }
            Some((a, b)) => {
                if lo < a {
                    self.start(program, lo, a);
                }
                if hi > b {
                    self.start(program, b.max(lo), hi);
                }
                self.covered = Some((a.min(lo), b.max(hi)));
            }
        }
    }
}

impl Enumerators for CanonicalEnumerators {
    fn in_w(&mut self, e: usize, x: u64, s: u64) -> bool {
        x < s && self.pool_status(e, x, s) == InputStatus::Halted
    }

    fn least_in_w(&mut self, e: usize, above: u64, s: u64) -> Option<u64> {
        let lo = above.checked_add(1)?;
        if lo >= s {
            return None;
        }
        let program = self.program(e);
        let pool = self.pools.entry(e).or_default();
        pool.cover(&program, lo, s);
        let best = pool.halted.range(lo..s).find(|&(_, &k)| k <= s).map(|(&x, _)| x);
        let upper = best.unwrap_or(s);
        let pending: Vec<u64> = pool.live.range(lo..upper).map(|(&x, _)| x).collect();
        for x in pending {
            if pool.status(&program, x, s) == InputStatus::Halted {
                return Some(x);
            }
        }
        best
    }

    fn meets_w(&mut self, e: usize, set: GrowingSet<'_>, s: u64) -> bool {
        let program = self.program(e);
        let pool = self.pools.entry(e).or_default();
        pool.watch.extend_from_slice(&set.order[pool.seen..]);
        pool.seen = set.order.len();
        let mut met = false;
        let mut keep = Vec::with_capacity(pool.watch.len());
        for x in std::mem::take(&mut pool.watch) {
            if x >= s {
                keep.push(x);
                continue;
            }
            match pool.status(&program, x, s) {
                InputStatus::Halted => {
                    met = true;
                    keep.push(x);
                }
                InputStatus::Running => keep.push(x),
                InputStatus::Dead => {}
            }
        }
        pool.watch = keep;
        met
    }

    fn phi(&mut self, e: usize, oracle: GrowingSet<'_>, input: u64, s: u64) -> Phi {
        let program = self.program(e);
        let run = self.phis.entry(e).or_insert_with(|| PhiRun {
            input,
            machine: Machine::new(Arc::clone(&program), input),
            seen: 0,
        });
        let fresh = oracle.order[run.seen..].iter().any(|x| run.machine.queried().contains(x));
        if run.input != input || fresh {
            *run = PhiRun { input, machine: Machine::new(program, input), seen: 0 };
        }
        run.seen = oracle.order.len();
        let out = run.machine.advance(oracle.members, s);
        match out.output {
            Some(value) => Phi::Converged { value, use_: out.use_ },
            None => Phi::Pending,
        }
    }

    fn requirement_cap(&self) -> Option<usize> {
        self.cap
    }
}

// ---------------------------------------------------------------------------
// mock

/// A hand-specified `W_e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MockW {
    All,
    Evens,
    Odds,
    #[default]
    None,
    List(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiKeyword {
    Diverge,
}

/// A hand-specified `Φ_e`: `"diverge"`, `{"const": v, "use": u}` (converges
/// to `v` at every stage, `use` optional), or `{"program": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MockPhi {
    Keyword(PhiKeyword),
    Const {
        #[serde(rename = "const")]
        value: u64,
        #[serde(rename = "use", default, skip_serializing_if = "Option::is_none")]
        use_: Option<u64>,
    },
    Program { program: String },
}

impl Default for MockPhi {
    fn default() -> Self {
        MockPhi::Keyword(PhiKeyword::Diverge)
    }
}

/// JSON mock file. Indices missing from `w` enumerate nothing, indices
/// missing from `phi` diverge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MockSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requirements: Option<usize>,
    #[serde(default)]
    pub w: BTreeMap<usize, MockW>,
    #[serde(default)]
    pub phi: BTreeMap<usize, MockPhi>,
}

#[derive(Debug, Clone)]
pub struct MockEnumerators {
    spec: MockSpec,
    programs: HashMap<usize, Program>,
}

impl MockW {
    pub fn contains(&self, x: u64) -> bool {
        match self {
            MockW::All => true,
            MockW::Evens => x.is_multiple_of(2),
            MockW::Odds => x % 2 == 1,
            MockW::None => false,
            MockW::List(v) => v.contains(&x),
        }
    }

    /// The least member greater than `above`.
    pub fn next_above(&self, above: u64) -> Option<u64> {
        let x = above.checked_add(1)?;
        match self {
            MockW::All => Some(x),
            MockW::Evens => Some(x + x % 2),
            MockW::Odds => Some(x + 1 - x % 2),
            MockW::None => None,
            MockW::List(v) => v.iter().copied().filter(|&y| y >= x).min(),
        }
    }
}

impl MockEnumerators {
    pub fn new(spec: MockSpec) -> Result<Self, crate::machines::MachineError> {
        let mut programs = HashMap::new();
        for (&e, phi) in &spec.phi {
            if let MockPhi::Program { program } = phi {
                programs.insert(e, program.parse::<Program>()?);
            }
        }
        Ok(MockEnumerators { spec, programs })
    }

    pub fn spec(&self) -> &MockSpec {
        &self.spec
    }

    fn w(&self, e: usize) -> &MockW {
        static NONE: MockW = MockW::None;
        self.spec.w.get(&e).unwrap_or(&NONE)
    }
}

impl Enumerators for MockEnumerators {
    fn in_w(&mut self, e: usize, x: u64, s: u64) -> bool {
        x < s && self.w(e).contains(x)
    }

    fn least_in_w(&mut self, e: usize, above: u64, s: u64) -> Option<u64> {
        self.w(e).next_above(above).filter(|&x| x < s)
    }

    fn phi(&mut self, e: usize, oracle: GrowingSet<'_>, input: u64, s: u64) -> Phi {
        match self.spec.phi.get(&e) {
            None | Some(MockPhi::Keyword(PhiKeyword::Diverge)) => Phi::Pending,
            Some(&MockPhi::Const { value, use_ }) => Phi::Converged { value, use_ },
            Some(MockPhi::Program { .. }) => {
                let out = crate::machines::oracle_run_bounded(&self.programs[&e], oracle.members, input, s);
                match out.output {
                    Some(value) => Phi::Converged { value, use_: out.use_ },
                    None => Phi::Pending,
                }
            }
        }
    }

    fn requirement_cap(&self) -> Option<usize> {
        self.spec.requirements
    }
}
