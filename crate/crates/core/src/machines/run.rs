//! Bounded interpretation. Input goes in register 0, every other register
//! starts at 0. A step is one executed INC, DECJZ or QUERY; reaching a HALT
//! instruction or program counter `len` halts without consuming a step.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{Instruction, MachineError, Program};

/// Characteristic-function access to a set of naturals.
pub trait Oracle {
    fn contains(&self, x: u64) -> bool;
}

impl Oracle for BTreeSet<u64> {
    fn contains(&self, x: u64) -> bool {
        BTreeSet::contains(self, &x)
    }
}

impl Oracle for HashSet<u64> {
    fn contains(&self, x: u64) -> bool {
        HashSet::contains(self, &x)
    }
}

impl<F: Fn(u64) -> bool> Oracle for F {
    fn contains(&self, x: u64) -> bool {
        self(x)
    }
}

/// The empty set.
pub struct EmptyOracle;

impl Oracle for EmptyOracle {
    fn contains(&self, _: u64) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Halted,
    Running,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunOutcome {
    pub status: Status,
    /// Register 0, present once halted.
    pub output: Option<u64>,
    pub steps: u64,
    /// Largest value queried, if any QUERY executed.
    pub use_: Option<u64>,
}

impl RunOutcome {
    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }
}

/// Program with registers renamed to `0..k` (register 0 stays 0).
#[derive(Debug)]
struct Compiled {
    code: Vec<Op>,
    registers: usize,
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Inc(usize),
    DecJz(usize, usize),
    Query(usize, usize),
    Halt,
}

impl Compiled {
    fn new(p: &Program) -> Self {
        let regs = p.registers();
        let dense = |r: u64| regs.binary_search(&r).unwrap();
        let code = p
            .instructions()
            .iter()
            .map(|i| match *i {
                Instruction::Inc(r) => Op::Inc(dense(r)),
                Instruction::DecJz(r, l) => Op::DecJz(dense(r), l),
                Instruction::Query(r, l) => Op::Query(dense(r), l),
                Instruction::Halt => Op::Halt,
            })
            .collect();
        Compiled { code, registers: regs.len() }
    }
}

/// Snapshot for loop detection. If the machine revisits `pc` with every
/// register at least its snapshot value, and every register that grew was
/// neither found zero nor queried since the snapshot, the segment in between
/// replays forever.
#[derive(Debug, Clone)]
struct Snapshot {
    pc: usize,
    regs: Vec<u64>,
    sensitive: Vec<bool>,
}

/// A resumable run. Advancing to a larger bound continues where the last
/// call stopped; the outcome at bound `s` never depends on earlier calls.
#[derive(Debug, Clone)]
pub struct Machine {
    program: Arc<CompiledProgram>,
    pc: usize,
    regs: Vec<u64>,
    steps: u64,
    use_: Option<u64>,
    queried: BTreeSet<u64>,
    halted: bool,
    looping: bool,
    snapshot: Option<Snapshot>,
}

/// A program prepared for interpretation; share it between many machines.
#[derive(Debug)]
pub struct CompiledProgram {
    inner: Compiled,
    has_query: bool,
}

impl CompiledProgram {
    pub fn new(p: &Program) -> Arc<Self> {
        Arc::new(CompiledProgram { inner: Compiled::new(p), has_query: p.has_query() })
    }

    pub fn has_query(&self) -> bool {
        self.has_query
    }
}

impl Machine {
    pub fn new(program: Arc<CompiledProgram>, input: u64) -> Self {
        let mut regs = vec![0; program.inner.registers];
        regs[0] = input;
        let mut m = Machine {
            program,
            pc: 0,
            regs,
            steps: 0,
            use_: None,
            queried: BTreeSet::new(),
            halted: false,
            looping: false,
            snapshot: None,
        };
        m.check_halt();
        m
    }

    pub fn from_program(p: &Program, input: u64) -> Self {
        Machine::new(CompiledProgram::new(p), input)
    }

    fn check_halt(&mut self) {
        let code = &self.program.inner.code;
        self.halted = self.pc >= code.len() || matches!(code[self.pc], Op::Halt);
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Largest value queried so far.
    pub fn max_query(&self) -> Option<u64> {
        self.use_
    }

    /// Every value queried so far; the run so far depends on the oracle only
    /// through these.
    pub fn queried(&self) -> &BTreeSet<u64> {
        &self.queried
    }

    /// Proven never to halt against the oracle used so far.
    pub fn is_looping(&self) -> bool {
        self.looping
    }

    pub fn outcome(&self) -> RunOutcome {
        RunOutcome {
            status: if self.halted { Status::Halted } else { Status::Running },
            output: self.halted.then(|| self.regs[0]),
            steps: self.steps,
            use_: self.use_,
        }
    }

    /// Outcome at `bound`, which must be at least the steps already taken.
    /// The oracle must agree with earlier calls on every value queried so far.
    pub fn advance(&mut self, oracle: &impl Oracle, bound: u64) -> RunOutcome {
        debug_assert!(bound >= self.steps || self.halted);
        let program = Arc::clone(&self.program);
        let code = &program.inner.code;
        while !self.halted && self.steps < bound {
            if self.looping {
                return RunOutcome { steps: bound, ..self.outcome() };
            }
            match code[self.pc] {
                Op::Inc(r) => {
                    self.regs[r] += 1;
                    self.pc += 1;
                }
                Op::DecJz(r, l) => {
                    if self.regs[r] == 0 {
                        self.mark_sensitive(r);
                        self.pc = l;
                    } else {
                        self.regs[r] -= 1;
                        self.pc += 1;
                    }
                }
                Op::Query(r, l) => {
                    let v = self.regs[r];
                    self.mark_sensitive(r);
                    self.use_ = Some(self.use_.map_or(v, |u| u.max(v)));
                    self.queried.insert(v);
                    self.pc = if oracle.contains(v) { l } else { self.pc + 1 };
                }
                Op::Halt => unreachable!("halt is detected before stepping"),
            }
            self.steps += 1;
            self.check_halt();
            if !self.halted {
                self.watch_loop();
            }
        }
        self.outcome()
    }

    fn mark_sensitive(&mut self, r: usize) {
        if let Some(s) = &mut self.snapshot {
            s.sensitive[r] = true;
        }
    }

    fn watch_loop(&mut self) {
        if let Some(s) = &self.snapshot {
            if s.pc == self.pc
                && self
                    .regs
                    .iter()
                    .zip(&s.regs)
                    .zip(&s.sensitive)
                    .all(|((&now, &then), &sens)| now == then || (now > then && !sens))
            {
                self.looping = true;
                return;
            }
        }
        // retake the snapshot at every power of two
        if self.steps.is_power_of_two() {
            self.snapshot = Some(Snapshot {
                pc: self.pc,
                regs: self.regs.clone(),
                sensitive: vec![false; self.regs.len()],
            });
        }
    }
}

/// Plain run; executing a QUERY is an error.
pub fn run_bounded(p: &Program, input: u64, bound: u64) -> Result<RunOutcome, MachineError> {
    let mut m = Machine::from_program(p, input);
    let out = m.advance(&EmptyOracle, bound);
    if out.use_.is_some() {
        return Err(MachineError::OracleRequired);
    }
    Ok(out)
}

pub fn oracle_run_bounded(p: &Program, oracle: &impl Oracle, input: u64, bound: u64) -> RunOutcome {
    Machine::from_program(p, input).advance(oracle, bound)
}

/// `{x < s : p halts on x within s steps}`. A QUERY in a plain enumeration
/// is answered by the empty oracle.
pub fn we_approx(p: &Program, s: u64) -> BTreeSet<u64> {
    let compiled = CompiledProgram::new(p);
    (0..s)
        .filter(|&x| Machine::new(Arc::clone(&compiled), x).advance(&EmptyOracle, s).halted())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prog(text: &str) -> Program {
        text.parse().unwrap()
    }

    /// Reference interpreter without caching or loop detection.
    fn reference(p: &Program, oracle: &BTreeSet<u64>, input: u64, bound: u64) -> RunOutcome {
        let mut regs = std::collections::HashMap::new();
        regs.insert(0u64, input);
        let (mut pc, mut steps, mut use_) = (0usize, 0u64, None::<u64>);
        loop {
            let ins = p.instructions().get(pc).copied().unwrap_or(Instruction::Halt);
            if ins == Instruction::Halt {
                return RunOutcome { status: Status::Halted, output: Some(regs[&0]), steps, use_ };
            }
            if steps == bound {
                return RunOutcome { status: Status::Running, output: None, steps, use_ };
            }
            match ins {
                Instruction::Inc(r) => {
                    *regs.entry(r).or_insert(0) += 1;
                    pc += 1;
                }
                Instruction::DecJz(r, l) => {
                    let v = regs.entry(r).or_insert(0);
                    if *v == 0 {
                        pc = l;
                    } else {
                        *v -= 1;
                        pc += 1;
                    }
                }
                Instruction::Query(r, l) => {
                    let v = regs.get(&r).copied().unwrap_or(0);
                    use_ = Some(use_.map_or(v, |u: u64| u.max(v)));
                    pc = if oracle.contains(&v) { l } else { pc + 1 };
                }
                Instruction::Halt => unreachable!(),
            }
            steps += 1;
        }
    }

    fn random_program(rng: &mut ChaCha8Rng, n: usize, queries: bool) -> Program {
        let ins = (0..n)
            .map(|_| match rng.gen_range(0..if queries { 5 } else { 4 }) {
                0 | 1 => Instruction::Inc(rng.gen_range(0..3)),
                2 => Instruction::DecJz(rng.gen_range(0..3), rng.gen_range(0..=n)),
                3 => Instruction::Halt,
                _ => Instruction::Query(rng.gen_range(0..3), rng.gen_range(0..=n)),
            })
            .collect();
        Program::new(ins).unwrap()
    }

    #[test]
    fn hand_traces() {
        let out = run_bounded(&Program::empty(), 7, 1).unwrap();
        assert_eq!((out.status, out.output, out.steps, out.use_), (Status::Halted, Some(7), 0, None));
        let out = run_bounded(&prog("INC 0\nHALT"), 3, 10).unwrap();
        assert_eq!((out.status, out.output, out.steps), (Status::Halted, Some(4), 1));
        let out = run_bounded(&prog("DECJZ 1 0"), 0, 5).unwrap();
        assert_eq!((out.status, out.steps), (Status::Running, 5));
        assert_eq!(run_bounded(&prog("QUERY 0 1"), 0, 5), Err(MachineError::OracleRequired));
    }

    #[test]
    fn oracle_jump_and_use() {
        // register 0 holds 5; jump over INC 1 iff 5 is in the oracle
        let p = prog("QUERY 0 2\nINC 1\nHALT");
        let yes = oracle_run_bounded(&p, &BTreeSet::from([5]), 5, 10);
        assert_eq!((yes.steps, yes.use_), (1, Some(5)));
        let no = oracle_run_bounded(&p, &BTreeSet::new(), 5, 10);
        assert_eq!((no.steps, no.use_), (2, Some(5)));
        let free = oracle_run_bounded(&prog("INC 0"), &|_| true, 1, 10);
        assert_eq!((free.output, free.use_), (Some(2), None));
    }

    #[test]
    fn we_approx_examples() {
        assert_eq!(we_approx(&Program::empty(), 6), (0..6).collect());
        assert!(we_approx(&Program::empty(), 0).is_empty());
        // halts exactly on even inputs, after 3x/2 + 1 steps
        let even = prog("DECJZ 0 4\nDECJZ 0 3\nDECJZ 1 0\nDECJZ 1 3");
        assert_eq!(we_approx(&even, 30), (0..20).filter(|x| x % 2 == 0).collect());
    }

    #[test]
    fn loop_detection_is_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut detected = 0;
        for case in 0..3000 {
            let n = rng.gen_range(1..7);
            let p = random_program(&mut rng, n, true);
            let oracle: BTreeSet<u64> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
            let x = rng.gen_range(0..4);
            let mut m = Machine::from_program(&p, x);
            let fast = m.advance(&oracle, 300);
            detected += m.is_looping() as usize;
            assert_eq!(fast, reference(&p, &oracle, x, 300), "case {case}: {p}");
        }
        assert!(detected > 100, "only {detected} loops detected");
    }

    #[test]
    fn resumed_runs_match_fresh_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let p = random_program(&mut rng, 6, false);
            let mut m = Machine::from_program(&p, 2);
            for bound in [0, 1, 3, 10, 40, 41, 200] {
                assert_eq!(m.advance(&BTreeSet::new(), bound), reference(&p, &BTreeSet::new(), 2, bound));
            }
        }
    }

    #[test]
    fn use_stability() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 50 {
            let p = random_program(&mut rng, 6, true);
            let oracle: BTreeSet<u64> = (0..10).filter(|_| rng.gen_bool(0.5)).collect();
            let x = rng.gen_range(0..5);
            let out = oracle_run_bounded(&p, &oracle, x, 500);
            let Some(u) = out.use_.filter(|_| out.halted()) else { continue };
            let mut other: BTreeSet<u64> = oracle.range(..=u).copied().collect();
            other.extend((u + 1..u + 20).filter(|_| rng.gen_bool(0.5)));
            assert_eq!(oracle_run_bounded(&p, &other, x, 500), out);
            checked += 1;
        }
    }

    #[test]
    fn step_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = random_program(&mut rng, 5, false);
            let out = run_bounded(&p, 1, 50).unwrap();
            if out.halted() {
                assert_eq!(run_bounded(&p, 1, 500).unwrap(), out);
            }
        }
        for _ in 0..20 {
            let e = rng.gen_range(0..100_000u64);
            let p = Program::decode_u64(e);
            let mut prev = BTreeSet::new();
            for s in 0..=50 {
                let now = we_approx(&p, s);
                assert!(prev.is_subset(&now), "index {e} stage {s}");
                prev = now;
            }
        }
    }
}
