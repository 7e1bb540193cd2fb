//! The priority construction, restricted to mock enumerators, as a
//! register program.
//!
//! One program step is one instruction. The program runs the stages forever:
//! label `top` starts a stage, and every numeral placed into `S` or `A` is
//! also written to an append-only output tape. A numeral `x` is the column
//! sequence `1^x #`, and every completed stage appends one tick column.
//!
//! Supported mocks: a requirement cap of at most [`MAX_REQUIREMENTS`],
//! `W_e` one of `all`, `none`, `evens`, `odds`, and `Φ_e` either `diverge`
//! or a constant. Under these mocks the state of `N_e` is determined by its
//! witness, restraint, injury count and whether its witness is in `A`, and
//! `P_e` only needs to know whether `S` already holds an even or odd number.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ProcessError, Result};
use crate::priority::{ConstructionState, MockPhi, MockSpec, MockW, PhiKeyword};

pub const MAX_REQUIREMENTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OutSym {
    Blank,
    One,
    Hash,
    Tick,
}

impl OutSym {
    pub fn code(self) -> usize {
        self as usize
    }

    pub fn from_code(c: usize) -> OutSym {
        [OutSym::Blank, OutSym::One, OutSym::Hash, OutSym::Tick][c & 3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Inc(usize),
    /// Jump if the register is zero, otherwise decrement it.
    DecJz(usize, usize),
    Goto(usize),
    /// Append one output column `(s, a)`.
    Emit(OutSym, OutSym),
}

/// Registers of a compiled construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub stage: usize,
    pub max_used: usize,
    pub s_any: usize,
    pub s_even: usize,
    pub s_odd: usize,
    pub p_done: Vec<usize>,
    pub witness: Vec<usize>,
    /// restraint plus one; zero when unset
    pub restraint: Vec<usize>,
    pub in_a: Vec<usize>,
    pub injuries: Vec<usize>,
    pub temps: [usize; 4],
    pub count: usize,
}

impl Layout {
    fn new(cap: usize) -> Self {
        let mut next = 0..;
        let mut take = || next.next().unwrap();
        let (stage, max_used, s_any, s_even, s_odd) = (take(), take(), take(), take(), take());
        let column = |take: &mut dyn FnMut() -> usize| (0..cap).map(|_| take()).collect::<Vec<_>>();
        let p_done = column(&mut take);
        let witness = column(&mut take);
        let restraint = column(&mut take);
        let in_a = column(&mut take);
        let injuries = column(&mut take);
        let temps = [take(), take(), take(), take()];
        let count = take();
        Layout { stage, max_used, s_any, s_even, s_odd, p_done, witness, restraint, in_a, injuries, temps, count }
    }
}

/// Program state: the interpreter's view, and what the compiled word
/// decodes to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineState {
    pub pc: usize,
    pub regs: Vec<u64>,
    pub output: Vec<(OutSym, OutSym)>,
}

/// The construction state visible at a stage boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSnapshot {
    pub stage: u64,
    pub max_used: u64,
    pub s: BTreeSet<u64>,
    pub a: BTreeSet<u64>,
    pub witnesses: Vec<Option<u64>>,
    pub restraints: Vec<Option<u64>>,
    pub injuries: Vec<u32>,
}

impl StageSnapshot {
    pub fn of_engine(state: &ConstructionState, cap: usize) -> Self {
        StageSnapshot {
            stage: state.stage(),
            max_used: state.max_used(),
            s: state.s_approx().clone(),
            a: state.a_approx().clone(),
            witnesses: (0..cap).map(|e| state.witness(e)).collect(),
            restraints: (0..cap).map(|e| state.restraint(e)).collect(),
            injuries: (0..cap).map(|e| state.injuries(e)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WKind {
    All,
    None,
    Evens,
    Odds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Label(usize);

#[derive(Debug, Clone, Copy)]
enum Pending {
    Inc(usize),
    DecJz(usize, Label),
    Goto(Label),
    Emit(OutSym, OutSym),
}

/// Straight-line assembler with forward labels. Temporaries are zero
/// between macros.
#[derive(Default)]
struct Asm {
    code: Vec<Pending>,
    labels: Vec<Option<usize>>,
}

impl Asm {
    fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    fn place(&mut self, l: Label) {
        debug_assert!(self.labels[l.0].is_none());
        self.labels[l.0] = Some(self.code.len());
    }

    fn here(&mut self) -> Label {
        let l = self.label();
        self.place(l);
        l
    }

    fn inc(&mut self, r: usize) {
        self.code.push(Pending::Inc(r));
    }

    fn decjz(&mut self, r: usize, l: Label) {
        self.code.push(Pending::DecJz(r, l));
    }

    fn goto(&mut self, l: Label) {
        self.code.push(Pending::Goto(l));
    }

    fn emit(&mut self, s: OutSym, a: OutSym) {
        self.code.push(Pending::Emit(s, a));
    }

    fn finish(self) -> Vec<Op> {
        let at = |l: Label| self.labels[l.0].expect("every label placed");
        self.code
            .iter()
            .map(|&p| match p {
                Pending::Inc(r) => Op::Inc(r),
                Pending::DecJz(r, l) => Op::DecJz(r, at(l)),
                Pending::Goto(l) => Op::Goto(at(l)),
                Pending::Emit(s, a) => Op::Emit(s, a),
            })
            .collect()
    }

    fn clear(&mut self, r: usize) {
        let top = self.here();
        let done = self.label();
        self.decjz(r, done);
        self.goto(top);
        self.place(done);
    }

    fn add_const(&mut self, r: usize, k: u64) {
        for _ in 0..k {
            self.inc(r);
        }
    }

    fn jz(&mut self, r: usize, target: Label) {
        self.decjz(r, target);
        self.inc(r);
    }

    fn jnz(&mut self, r: usize, target: Label) {
        let skip = self.label();
        self.decjz(r, skip);
        self.inc(r);
        self.goto(target);
        self.place(skip);
    }

    /// Sets a 0/1 flag.
    fn set_flag(&mut self, r: usize) {
        let done = self.label();
        self.jnz(r, done);
        self.inc(r);
        self.place(done);
    }

    /// `dst += src`, keeping `src`; `tmp` is zero.
    fn add(&mut self, src: usize, dst: usize, tmp: usize) {
        let drain = self.here();
        let back = self.label();
        self.decjz(src, back);
        self.inc(dst);
        self.inc(tmp);
        self.goto(drain);
        self.place(back);
        self.restore(tmp, src);
    }

    /// Moves `from` onto `to`.
    fn restore(&mut self, from: usize, to: usize) {
        let top = self.here();
        let done = self.label();
        self.decjz(from, done);
        self.inc(to);
        self.goto(top);
        self.place(done);
    }

    /// Jumps to `target` iff `r < k`, leaving `r` unchanged.
    fn jump_if_lt_const(&mut self, r: usize, k: u64, target: Label) {
        let done = self.label();
        let exits: Vec<Label> = (0..k).map(|_| self.label()).collect();
        for &exit in &exits {
            self.decjz(r, exit);
        }
        self.add_const(r, k);
        self.goto(done);
        // exit i: r was i, with i decrements to undo
        for (i, &exit) in exits.iter().enumerate() {
            self.place(exit);
            self.add_const(r, i as u64);
            self.goto(target);
        }
        self.place(done);
    }

    /// Jumps to `target` iff `a < b`; temporaries are zero.
    fn jump_if_lt(&mut self, a: usize, b: usize, target: Label, [t1, t2, scratch]: [usize; 3]) {
        let (ge, lt, done) = (self.label(), self.label(), self.label());
        self.add(a, t1, scratch);
        self.add(b, t2, scratch);
        let top = self.here();
        self.decjz(t2, ge);
        self.decjz(t1, lt);
        self.goto(top);
        self.place(ge);
        self.clear(t1);
        self.goto(done);
        self.place(lt);
        self.clear(t2);
        self.goto(target);
        self.place(done);
    }

    /// `dst = max(dst, src)`.
    fn max_into(&mut self, dst: usize, src: usize, temps: [usize; 3]) {
        let (raise, done) = (self.label(), self.label());
        self.jump_if_lt(dst, src, raise, temps);
        self.goto(done);
        self.place(raise);
        self.clear(dst);
        self.add(src, dst, temps[0]);
        self.place(done);
    }

    /// Jumps to `odd` or `even` by the parity of `r`; temporaries are zero.
    fn branch_parity(&mut self, r: usize, [tmp, scratch]: [usize; 2], even: Label, odd: Label) {
        let (e, o) = (self.label(), self.label());
        self.add(r, tmp, scratch);
        let top = self.here();
        self.decjz(tmp, e);
        self.decjz(tmp, o);
        self.goto(top);
        self.place(e);
        self.goto(even);
        self.place(o);
        self.goto(odd);
    }

    /// Writes `1^r #` on one output track, keeping `r`.
    fn emit_numeral(&mut self, r: usize, tmp: usize, track: Track) {
        let top = self.here();
        let done = self.label();
        self.decjz(r, done);
        self.inc(tmp);
        let (one, hash) = track.symbols();
        self.emit(one.0, one.1);
        self.goto(top);
        self.place(done);
        self.emit(hash.0, hash.1);
        self.restore(tmp, r);
    }
}

#[derive(Clone, Copy)]
enum Track {
    S,
    A,
}

impl Track {
    fn symbols(self) -> ((OutSym, OutSym), (OutSym, OutSym)) {
        match self {
            Track::S => ((OutSym::One, OutSym::Blank), (OutSym::Hash, OutSym::Blank)),
            Track::A => ((OutSym::Blank, OutSym::One), (OutSym::Blank, OutSym::Hash)),
        }
    }
}

/// The construction compiled to register code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionProgram {
    ops: Vec<Op>,
    layout: Layout,
    cap: usize,
    top: usize,
}

impl ConstructionProgram {
    pub fn new(spec: &MockSpec) -> Result<Self> {
        let cap = spec
            .requirements
            .ok_or_else(|| ProcessError::Unsupported("the mock must set a requirement cap".into()))?;
        if cap == 0 || cap > MAX_REQUIREMENTS {
            return Err(ProcessError::Unsupported(format!(
                "requirement cap {cap} outside 1..={MAX_REQUIREMENTS}"
            )));
        }
        let mut kinds = Vec::with_capacity(cap);
        let mut phis = Vec::with_capacity(cap);
        for e in 0..cap {
            kinds.push(match spec.w.get(&e) {
                None | Some(MockW::None) => WKind::None,
                Some(MockW::All) => WKind::All,
                Some(MockW::Evens) => WKind::Evens,
                Some(MockW::Odds) => WKind::Odds,
                Some(MockW::List(_)) => {
                    return Err(ProcessError::Unsupported(format!("W_{e} is an explicit list")));
                }
            });
            phis.push(match spec.phi.get(&e) {
                None | Some(MockPhi::Keyword(PhiKeyword::Diverge)) => None,
                Some(&MockPhi::Const { value, use_ }) => Some((value, use_)),
                Some(MockPhi::Program { .. }) => {
                    return Err(ProcessError::Unsupported(format!("Φ_{e} is a program")));
                }
            });
        }
        let layout = Layout::new(cap);
        let mut asm = Asm::default();
        // a jump to the next instruction, so no loop inside a stage revisits `top`
        let top = asm.here();
        let body = asm.label();
        asm.goto(body);
        asm.place(body);
        let end_stage = asm.label();
        let l = &layout;
        let [t0, t1, t2, _] = l.temps;
        // the stage is mentioned before anything acts
        asm.max_into(l.max_used, l.stage, [t0, t1, t2]);
        for e in 0..cap {
            asm.jump_if_lt_const(l.stage, e as u64, end_stage);
            if kinds[e] != WKind::None {
                positive_block(&mut asm, l, e, kinds[e], end_stage);
            }
            let next = asm.label();
            asm.jump_if_lt_const(l.stage, e as u64 + 1, next);
            negative_block(&mut asm, l, e, phis[e], end_stage);
            asm.place(next);
        }
        asm.place(end_stage);
        asm.emit(OutSym::Tick, OutSym::Tick);
        asm.inc(l.stage);
        asm.goto(top);
        Ok(ConstructionProgram { top: asm.labels[top.0].unwrap(), ops: asm.finish(), layout, cap })
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Address of the first instruction of a stage.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn initial_state(&self) -> MachineState {
        MachineState { pc: 0, regs: vec![0; self.layout.count], output: Vec::new() }
    }

    /// One instruction. The program has no halting instruction, so `pc`
    /// stays within the code.
    pub fn step(&self, m: &mut MachineState) {
        let Some(&op) = self.ops.get(m.pc) else {
            return;
        };
        m.pc += 1;
        match op {
            Op::Inc(r) => m.regs[r] += 1,
            Op::DecJz(r, l) => {
                if m.regs[r] == 0 {
                    m.pc = l;
                } else {
                    m.regs[r] -= 1;
                }
            }
            Op::Goto(l) => m.pc = l,
            Op::Emit(s, a) => m.output.push((s, a)),
        }
    }

    /// The construction state when `m` sits at the start of a stage.
    pub fn snapshot(&self, m: &MachineState) -> Option<StageSnapshot> {
        if m.pc != self.top {
            return None;
        }
        let l = &self.layout;
        let column = |regs: &[usize]| regs.iter().map(|&r| m.regs[r]).collect::<Vec<_>>();
        let (s, a) = output_sets(&m.output);
        Some(StageSnapshot {
            stage: m.regs[l.stage],
            max_used: m.regs[l.max_used],
            s,
            a,
            witnesses: column(&l.witness).into_iter().map(|w| (w > 0).then_some(w)).collect(),
            restraints: column(&l.restraint).into_iter().map(|r| r.checked_sub(1)).collect(),
            injuries: column(&l.injuries).into_iter().map(|k| k as u32).collect(),
        })
    }
}

/// Completed numerals on the S and A tracks.
fn output_sets(output: &[(OutSym, OutSym)]) -> (BTreeSet<u64>, BTreeSet<u64>) {
    let mut sets = (BTreeSet::new(), BTreeSet::new());
    let mut counts = (0u64, 0u64);
    for &(s, a) in output {
        for (sym, count, set) in [(s, &mut counts.0, &mut sets.0), (a, &mut counts.1, &mut sets.1)] {
            match sym {
                OutSym::One => *count += 1,
                OutSym::Hash => {
                    set.insert(*count);
                    *count = 0;
                }
                OutSym::Blank | OutSym::Tick => {}
            }
        }
    }
    sets
}

fn positive_block(asm: &mut Asm, l: &Layout, e: usize, kind: WKind, end_stage: Label) {
    let [t0, t1, t2, t3] = l.temps;
    let next = asm.label();
    asm.jnz(l.p_done[e], next);
    let met_flag = match kind {
        WKind::All => l.s_any,
        WKind::Evens => l.s_even,
        WKind::Odds => l.s_odd,
        WKind::None => unreachable!("positives on empty W_e are skipped"),
    };
    let unmet = asm.label();
    asm.jz(met_flag, unmet);
    asm.inc(l.p_done[e]);
    asm.goto(next);
    asm.place(unmet);
    // t0 = floor + 1 = max(2e + 1, restraint_i + 1 for i < e)
    asm.add_const(t0, 2 * e as u64 + 1);
    for i in 0..e {
        asm.max_into(t0, l.restraint[i], [t1, t2, t3]);
    }
    let want_odd = match kind {
        WKind::Evens => Some(false),
        WKind::Odds => Some(true),
        _ => None,
    };
    if let Some(odd) = want_odd {
        let (even_l, odd_l, fixed) = (asm.label(), asm.label(), asm.label());
        asm.branch_parity(t0, [t1, t2], even_l, odd_l);
        asm.place(if odd { odd_l } else { even_l });
        asm.goto(fixed);
        asm.place(if odd { even_l } else { odd_l });
        asm.inc(t0);
        asm.place(fixed);
    }
    let act = asm.label();
    asm.jump_if_lt(t0, l.stage, act, [t1, t2, t3]);
    asm.clear(t0);
    asm.goto(next);

    asm.place(act);
    asm.set_flag(l.s_any);
    match want_odd {
        Some(false) => asm.set_flag(l.s_even),
        Some(true) => asm.set_flag(l.s_odd),
        None => {
            let (even_l, odd_l, done) = (asm.label(), asm.label(), asm.label());
            asm.branch_parity(t0, [t1, t2], even_l, odd_l);
            asm.place(even_l);
            asm.set_flag(l.s_even);
            asm.goto(done);
            asm.place(odd_l);
            asm.set_flag(l.s_odd);
            asm.place(done);
        }
    }
    asm.inc(l.p_done[e]);
    asm.emit_numeral(t0, t1, Track::S);
    asm.max_into(l.max_used, t0, [t1, t2, t3]);
    for i in e..l.witness.len() {
        // injured iff restraint_i >= x, i.e. x < restraint_i + 1
        let (hit, spared) = (asm.label(), asm.label());
        asm.jump_if_lt(t0, l.restraint[i], hit, [t1, t2, t3]);
        asm.goto(spared);
        asm.place(hit);
        asm.clear(l.witness[i]);
        asm.clear(l.restraint[i]);
        asm.clear(l.in_a[i]);
        asm.inc(l.injuries[i]);
        asm.place(spared);
    }
    asm.clear(t0);
    asm.goto(end_stage);
    asm.place(next);
}

fn negative_block(asm: &mut Asm, l: &Layout, e: usize, phi: Option<(u64, Option<u64>)>, end_stage: Label) {
    let [t0, t1, t2, t3] = l.temps;
    let has_witness = asm.label();
    asm.jnz(l.witness[e], has_witness);
    witness_search(asm, l, e as u64);
    // a fresh witness exceeds max_used, so it becomes the new maximum
    asm.restore(t0, l.witness[e]);
    asm.clear(l.max_used);
    asm.add(l.witness[e], l.max_used, t1);
    asm.goto(end_stage);
    asm.place(has_witness);
    // only Φ_e converging to 0 on a witness outside A makes N_e act
    if let Some((0, use_)) = phi {
        let next = asm.label();
        asm.jnz(l.in_a[e], next);
        asm.emit_numeral(l.witness[e], t0, Track::A);
        asm.inc(l.in_a[e]);
        if let Some(u) = use_ {
            asm.add_const(l.restraint[e], u + 1);
            asm.add_const(t0, u);
            asm.max_into(l.max_used, t0, [t1, t2, t3]);
            asm.clear(t0);
        }
        asm.goto(end_stage);
        asm.place(next);
    }
}

/// Leaves the least `⟨e, u⟩ > max_used` in `t0`.
///
/// `⟨e, 0⟩ = e(e+1)/2` and consecutive differences are `e + 2, e + 3, …`.
/// `t1` holds the next difference and `t2` the slack `max_used + 1 - z`,
/// saturating at zero; the search stops when the slack is exhausted.
fn witness_search(asm: &mut Asm, l: &Layout, e: u64) {
    let [t0, t1, t2, t3] = l.temps;
    let cleanup = asm.label();
    let z0 = e * (e + 1) / 2;
    asm.add_const(t0, z0);
    asm.add_const(t1, e + 2);
    asm.add(l.max_used, t2, t3);
    asm.inc(t2);
    for _ in 0..z0 {
        asm.decjz(t2, cleanup);
    }
    asm.jz(t2, cleanup);
    let step = asm.here();
    // z += d
    asm.add(t1, t0, t3);
    // slack -= d, saturating
    let (sub, exhausted, subtracted) = (asm.here(), asm.label(), asm.label());
    asm.decjz(t1, subtracted);
    asm.inc(t3);
    asm.decjz(t2, exhausted);
    asm.goto(sub);
    asm.place(exhausted);
    asm.restore(t3, t1);
    asm.goto(cleanup);
    asm.place(subtracted);
    asm.restore(t3, t1);
    asm.jz(t2, cleanup);
    asm.inc(t1);
    asm.goto(step);
    asm.place(cleanup);
    asm.clear(t1);
    asm.clear(t2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priority::{Construction, MockEnumerators};

    pub(crate) fn spec(json: &str) -> MockSpec {
        serde_json::from_str(json).unwrap()
    }

    /// Interprets the program and compares every stage boundary with the
    /// engine.
    fn agree(json: &str, stages: u64) {
        let spec = spec(json);
        let program = ConstructionProgram::new(&spec).unwrap();
        let mut engine = Construction::new(MockEnumerators::new(spec.clone()).unwrap());
        let mut m = program.initial_state();
        for stage in 0..=stages {
            let snap = program.snapshot(&m).expect("at a stage boundary");
            assert_eq!(snap, StageSnapshot::of_engine(engine.state(), program.cap()), "{json} stage {stage}");
            engine.stage_step();
            program.step(&mut m);
            while program.snapshot(&m).is_none() {
                program.step(&mut m);
            }
        }
    }

    #[test]
    fn temporaries_cleared_at_stage_boundaries() {
        let program = ConstructionProgram::new(&spec(r#"{"requirements":3,"w":{"0":"all","1":"evens"},"phi":{"0":{"const":0,"use":9}}}"#)).unwrap();
        let mut m = program.initial_state();
        for _ in 0..20_000 {
            program.step(&mut m);
            if m.pc == program.top() {
                assert!(program.layout().temps.iter().all(|&t| m.regs[t] == 0));
            }
        }
    }

    #[test]
    fn matches_engine_on_plain_mocks() {
        agree(r#"{"requirements":1,"w":{"0":"all"}}"#, 30);
        agree(r#"{"requirements":2,"w":{"0":"odds","1":"evens"}}"#, 40);
        agree(r#"{"requirements":3,"phi":{"0":{"const":0},"1":{"const":1},"2":"diverge"}}"#, 40);
    }

    #[test]
    fn matches_engine_through_injuries() {
        let json = r#"{"requirements":3,"w":{"1":"evens","2":"odds"},"phi":{"0":{"const":0,"use":20},"1":{"const":0,"use":30}}}"#;
        agree(json, 80);
        let mut engine = Construction::new(MockEnumerators::new(spec(json)).unwrap());
        engine.run(80);
        assert!(engine.state().injuries(1) > 0);
    }

    #[test]
    fn matches_engine_on_random_mocks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let ws = ["\"all\"", "\"none\"", "\"evens\"", "\"odds\""];
        for _ in 0..25 {
            let cap = rng.gen_range(1..=4);
            let w: Vec<String> = (0..cap).map(|e| format!("\"{e}\":{}", ws[rng.gen_range(0..4)])).collect();
            let phi: Vec<String> = (0..cap)
                .map(|e| match rng.gen_range(0..3) {
                    0 => format!("\"{e}\":\"diverge\""),
                    1 => format!("\"{e}\":{{\"const\":{}}}", rng.gen_range(0..2)),
                    _ => format!("\"{e}\":{{\"const\":0,\"use\":{}}}", rng.gen_range(0..40)),
                })
                .collect();
            let json = format!(r#"{{"requirements":{cap},"w":{{{}}},"phi":{{{}}}}}"#, w.join(","), phi.join(","));
            agree(&json, 60);
        }
    }

    #[test]
    fn rejects_unsupported_mocks() {
        for json in [
            r#"{"w":{"0":"all"}}"#,
            r#"{"requirements":0}"#,
            r#"{"requirements":7}"#,
            r#"{"requirements":2,"w":{"1":{"list":[3]}}}"#,
            r#"{"requirements":1,"phi":{"0":{"program":"HALT"}}}"#,
        ] {
            assert!(matches!(ConstructionProgram::new(&spec(json)), Err(ProcessError::Unsupported(_))), "{json}");
        }
        // entries beyond the cap are never consulted
        assert!(ConstructionProgram::new(&spec(r#"{"requirements":1,"w":{"3":{"list":[3]}}}"#)).is_ok());
    }
}
