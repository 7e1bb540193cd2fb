//! The construction program as a process.
//!
//! A configuration is a word over three tracks `(id, s, a)`, packed as
//! `id * 16 + s * 4 + a`:
//!
//! ```text
//! [control pc] [register columns ...] [output columns ...]
//! ```
//!
//! The control column has `id = 1 + pc`. Register columns carry the
//! instantaneous description: column `i` has `id = 2 + len + bits` where bit
//! `r` of `bits` is set iff register `r` exceeds `i`, so a register is as
//! long as its run of set bits and every column is non-empty. Output columns
//! have `id = 0` and one append-only symbol on the `S` or `A` track, or a
//! tick on both.
//!
//! One pass of the computor executes one instruction. Column 0 decides
//! every zero test, an increment extends the first column lacking the bit,
//! and a decrement clears the bit in the last column holding it (seen one
//! column late). At most two letters are written per letter read.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::construction::{ConstructionProgram, MachineState, Op, OutSym, StageSnapshot};
use super::{apply, FiniteTransducer, Process, ProcessError, Result, Transducer};
use crate::priority::{disjoint_sum, MockSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Id {
    Blank,
    Control(usize),
    Column(u64),
}

/// The one-step computor of a compiled construction.
#[derive(Debug, Clone)]
pub struct CompiledComputor {
    program: Arc<ConstructionProgram>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassState {
    Start,
    Copy,
    IncSeek(usize),
    DecTest(usize),
    DecHold(usize, u64),
    Emit(OutSym, OutSym),
}

impl CompiledComputor {
    fn len(&self) -> usize {
        self.program.ops().len()
    }

    fn registers(&self) -> usize {
        self.program.layout().count
    }

    fn encode_id(&self, id: Id) -> usize {
        match id {
            Id::Blank => 0,
            Id::Control(pc) => 1 + pc,
            Id::Column(bits) => 2 + self.len() + bits as usize,
        }
    }

    fn letter(&self, id: Id, s: OutSym, a: OutSym) -> usize {
        self.encode_id(id) * 16 + s.code() * 4 + a.code()
    }

    fn column(&self, bits: u64) -> usize {
        self.letter(Id::Column(bits), OutSym::Blank, OutSym::Blank)
    }

    fn control(&self, pc: usize) -> usize {
        self.letter(Id::Control(pc), OutSym::Blank, OutSym::Blank)
    }

    fn id_of(&self, letter: usize) -> Id {
        let id = letter / 16;
        match id {
            0 => Id::Blank,
            i if i <= 1 + self.len() => Id::Control(i - 1),
            i => Id::Column((i - 2 - self.len()) as u64),
        }
    }

    fn bits_of(&self, letter: usize) -> Option<u64> {
        match self.id_of(letter) {
            Id::Column(bits) if letter.is_multiple_of(16) => Some(bits),
            _ => None,
        }
    }

    /// The word of a program state.
    pub fn encode(&self, m: &MachineState) -> Vec<usize> {
        let longest = m.regs.iter().copied().max().unwrap_or(0);
        let mut word = vec![self.control(m.pc)];
        for i in 0..longest {
            let bits = m.regs.iter().enumerate().filter(|&(_, &v)| v > i).fold(0u64, |b, (r, _)| b | 1 << r);
            word.push(self.column(bits));
        }
        word.extend(m.output.iter().map(|&(s, a)| self.letter(Id::Blank, s, a)));
        word
    }

    /// Reads a program state back; fails on words outside the layout.
    pub fn decode(&self, word: &[usize]) -> Result<MachineState> {
        let malformed = |what: &str| ProcessError::Malformed(format!("compiled configuration: {what}"));
        let (&first, rest) = word.split_first().ok_or_else(|| malformed("empty word"))?;
        let Id::Control(pc) = self.id_of(first) else {
            return Err(malformed("no control column"));
        };
        let mut regs = vec![0u64; self.registers()];
        let mut output = Vec::new();
        let mut previous = u64::MAX;
        for &letter in rest {
            match self.id_of(letter) {
                Id::Column(bits) if output.is_empty() => {
                    if letter % 16 != 0 || bits == 0 || bits >> self.registers() != 0 || bits & !previous != 0 {
                        return Err(malformed("bad register column"));
                    }
                    for (r, v) in regs.iter_mut().enumerate() {
                        *v += bits >> r & 1;
                    }
                    previous = bits;
                }
                Id::Blank => output.push((OutSym::from_code(letter >> 2), OutSym::from_code(letter))),
                _ => return Err(malformed("column out of place")),
            }
        }
        Ok(MachineState { pc, regs, output })
    }
}

impl FiniteTransducer for CompiledComputor {
    type State = PassState;

    fn input_size(&self) -> usize {
        (2 + self.len() + (1usize << self.registers())) * 16
    }

    fn output_size(&self) -> usize {
        self.input_size()
    }

    fn start(&self) -> PassState {
        PassState::Start
    }

    fn step(&self, &state: &PassState, letter: usize, out: &mut Vec<usize>) -> Option<PassState> {
        let next = match state {
            PassState::Start => match self.id_of(letter) {
                Id::Control(pc) if pc < self.len() => match self.program.ops()[pc] {
                    Op::Inc(r) => {
                        out.push(self.control(pc + 1));
                        PassState::IncSeek(r)
                    }
                    Op::DecJz(..) => PassState::DecTest(pc),
                    Op::Goto(l) => {
                        out.push(self.control(l));
                        PassState::Copy
                    }
                    Op::Emit(s, a) => {
                        out.push(self.control(pc + 1));
                        PassState::Emit(s, a)
                    }
                },
                _ => {
                    out.push(letter);
                    PassState::Copy
                }
            },
            PassState::Copy | PassState::Emit(..) => {
                out.push(letter);
                state
            }
            PassState::IncSeek(r) => match self.bits_of(letter) {
                Some(bits) if bits >> r & 1 == 1 => {
                    out.push(letter);
                    state
                }
                Some(bits) => {
                    out.push(self.column(bits | 1 << r));
                    PassState::Copy
                }
                None => {
                    out.extend([self.column(1 << r), letter]);
                    PassState::Copy
                }
            },
            PassState::DecTest(pc) => {
                let Op::DecJz(r, l) = self.program.ops()[pc] else { unreachable!("DecTest holds a DecJz") };
                match self.bits_of(letter) {
                    Some(bits) if bits >> r & 1 == 1 => {
                        out.push(self.control(pc + 1));
                        PassState::DecHold(r, bits)
                    }
                    _ => {
                        out.extend([self.control(l), letter]);
                        PassState::Copy
                    }
                }
            }
            PassState::DecHold(r, held) => match self.bits_of(letter) {
                Some(bits) if bits >> r & 1 == 1 => {
                    out.push(self.column(held));
                    PassState::DecHold(r, bits)
                }
                _ => {
                    let cleared = held & !(1 << r);
                    if cleared != 0 {
                        out.push(self.column(cleared));
                    }
                    out.push(letter);
                    PassState::Copy
                }
            },
        };
        Some(next)
    }

    fn finish(&self, &state: &PassState, out: &mut Vec<usize>) {
        match state {
            PassState::Start | PassState::Copy => {}
            PassState::Emit(s, a) => out.push(self.letter(Id::Blank, s, a)),
            PassState::IncSeek(r) => out.push(self.column(1 << r)),
            PassState::DecTest(pc) => {
                let Op::DecJz(_, l) = self.program.ops()[pc] else { unreachable!("DecTest holds a DecJz") };
                out.push(self.control(l));
            }
            PassState::DecHold(r, held) => {
                let cleared = held & !(1 << r);
                if cleared != 0 {
                    out.push(self.column(cleared));
                }
            }
        }
    }

    fn output_bound(&self) -> usize {
        2
    }
}

/// Which output track an observer reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrackKind {
    S,
    A,
    /// `S ⊕ A`: `x` from S read as `2x`, `y` from A as `2y + 1`.
    Sum,
}

impl std::str::FromStr for TrackKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "s" | "S" => Ok(TrackKind::S),
            "a" | "A" => Ok(TrackKind::A),
            "sum" => Ok(TrackKind::Sum),
            _ => Err(format!("unknown track {s:?}, expected s, a or sum")),
        }
    }
}

/// Observer output letters.
pub const OBS_ONE: usize = 0;
pub const OBS_HASH: usize = 1;
pub const OBS_TICK: usize = 2;

/// A decoded observer image: the ticks seen and every numeral completed
/// before the last tick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub ticks: u64,
    pub numerals: BTreeSet<u64>,
}

pub fn decode_numerals(word: &[usize]) -> Observation {
    let mut ticks = 0;
    let mut numerals = BTreeSet::new();
    let mut pending = Vec::new();
    let mut count = 0;
    for &c in word {
        match c {
            OBS_ONE => count += 1,
            OBS_HASH => {
                pending.push(count);
                count = 0;
            }
            _ => {
                ticks += 1;
                numerals.extend(pending.drain(..));
            }
        }
    }
    Observation { ticks, numerals }
}

/// A compiled construction process with its decoders.
#[derive(Debug, Clone)]
pub struct CompiledConstruction {
    program: Arc<ConstructionProgram>,
    pub process: Process<CompiledComputor>,
}

pub fn compile_construction(spec: &MockSpec) -> Result<CompiledConstruction> {
    let program = Arc::new(ConstructionProgram::new(spec)?);
    let computor = CompiledComputor { program: program.clone() };
    let initial = computor.encode(&program.initial_state());
    Ok(CompiledConstruction { program, process: Process::new(computor, initial)? })
}

impl CompiledConstruction {
    pub fn program(&self) -> &ConstructionProgram {
        &self.program
    }

    pub fn computor(&self) -> &CompiledComputor {
        self.process.computor()
    }

    pub fn decode(&self, word: &[usize]) -> Result<MachineState> {
        self.computor().decode(word)
    }

    /// The construction state if `word` sits at a stage boundary.
    pub fn snapshot(&self, word: &[usize]) -> Result<Option<StageSnapshot>> {
        Ok(self.program.snapshot(&self.decode(word)?))
    }

    /// A table observer projecting one output track. It ignores every
    /// letter outside the output region.
    pub fn observer(&self, kind: TrackKind) -> Transducer {
        let mut t = Transducer::new(self.computor().input_size(), 3, 1).expect("one state");
        t.set_default(0, Some(0)).expect("state 0");
        for s in [OutSym::Blank, OutSym::One, OutSym::Hash, OutSym::Tick] {
            for a in [OutSym::Blank, OutSym::One, OutSym::Hash, OutSym::Tick] {
                let out = match (kind, s, a) {
                    (_, OutSym::Tick, _) | (_, _, OutSym::Tick) => vec![OBS_TICK],
                    (TrackKind::S, OutSym::One, _) | (TrackKind::A, _, OutSym::One) => vec![OBS_ONE],
                    (TrackKind::S, OutSym::Hash, _) | (TrackKind::A, _, OutSym::Hash) => vec![OBS_HASH],
                    (TrackKind::Sum, OutSym::One, _) | (TrackKind::Sum, _, OutSym::One) => vec![OBS_ONE, OBS_ONE],
                    (TrackKind::Sum, OutSym::Hash, _) => vec![OBS_HASH],
                    (TrackKind::Sum, _, OutSym::Hash) => vec![OBS_ONE, OBS_HASH],
                    _ => vec![],
                };
                t.set_edge(0, s.code() * 4 + a.code(), 0, out).expect("in range");
            }
        }
        t
    }

    /// What an observer's image of `word` says, decoded.
    pub fn observe_word(&self, kind: TrackKind, word: &[usize]) -> Observation {
        decode_numerals(&apply(&self.observer(kind), word).expect("observer reads the computor alphabet"))
    }

    /// The set an observation should equal for a snapshot.
    pub fn expected(kind: TrackKind, snap: &StageSnapshot) -> BTreeSet<u64> {
        match kind {
            TrackKind::S => snap.s.clone(),
            TrackKind::A => snap.a.clone(),
            TrackKind::Sum => disjoint_sum(&snap.s, &snap.a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priority::{Construction, MockEnumerators};

    fn compiled(json: &str) -> CompiledConstruction {
        compile_construction(&serde_json::from_str(json).unwrap()).unwrap()
    }

    const INJURY: &str = r#"{"requirements":3,"w":{"1":"evens","2":"odds"},"phi":{"0":{"const":0,"use":20},"1":{"const":0,"use":30}}}"#;

    #[test]
    fn initial_word() {
        let c = compiled(r#"{"requirements":1,"w":{"0":"all"}}"#);
        let x0 = c.process.initial();
        assert_eq!(x0.len(), 1);
        assert_eq!(c.decode(x0).unwrap(), c.program().initial_state());
        let snap = c.snapshot(x0).unwrap().unwrap();
        assert_eq!((snap.stage, snap.s.len(), snap.a.len()), (0, 0, 0));
    }

    #[test]
    fn every_pass_is_one_instruction() {
        for json in [r#"{"requirements":2,"w":{"0":"all","1":"odds"},"phi":{"1":{"const":0}}}"#, INJURY] {
            let c = compiled(json);
            let mut direct = c.program().initial_state();
            let mut x = c.process.initial().to_vec();
            for t in 0..3000 {
                assert_eq!(c.decode(&x).unwrap(), direct, "{json} t = {t}");
                assert_eq!(c.computor().encode(&direct), x);
                x = c.process.step(&x);
                c.program().step(&mut direct);
            }
        }
    }

    #[test]
    fn stage_one_puts_one_into_s() {
        let c = compiled(r#"{"requirements":1,"w":{"0":"all"}}"#);
        let spec = serde_json::from_str(r#"{"requirements":1,"w":{"0":"all"}}"#).unwrap();
        let mut engine = Construction::new(MockEnumerators::new(spec).unwrap());
        engine.run(2);
        let mut x = c.process.initial().to_vec();
        let mut boundaries = 0;
        while boundaries < 2 {
            x = c.process.step(&x);
            boundaries += c.snapshot(&x).unwrap().is_some() as u32;
        }
        let obs = c.observe_word(TrackKind::S, &x);
        assert_eq!(obs.ticks, 2);
        assert_eq!(&obs.numerals, engine.state().s_approx());
    }

    #[test]
    fn observers_track_the_engine_through_an_injury() {
        let c = compiled(INJURY);
        let mut engine = Construction::new(MockEnumerators::new(serde_json::from_str(INJURY).unwrap()).unwrap());
        let mut snaps = vec![StageSnapshot::of_engine(engine.state(), 3)];
        let mut x = c.process.initial().to_vec();
        let mut last = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
        let mut t = 0u64;
        loop {
            // every step near the start, then a sparse sample
            if t < 3000 || t.is_multiple_of(97) {
                for (i, kind) in [TrackKind::S, TrackKind::A, TrackKind::Sum].into_iter().enumerate() {
                    let obs = c.observe_word(kind, &x);
                    while snaps.len() <= obs.ticks as usize {
                        engine.stage_step();
                        snaps.push(StageSnapshot::of_engine(engine.state(), 3));
                    }
                    assert_eq!(obs.numerals, CompiledConstruction::expected(kind, &snaps[obs.ticks as usize]));
                    assert!(last[i].is_subset(&obs.numerals), "append-only at t = {t}");
                    last[i] = obs.numerals;
                }
            }
            if let Some(snap) = c.snapshot(&x).unwrap() {
                while snaps.len() <= snap.stage as usize {
                    engine.stage_step();
                    snaps.push(StageSnapshot::of_engine(engine.state(), 3));
                }
                assert_eq!(snap, snaps[snap.stage as usize]);
                if snap.injuries[1] > 0 {
                    break;
                }
            }
            x = c.process.step(&x);
            t += 1;
        }
        assert!(c.observe_word(TrackKind::S, &x).numerals.contains(&22));
        assert!(c.observe_word(TrackKind::A, &x).numerals.len() >= 2);
    }

    #[test]
    fn rejects_foreign_words() {
        let c = compiled(INJURY);
        assert!(c.decode(&[]).is_err());
        assert!(c.decode(&[c.computor().column(1)]).is_err());
        let out = c.computor().letter(Id::Blank, OutSym::One, OutSym::Blank);
        assert!(c.decode(&[c.computor().control(0), out, c.computor().column(1)]).is_err());
        // a column with a bit its predecessor lacks
        assert!(c.decode(&[c.computor().control(0), c.computor().column(1), c.computor().column(3)]).is_err());
    }
}
