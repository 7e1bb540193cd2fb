//! Register-machine programs, their text format, and the program numbering.
//!
//! Numbering: index `0` is the empty program. Index `e > 0` decodes as
//! `e - 1 = ⟨n - 1, body⟩` for a program of `n` instructions, where `body`
//! pairs the instruction codes `c_1 … c_n` along a balanced tree: one code
//! is itself, and a longer list is `⟨left, right⟩` of its first `⌈n/2⌉` and
//! remaining codes. (Right-nested pairing would square the index once per
//! instruction; the balanced tree keeps its bit length linear.) Instruction
//! codes, for a program of `n` instructions:
//!
//! ```text
//! HALT           0
//! INC r          1 + 3r
//! DECJZ r l      2 + 3(r(n+1) + l)      0 <= l <= n
//! QUERY r l      3 + 3(r(n+1) + l)      0 <= l <= n
//! ```
//!
//! Every stage of the decoding is a bijection, so programs and indices are
//! in one-to-one correspondence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::pairing::{pair_big, unpair_big};
use super::MachineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// Increment register `r`.
    Inc(u64),
    /// If register `r` is zero jump to `l`, otherwise decrement it.
    DecJz(u64, usize),
    /// Jump to `l` iff the value of register `r` is in the oracle.
    Query(u64, usize),
    Halt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Program {
    instructions: Vec<Instruction>,
}

impl Program {
    /// Rejects jump targets beyond the program length.
    pub fn new(instructions: Vec<Instruction>) -> Result<Self, MachineError> {
        let n = instructions.len();
        for (i, ins) in instructions.iter().enumerate() {
            if let Instruction::DecJz(_, l) | Instruction::Query(_, l) = *ins {
                if l > n {
                    return Err(MachineError::JumpOutOfRange { line: i, target: l, len: n });
                }
            }
        }
        Ok(Program { instructions })
    }

    pub fn empty() -> Self {
        Program::default()
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn has_query(&self) -> bool {
        self.instructions.iter().any(|i| matches!(i, Instruction::Query(..)))
    }

    /// Sorted, deduplicated register indices, always including register 0.
    pub fn registers(&self) -> Vec<u64> {
        let mut regs: Vec<u64> = std::iter::once(0)
            .chain(self.instructions.iter().filter_map(|i| match *i {
                Instruction::Inc(r) | Instruction::DecJz(r, _) | Instruction::Query(r, _) => Some(r),
                Instruction::Halt => None,
            }))
            .collect();
        regs.sort_unstable();
        regs.dedup();
        regs
    }

    /// The index of this program under the numbering.
    pub fn encode(&self) -> BigUint {
        let n = self.instructions.len();
        if n == 0 {
            return BigUint::zero();
        }
        let codes: Vec<BigUint> = self.instructions.iter().map(|i| instruction_code(i, n)).collect();
        pair_big(&BigUint::from(n - 1), &pair_tree(&codes)) + 1u32
    }

    /// Inverse of [`Program::encode`]. Panics only if the index describes a
    /// program too large to hold in memory or a register index beyond `u64`.
    pub fn decode(e: &BigUint) -> Program {
        if e.is_zero() {
            return Program::empty();
        }
        let (count, body) = unpair_big(&(e - 1u32));
        let n = count.to_usize().expect("program length fits in usize") + 1;
        let mut codes = Vec::with_capacity(n);
        unpair_tree(body, n, &mut codes);
        Program { instructions: codes.iter().map(|c| decode_instruction(c, n)).collect() }
    }

    pub fn decode_u64(e: u64) -> Program {
        Program::decode(&BigUint::from(e))
    }
}

fn pair_tree(codes: &[BigUint]) -> BigUint {
    if codes.len() == 1 {
        return codes[0].clone();
    }
    let (left, right) = codes.split_at(codes.len().div_ceil(2));
    pair_big(&pair_tree(left), &pair_tree(right))
}

fn unpair_tree(z: BigUint, len: usize, out: &mut Vec<BigUint>) {
    if len == 1 {
        out.push(z);
        return;
    }
    let (left, right) = unpair_big(&z);
    let half = len.div_ceil(2);
    unpair_tree(left, half, out);
    unpair_tree(right, len - half, out);
}

fn instruction_code(ins: &Instruction, n: usize) -> BigUint {
    let jump = |r: u64, l: usize| BigUint::from(r) * (n + 1) + l;
    match *ins {
        Instruction::Halt => BigUint::zero(),
        Instruction::Inc(r) => BigUint::from(r) * 3u32 + 1u32,
        Instruction::DecJz(r, l) => jump(r, l) * 3u32 + 2u32,
        Instruction::Query(r, l) => jump(r, l) * 3u32 + 3u32,
    }
}

fn decode_instruction(c: &BigUint, n: usize) -> Instruction {
    if c.is_zero() {
        return Instruction::Halt;
    }
    let c = c - 1u32;
    let op = (&c % 3u32).to_u32().unwrap();
    let payload = c / 3u32;
    let reg = |v: BigUint| v.to_u64().expect("register index fits in u64");
    match op {
        0 => Instruction::Inc(reg(payload)),
        _ => {
            let l = (&payload % (n + 1)).to_usize().unwrap();
            let r = reg(payload / (n + 1));
            if op == 1 {
                Instruction::DecJz(r, l)
            } else {
                Instruction::Query(r, l)
            }
        }
    }
}

/// The program with index `e`.
pub fn decode_program(e: &BigUint) -> Program {
    Program::decode(e)
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Inc(r) => write!(f, "INC {r}"),
            Instruction::DecJz(r, l) => write!(f, "DECJZ {r} {l}"),
            Instruction::Query(r, l) => write!(f, "QUERY {r} {l}"),
            Instruction::Halt => write!(f, "HALT"),
        }
    }
}

impl fmt::Display for Program {
    /// One instruction per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

impl FromStr for Program {
    type Err = MachineError;

    /// One instruction per line; blank lines and `#` comments are skipped,
    /// and `;` also separates instructions.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut instructions = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for part in line.split(';') {
                let fields: Vec<&str> = part.split_whitespace().collect();
                if fields.is_empty() {
                    continue;
                }
                let bad = |message: &str| MachineError::Parse { line: line_no + 1, message: message.to_string() };
                let num = |s: &str| s.parse::<u64>().map_err(|_| bad("operand is not a natural number"));
                let ins = match (fields[0].to_ascii_uppercase().as_str(), fields.len()) {
                    ("INC", 2) => Instruction::Inc(num(fields[1])?),
                    ("DECJZ", 3) => Instruction::DecJz(num(fields[1])?, num(fields[2])? as usize),
                    ("QUERY", 3) => Instruction::Query(num(fields[1])?, num(fields[2])? as usize),
                    ("HALT", 1) => Instruction::Halt,
                    _ => return Err(bad("expected INC r, DECJZ r l, QUERY r l or HALT")),
                };
                instructions.push(ins);
            }
        }
        Program::new(instructions)
    }
}
