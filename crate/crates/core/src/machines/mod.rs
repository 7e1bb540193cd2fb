//! Register machines: the program numbering behind `W_e` and `Φ_e`, bounded
//! plain and oracle runs with use tracking, and stage approximations.

mod pairing;
mod program;
mod run;

pub use pairing::{pair, pair_big, unpair, unpair_big};
pub use program::{decode_program, Instruction, Program};
pub use run::{oracle_run_bounded, run_bounded, we_approx, CompiledProgram, EmptyOracle, Machine, Oracle, RunOutcome, Status};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("instruction {line} jumps to {target}, program has {len} instructions")]
    JumpOutOfRange { line: usize, target: usize, len: usize },
    #[error("program line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("QUERY executed in a plain run; an oracle is required")]
    OracleRequired,
}
