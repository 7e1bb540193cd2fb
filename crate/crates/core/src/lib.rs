//! A laboratory for computational processes: one-dimensional cellular
//! automata, transducer-driven processes and their observers, first-order
//! model checking of the one-step relation, and a finite-injury priority
//! construction that can be recast as a process.

pub mod automata;
pub mod ca;
pub mod logic;
pub mod machines;
pub mod priority;
pub mod process;
