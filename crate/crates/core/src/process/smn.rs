//! The reduction index `f(e)`: a program that discards its input, runs
//! program `e` on input `e` (querying the same oracle), and outputs `0` if
//! that run halts.
//!
//! Layout of `f(e)`, with `Z` a register never written (so `DECJZ Z l` is a
//! jump) and `T` a scratch register, both above every register of `e`:
//!
//! ```text
//! clear r0
//! for each bit of e, most significant first: r0 := 2 r0 + bit
//! body of e, jumps shifted; HALT and jumps past the end go to the epilogue
//! epilogue: clear r0
//! ```
//!
//! The prefix spells the bits of `e`, so `f` is injective.

use num_bigint::BigUint;

use crate::machines::{decode_program, Instruction, Program};

pub fn smn_program(e: &BigUint) -> Program {
    let body = decode_program(e);
    let z = body.registers().into_iter().max().unwrap_or(0) + 1;
    let t = z + 1;
    let mut code = Vec::new();
    // clear r0
    code.push(Instruction::DecJz(0, 2));
    code.push(Instruction::DecJz(z, 0));
    for i in (0..e.bits()).rev() {
        let top = code.len();
        // move r0 into T
        code.push(Instruction::DecJz(0, top + 3));
        code.push(Instruction::Inc(t));
        code.push(Instruction::DecJz(z, top));
        // add 2 to r0 per unit of T
        code.push(Instruction::DecJz(t, top + 7));
        code.push(Instruction::Inc(0));
        code.push(Instruction::Inc(0));
        code.push(Instruction::DecJz(z, top + 3));
        if e.bit(i) {
            code.push(Instruction::Inc(0));
        }
    }
    let base = code.len();
    let epilogue = base + body.len();
    let shift = |l: usize| if l >= body.len() { epilogue } else { base + l };
    for &ins in body.instructions() {
        code.push(match ins {
            Instruction::DecJz(r, l) => Instruction::DecJz(r, shift(l)),
            Instruction::Query(r, l) => Instruction::Query(r, shift(l)),
            Instruction::Halt => Instruction::DecJz(z, epilogue),
            inc => inc,
        });
    }
    code.push(Instruction::DecJz(0, epilogue + 2));
    code.push(Instruction::DecJz(z, epilogue));
    Program::new(code).expect("targets within the program")
}

pub fn smn_reduction(e: &BigUint) -> BigUint {
    smn_program(e).encode()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{oracle_run_bounded, EmptyOracle, Status};
    use std::collections::BTreeSet;

    fn index(text: &str) -> BigUint {
        text.parse::<Program>().unwrap().encode()
    }

    #[test]
    fn halting_body_gives_total_zero() {
        for e in [index("HALT"), BigUint::from(0u32), index("INC 0; INC 3")] {
            let f = decode_program(&smn_reduction(&e));
            for z in 0..6 {
                let out = oracle_run_bounded(&f, &EmptyOracle, z, 100_000);
                assert_eq!((out.status, out.output), (Status::Halted, Some(0)), "e = {e}, z = {z}");
            }
        }
    }

    #[test]
    fn looping_body_never_halts() {
        let e = index("INC 1\nDECJZ 2 0");
        let f = smn_program(&e);
        for z in [0, 3, 17] {
            assert_eq!(oracle_run_bounded(&f, &EmptyOracle, z, 10_000).status, Status::Running);
        }
    }

    #[test]
    fn oracle_is_passed_through() {
        // halts iff its input is in the oracle; f(e) asks about e itself
        let e = index("QUERY 0 2\nDECJZ 1 0");
        let n = u64::try_from(&e).unwrap();
        let f = smn_program(&e);
        let with: BTreeSet<u64> = [n].into();
        let without: BTreeSet<u64> = [n + 1].into();
        // writing e into r0 costs about 9e steps
        let bound = 12 * n + 1000;
        assert_eq!(oracle_run_bounded(&f, &with, 4, bound).output, Some(0));
        assert_eq!(oracle_run_bounded(&f, &without, 4, bound).status, Status::Running);
    }

    #[test]
    fn injective_and_deterministic() {
        let images: BTreeSet<BigUint> = (0u32..200).map(|e| smn_reduction(&BigUint::from(e))).collect();
        assert_eq!(images.len(), 200);
        assert_eq!(smn_reduction(&BigUint::from(77u32)), smn_reduction(&BigUint::from(77u32)));
    }
}
