//! Small hand-built table machines with known behaviour.
//!
//! Used by tests, the acceptance suite and the CLI's demo enumerators. Each
//! function returns the machine's index in the universe.

use crate::machine::{Motion, ProgramIndex, StateTable, Symbol, Transition};

use Motion::{Left as L, Right as R};
use Symbol::{Blank as B, One as I, Zero as O};

const HALT: u8 = 0;

fn t(write: Symbol, motion: Motion, next: u8) -> Transition {
    Transition::new(write, motion, next)
}

/// Row that copies the scanned digit, moves right and enters `next`; on blank
/// it applies `on_blank`.
fn scan(on_blank: Transition, after_zero: u8, after_one: u8) -> [Transition; 3] {
    [on_blank, t(O, R, after_zero), t(I, R, after_one)]
}

fn build(rows: Vec<[Transition; 3]>) -> ProgramIndex {
    StateTable::new(rows)
        .expect("zoo tables are well formed")
        .index()
}

/// One state: writes `1` and halts on any symbol.
pub fn write_one_and_halt() -> ProgramIndex {
    build(vec![[t(I, R, HALT); 3]])
}

/// Identity in one step: rewrites the scanned symbol and halts.
pub fn fast_identity() -> ProgramIndex {
    build(vec![[t(B, R, HALT), t(O, R, HALT), t(I, R, HALT)]])
}

/// Identity that walks to the end of the input first: `|x| + 1` steps.
pub fn slow_identity() -> ProgramIndex {
    build(vec![scan(t(B, L, HALT), 1, 1)])
}

/// Identity except that inputs starting `11` get their second digit cleared,
/// so the least disagreement with the identity is at input 3.
pub fn differs_at_three() -> ProgramIndex {
    let stop = t(B, L, HALT);
    build(vec![
        [stop, t(O, R, HALT), t(I, R, 2)],
        [stop, t(O, R, 3), t(O, R, 3)],
        scan(stop, 3, 3),
    ])
}

/// Same step count as [`slow_identity`] on every input, same output except at
/// input 4 (`100`), where it appends a `1` and outputs 9.
pub fn differs_at_four() -> ProgramIndex {
    let stop = t(B, L, HALT);
    // 1: start, 2: read "1", 3: read "10", 4: read "100", 5: anything else.
    build(vec![
        scan(stop, 5, 2),
        scan(stop, 3, 5),
        scan(stop, 4, 5),
        scan(t(I, L, HALT), 5, 5),
        scan(stop, 5, 5),
    ])
}

/// Halts on inputs 0 and 1, loops forever on 2 (and on every input whose
/// binary form has a `0` after the leading digit).
pub fn loops_on_two() -> ProgramIndex {
    build(vec![
        [t(B, R, HALT), t(O, R, HALT), t(I, R, 2)],
        [t(B, L, HALT), t(O, L, 2), t(I, R, 2)],
    ])
}

/// `x ↦ 2x`: walks right and writes a `0` after the input.
pub fn append_zero() -> ProgramIndex {
    build(vec![scan(t(O, R, HALT), 1, 1)])
}

/// `x ↦ 2x + 1` when `3 | x`, else `2x`. Differs from [`append_zero`] exactly
/// on the multiples of 3. States track the remainder of the prefix read.
pub fn mark_multiples_of_three() -> ProgramIndex {
    build(vec![
        scan(t(I, R, HALT), 1, 2),
        scan(t(O, R, HALT), 3, 1),
        scan(t(O, R, HALT), 2, 3),
    ])
}

/// `x ↦ 2x + 1` when `x <= 5`, else `2x`. Differs from [`append_zero`] exactly
/// on inputs `0..=5`.
pub fn mark_at_most_five() -> ProgramIndex {
    let small = t(I, R, HALT);
    let large = t(O, R, HALT);
    // 1: start, 2: one digit, 3: "10", 4: "11", 5: "10x", 6: longer.
    build(vec![
        scan(large, 2, 2),
        scan(small, 3, 4),
        scan(small, 5, 5),
        scan(small, 6, 6),
        scan(small, 6, 6),
        scan(large, 6, 6),
    ])
}

/// Every zoo machine with its name.
pub fn all() -> Vec<(&'static str, ProgramIndex)> {
    vec![
        ("write_one_and_halt", write_one_and_halt()),
        ("fast_identity", fast_identity()),
        ("slow_identity", slow_identity()),
        ("differs_at_three", differs_at_three()),
        ("differs_at_four", differs_at_four()),
        ("loops_on_two", loops_on_two()),
        ("append_zero", append_zero()),
        ("mark_multiples_of_three", mark_multiples_of_three()),
        ("mark_at_most_five", mark_at_most_five()),
    ]
}
