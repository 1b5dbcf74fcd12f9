use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::{Motion, Symbol};
use crate::encodings::{binary_digits, from_binary_digits};
use crate::{Error, Nat, Result};

/// Name of a machine: a natural number in bijection with binary program strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProgramIndex(Nat);

impl ProgramIndex {
    pub fn new(index: Nat) -> Self {
        ProgramIndex(index)
    }

    pub fn value(&self) -> &Nat {
        &self.0
    }

    pub fn into_value(self) -> Nat {
        self.0
    }
}

impl From<Nat> for ProgramIndex {
    fn from(index: Nat) -> Self {
        ProgramIndex(index)
    }
}

impl From<u64> for ProgramIndex {
    fn from(index: u64) -> Self {
        ProgramIndex(Nat::from(index))
    }
}

impl fmt::Display for ProgramIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for ProgramIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse_nat(s).map(ProgramIndex)
    }
}

/// A finite binary string; the concrete carrier of a machine description.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProgramString(Vec<bool>);

impl ProgramString {
    pub fn new(bits: Vec<bool>) -> Self {
        ProgramString(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ProgramString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ProgramString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidNumber(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProgramString)
    }
}

/// The `i`-th binary string in length-lexicographic order: the binary expansion
/// of `i + 1` with its leading `1` dropped.
pub fn index_to_program(index: &ProgramIndex) -> ProgramString {
    let shifted = index.value() + Nat::one();
    let mut bits = binary_digits(&shifted);
    bits.remove(0);
    ProgramString(bits)
}

/// Inverse of [`index_to_program`].
pub fn program_to_index(program: &ProgramString) -> ProgramIndex {
    let mut bits = Vec::with_capacity(program.len() + 1);
    bits.push(true);
    bits.extend_from_slice(program.bits());
    ProgramIndex(from_binary_digits(&bits) - Nat::one())
}

/// Index of the literal program `"1" ++ binary(x)`, which halts with output `x`
/// after `|binary(x)|` steps on any input.
pub fn literal_index(x: &Nat) -> ProgramIndex {
    let mut bits = vec![true];
    bits.extend(binary_digits(x));
    program_to_index(&ProgramString(bits))
}

/// One row entry of a state table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub write: Symbol,
    pub motion: Motion,
    /// Next state; `0` halts.
    pub next: u8,
}

impl Transition {
    pub const fn new(write: Symbol, motion: Motion, next: u8) -> Self {
        Transition {
            write,
            motion,
            next,
        }
    }
}

/// Transition table of a `k`-state machine over `{blank, 0, 1}`, `1 <= k <= 8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateTable {
    rows: Vec<[Transition; 3]>,
}

pub const MAX_STATES: usize = 8;

impl StateTable {
    /// Builds a table from one row per state (state 1 first). Each row is
    /// indexed by the symbol read: blank, 0, 1.
    pub fn new(rows: Vec<[Transition; 3]>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || k > MAX_STATES {
            return Err(Error::InvalidTable(format!("{k} states")));
        }
        if let Some(t) = rows.iter().flatten().find(|t| t.next as usize > k) {
            return Err(Error::InvalidTable(format!(
                "next state {} exceeds state count {k}",
                t.next
            )));
        }
        Ok(StateTable { rows })
    }

    pub fn states(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[Transition; 3]] {
        &self.rows
    }

    /// Transition for `state` (1-based) reading `symbol`.
    pub fn get(&self, state: u8, symbol: Symbol) -> Transition {
        self.rows[state as usize - 1][symbol.digit() as usize]
    }

    /// Table-mode program string: `0`, three bits of `k - 1`, then `3k`
    /// records of (two write bits, one move bit, next-state bits).
    pub fn to_program(&self) -> ProgramString {
        let k = self.states();
        let next_width = next_state_width(k);
        let mut bits = vec![false];
        push_bits(&mut bits, (k - 1) as u64, 3);
        for t in self.rows.iter().flatten() {
            push_bits(&mut bits, t.write.digit() as u64, 2);
            bits.push(t.motion == Motion::Right);
            push_bits(&mut bits, t.next as u64, next_width);
        }
        ProgramString(bits)
    }

    pub fn index(&self) -> ProgramIndex {
        program_to_index(&self.to_program())
    }
}

/// Bits used for a next-state field: `⌈log₂(k + 1)⌉`.
pub fn next_state_width(k: usize) -> usize {
    let mut width = 0;
    while (1usize << width) < k + 1 {
        width += 1;
    }
    width
}

fn push_bits(out: &mut Vec<bool>, value: u64, width: usize) {
    for i in (0..width).rev() {
        out.push((value >> i) & 1 == 1);
    }
}

/// Payload bits of a literal program, leading zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Payload(Vec<bool>);

impl Payload {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self) -> Nat {
        from_binary_digits(&self.0)
    }
}

/// What a program string denotes. Decoding is total.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MachineKind {
    Literal(Payload),
    Table(StateTable),
    Diverger,
}

/// Decodes a program string. A leading `1` selects literal mode, a leading `0`
/// table mode; every malformation (empty string, empty payload, invalid write
/// field, next state out of range, underrun, leftover bits) is a [`MachineKind::Diverger`].
pub fn decode_program(program: &ProgramString) -> MachineKind {
    match program.bits().split_first() {
        None => MachineKind::Diverger,
        Some((true, [])) => MachineKind::Diverger,
        Some((true, payload)) => MachineKind::Literal(Payload(payload.to_vec())),
        Some((false, rest)) => decode_table(rest).map_or(MachineKind::Diverger, MachineKind::Table),
    }
}

fn decode_table(bits: &[bool]) -> Option<StateTable> {
    let mut reader = BitReader { bits, pos: 0 };
    let k = reader.take(3)? as usize + 1;
    let next_width = next_state_width(k);
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let mut row = [Transition::new(Symbol::Blank, Motion::Left, 0); 3];
        for slot in row.iter_mut() {
            let write = Symbol::from_digit(reader.take(2)? as u8)?;
            let motion = if reader.take(1)? == 1 {
                Motion::Right
            } else {
                Motion::Left
            };
            let next = reader.take(next_width)?;
            if next as usize > k {
                return None;
            }
            *slot = Transition::new(write, motion, next as u8);
        }
        rows.push(row);
    }
    if reader.pos != bits.len() {
        return None;
    }
    StateTable::new(rows).ok()
}

struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    fn take(&mut self, width: usize) -> Option<u64> {
        let end = self.pos + width;
        let chunk = self.bits.get(self.pos..end)?;
        self.pos = end;
        Some(chunk.iter().fold(0, |acc, &b| (acc << 1) | b as u64))
    }
}
