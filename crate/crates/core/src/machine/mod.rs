//! The Gödel-numbered machine universe.
//!
//! Every natural number names a program string (length-lexicographic order),
//! and every program string decodes to exactly one [`MachineKind`]:
//!
//! * `1 ++ payload` is a literal machine that writes `payload` and halts after
//!   `|payload|` steps, whatever its input;
//! * `0 ++ table` is a `k`-state table machine over `{blank, 0, 1}`;
//! * anything else diverges.
//!
//! Machines read their input as a canonical binary numeral in cells
//! `0..len` and leave their output as the numeral starting at the leftmost
//! non-blank cell (see [`Configuration::output`]).

mod cache;
mod config;
mod program;

pub use cache::Simulator;
pub use config::{Configuration, Motion, Symbol};
pub use program::{
    decode_program, index_to_program, literal_index, next_state_width, program_to_index,
    MachineKind, Payload, ProgramIndex, ProgramString, StateTable, Transition, MAX_STATES,
};

use crate::Nat;

/// Outcome of a step-bounded run.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RunResult {
    Halted { output: Nat, steps: u64 },
    OutOfBudget,
}

impl RunResult {
    pub fn output(&self) -> Option<&Nat> {
        match self {
            RunResult::Halted { output, .. } => Some(output),
            RunResult::OutOfBudget => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match self {
            RunResult::Halted { steps, .. } => Some(*steps),
            RunResult::OutOfBudget => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunResult::Halted { .. })
    }

    /// Steps a run with this result consumed out of `budget`.
    pub fn cost(&self, budget: u64) -> u64 {
        self.steps().unwrap_or(budget)
    }
}

/// A decoded machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Machine {
    index: ProgramIndex,
    kind: MachineKind,
}

impl Machine {
    pub fn decode(index: &ProgramIndex) -> Self {
        Machine {
            index: index.clone(),
            kind: decode_program(&index_to_program(index)),
        }
    }

    pub fn index(&self) -> &ProgramIndex {
        &self.index
    }

    pub fn kind(&self) -> &MachineKind {
        &self.kind
    }

    /// Applies one transition to a running configuration. Halted
    /// configurations are left unchanged.
    pub fn advance(&self, cfg: &mut Configuration) {
        if cfg.is_halted() {
            return;
        }
        match &self.kind {
            MachineKind::Diverger => {}
            MachineKind::Table(table) => {
                let t = table.get(cfg.state, cfg.read());
                cfg.write(t.write);
                cfg.shift(t.motion);
                cfg.state = t.next;
            }
            MachineKind::Literal(payload) => {
                // Step i writes payload digit i at cell i. The window of a
                // literal run never extends left of cell 0.
                let i = cfg.head_offset();
                let bits = payload.bits();
                if i >= bits.len() {
                    cfg.state = 0;
                    return;
                }
                cfg.write(if bits[i] { Symbol::One } else { Symbol::Zero });
                cfg.shift(Motion::Right);
                if i + 1 == bits.len() {
                    // Clear what is left of the input so the output is the payload.
                    cfg.blank_from(bits.len());
                    cfg.state = 0;
                }
            }
        }
    }

    /// Successor of `cfg` without mutating it.
    pub fn successor(&self, cfg: &Configuration) -> Configuration {
        let mut next = cfg.clone();
        self.advance(&mut next);
        next
    }

    /// Runs on `input` (`None` is the empty tape) for at most `budget` steps.
    pub fn run(&self, input: Option<&Nat>, budget: u64) -> RunResult {
        match &self.kind {
            MachineKind::Diverger => RunResult::OutOfBudget,
            MachineKind::Literal(payload) => {
                let steps = payload.len() as u64;
                if steps <= budget {
                    RunResult::Halted {
                        output: payload.value(),
                        steps,
                    }
                } else {
                    RunResult::OutOfBudget
                }
            }
            MachineKind::Table(_) => {
                let mut cfg = Configuration::initial(input);
                for step in 1..=budget {
                    self.advance(&mut cfg);
                    if cfg.is_halted() {
                        return RunResult::Halted {
                            output: cfg.output(),
                            steps: step,
                        };
                    }
                }
                RunResult::OutOfBudget
            }
        }
    }

    /// Full configuration sequence from the initial configuration up to the
    /// halt or until `budget` steps have been applied.
    pub fn trace(&self, input: Option<&Nat>, budget: u64) -> Vec<Configuration> {
        let mut cfg = Configuration::initial(input);
        let mut out = vec![cfg.clone()];
        for _ in 0..budget {
            if cfg.is_halted() {
                break;
            }
            self.advance(&mut cfg);
            out.push(cfg.clone());
        }
        out
    }
}

/// `TM_i(x)` for at most `budget` steps.
pub fn run(index: &ProgramIndex, input: &Nat, budget: u64) -> RunResult {
    Machine::decode(index).run(Some(input), budget)
}

/// `TM_i(0)`: the computation on an all-blank tape.
pub fn run_on_empty(index: &ProgramIndex, budget: u64) -> RunResult {
    Machine::decode(index).run(None, budget)
}

/// Configuration sequence of `TM_i` on `input` (`None` for the empty tape).
pub fn trace(index: &ProgramIndex, input: Option<&Nat>, budget: u64) -> Vec<Configuration> {
    Machine::decode(index).trace(input, budget)
}
