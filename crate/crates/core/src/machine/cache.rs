use std::collections::HashMap;

use super::{Configuration, Machine, MachineKind, ProgramIndex, RunResult};
use crate::Nat;

#[derive(Clone, Debug)]
enum Progress {
    Halted { output: Nat, steps: u64 },
    Running { cfg: Configuration, steps: u64 },
}

/// Memoizing simulator used by stage functions.
///
/// Table-machine runs are resumable: a run that exhausted a budget keeps its
/// configuration, so a later request with a larger budget continues from
/// there. Results are exactly those of [`Machine::run`]; the cache is not
/// observable except through speed.
///
/// [`Simulator::charged`] accumulates the logical step cost of every request
/// (the halting step count, or the full budget on a miss) as if nothing were
/// cached, so stage step counts do not depend on cache state.
#[derive(Default)]
pub struct Simulator {
    machines: HashMap<ProgramIndex, Machine>,
    runs: HashMap<(ProgramIndex, Option<Nat>), Progress>,
    charged: u64,
}

impl Simulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn machine(&mut self, index: &ProgramIndex) -> &Machine {
        self.machines
            .entry(index.clone())
            .or_insert_with(|| Machine::decode(index))
    }

    /// Total logical steps charged so far.
    pub fn charged(&self) -> u64 {
        self.charged
    }

    pub fn run(&mut self, index: &ProgramIndex, input: &Nat, budget: u64) -> RunResult {
        self.run_on(index, Some(input), budget)
    }

    pub fn run_on_empty(&mut self, index: &ProgramIndex, budget: u64) -> RunResult {
        self.run_on(index, None, budget)
    }

    fn run_on(&mut self, index: &ProgramIndex, input: Option<&Nat>, budget: u64) -> RunResult {
        let result = self.resolve(index, input, budget);
        self.charged = self.charged.saturating_add(result.cost(budget));
        result
    }

    fn resolve(&mut self, index: &ProgramIndex, input: Option<&Nat>, budget: u64) -> RunResult {
        let machine = self.machine(index).clone();
        if !matches!(machine.kind(), MachineKind::Table(_)) {
            return machine.run(input, budget);
        }
        let key = (index.clone(), input.cloned());
        let progress = self.runs.entry(key).or_insert_with(|| Progress::Running {
            cfg: Configuration::initial(input),
            steps: 0,
        });
        match progress {
            Progress::Halted { output, steps } => {
                if *steps <= budget {
                    RunResult::Halted {
                        output: output.clone(),
                        steps: *steps,
                    }
                } else {
                    RunResult::OutOfBudget
                }
            }
            Progress::Running { cfg, steps } => {
                while *steps < budget {
                    machine.advance(cfg);
                    *steps += 1;
                    if cfg.is_halted() {
                        let result = RunResult::Halted {
                            output: cfg.output(),
                            steps: *steps,
                        };
                        *progress = Progress::Halted {
                            output: cfg.output(),
                            steps: *steps,
                        };
                        return result;
                    }
                }
                RunResult::OutOfBudget
            }
        }
    }
}
