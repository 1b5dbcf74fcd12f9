//! Guess-stream runtime.
//!
//! A [`StageFunction`] is `φ_p(s, ·)` for a fixed input `s`: stage `t` either
//! guesses a value or produces nothing within its step budget. [`run_stages`]
//! drives stages `0..=t_max` in order and records a [`GuessStream`];
//! [`stabilization`] summarizes how the stream settled.

mod az;
mod stabilization;
mod trace;

pub use az::{
    az_index, az_inverse, compose_prefix_property, AzLifted, AzReduction, AzSequence,
    ComposedStages, PrefixProcedure, Sequence,
};
pub use stabilization::{stabilization, StabilizationReport, Verdict, DEFAULT_WINDOW};
pub use trace::{read_trace, write_trace, TraceRecord};

use crate::{Nat, Result};

/// What one stage produced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StageOutcome {
    Guess(Nat),
    /// The stage did not converge within its budget.
    NoOutput,
}

impl StageOutcome {
    pub fn guess(&self) -> Option<&Nat> {
        match self {
            StageOutcome::Guess(v) => Some(v),
            StageOutcome::NoOutput => None,
        }
    }
}

/// A stage outcome together with the simulated steps it cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageEval {
    pub outcome: StageOutcome,
    pub steps: u64,
}

impl StageEval {
    pub fn guess(value: Nat, steps: u64) -> Self {
        StageEval {
            outcome: StageOutcome::Guess(value),
            steps,
        }
    }

    pub fn no_output(steps: u64) -> Self {
        StageEval {
            outcome: StageOutcome::NoOutput,
            steps,
        }
    }
}

/// `φ_p(s, ·)` for one input `s`.
///
/// Stages are evaluated in increasing order starting from 0; implementations
/// may keep state from earlier stages (caches, previously emitted guesses).
/// `budget` is the step allowance for each machine simulated in this stage.
/// Outcomes depend only on the stage number, the budgets of this and earlier
/// stages, and the input.
pub trait StageFunction {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval;
}

impl<F: FnMut(u64, u64) -> StageEval> StageFunction for F {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        self(stage, budget)
    }
}

/// A limit property `P_p`, addressable by a stable string id.
pub trait Property {
    fn id(&self) -> &str;
    /// The stage function computing `P_p(input)`.
    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>>;
}

/// Per-stage step allowance `B(t) = base + slope·t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetSchedule {
    pub base: u64,
    pub slope: u64,
}

impl BudgetSchedule {
    pub const fn linear(base: u64, slope: u64) -> Self {
        BudgetSchedule { base, slope }
    }

    pub fn at(&self, stage: u64) -> u64 {
        self.base.saturating_add(self.slope.saturating_mul(stage))
    }
}

impl Default for BudgetSchedule {
    /// `B(t) = 64·(t + 1)`.
    fn default() -> Self {
        BudgetSchedule::linear(64, 64)
    }
}

/// One recorded stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageEvent {
    pub stage: u64,
    pub outcome: StageOutcome,
    pub steps_used: u64,
}

/// The observed window `t = 0..=t_max` of a guess stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessStream {
    pub property: String,
    pub input: Nat,
    pub events: Vec<StageEvent>,
}

impl GuessStream {
    /// Guessed values in stage order, skipping stages without output.
    pub fn guesses(&self) -> impl Iterator<Item = &Nat> {
        self.events.iter().filter_map(|e| e.outcome.guess())
    }

    pub fn outcomes(&self) -> Vec<StageOutcome> {
        self.events.iter().map(|e| e.outcome.clone()).collect()
    }

    pub fn last_guess(&self) -> Option<&Nat> {
        self.guesses().last()
    }
}

/// Evaluates `f` at stages `0..=t_max` with budgets from `schedule`.
pub fn run_stage_function(
    property: &str,
    input: &Nat,
    f: &mut dyn StageFunction,
    t_max: u64,
    schedule: BudgetSchedule,
) -> GuessStream {
    let events = (0..=t_max)
        .map(|stage| {
            let eval = f.eval(stage, schedule.at(stage));
            StageEvent {
                stage,
                outcome: eval.outcome,
                steps_used: eval.steps,
            }
        })
        .collect();
    GuessStream {
        property: property.to_string(),
        input: input.clone(),
        events,
    }
}

/// Runs `property` on `input` for stages `0..=t_max`.
pub fn run_stages(
    property: &dyn Property,
    input: &Nat,
    t_max: u64,
    schedule: BudgetSchedule,
) -> Result<GuessStream> {
    let mut f = property.stage_function(input)?;
    Ok(run_stage_function(
        property.id(),
        input,
        f.as_mut(),
        t_max,
        schedule,
    ))
}
