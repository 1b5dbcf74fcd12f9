use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::limit_engine::{Property, StageEval, StageFunction};
use crate::machine::{literal_index, ProgramIndex, RunResult, Simulator};
use crate::{Nat, Result};

/// Assigns a machine to each candidate program number scanned by the K
/// search. The standard universe maps `y` to `TM_y`; other universes exist to
/// exercise the search on machines that are out of reach at desk scale.
pub trait ProgramUniverse: fmt::Debug + Send + Sync {
    fn program(&self, y: &Nat) -> ProgramIndex;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardUniverse;

impl ProgramUniverse for StandardUniverse {
    fn program(&self, y: &Nat) -> ProgramIndex {
        ProgramIndex::new(y.clone())
    }
}

/// Stage-`n` K guess: the least `y < z` whose machine halts on the empty tape
/// in fewer than `n` steps with output `x`, else `z = literal_index(x)`.
fn k_stage_guess(sim: &mut Simulator, universe: &dyn ProgramUniverse, x: &Nat, n: u64) -> Nat {
    let z = literal_index(x).into_value();
    if n == 0 {
        return z;
    }
    let mut y = Nat::zero();
    while y < z {
        let run = sim.run_on_empty(&universe.program(&y), n - 1);
        if matches!(&run, RunResult::Halted { output, .. } if output == x) {
            return y;
        }
        y += 1u8;
    }
    z
}

/// `P_K(x)`: the least index of a program printing `x` on the empty tape.
pub struct KStages {
    x: Nat,
    universe: Arc<dyn ProgramUniverse>,
    sim: Simulator,
}

pub fn k_property(x: &Nat) -> KStages {
    k_property_over(x, Arc::new(StandardUniverse))
}

pub fn k_property_over(x: &Nat, universe: Arc<dyn ProgramUniverse>) -> KStages {
    KStages {
        x: x.clone(),
        universe,
        sim: Simulator::new(),
    }
}

impl StageFunction for KStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        if stage > budget {
            return StageEval::no_output(0);
        }
        let before = self.sim.charged();
        let guess = k_stage_guess(&mut self.sim, self.universe.as_ref(), &self.x, stage);
        StageEval::guess(guess, self.sim.charged() - before)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KProperty;

impl Property for KProperty {
    fn id(&self) -> &str {
        "k"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        Ok(Box::new(k_property(input)))
    }
}

/// `P_I(n)`: the `n`-th incompressible number (counting from 0).
///
/// Stage `t` recomputes the candidate list from the stage-`t` K guesses of
/// `0..=t`, so a number later found compressible drops out and shifts the
/// later positions down.
pub struct IncompressibleStages {
    n: u64,
    sim: Simulator,
}

pub fn incompressible_property(n: u64) -> IncompressibleStages {
    IncompressibleStages {
        n,
        sim: Simulator::new(),
    }
}

impl StageFunction for IncompressibleStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        if stage > budget {
            return StageEval::no_output(0);
        }
        let before = self.sim.charged();
        let mut seen = 0u64;
        let mut found = None;
        for x in 0..=stage {
            let x = Nat::from(x);
            let guess = k_stage_guess(&mut self.sim, &StandardUniverse, &x, stage);
            if guess == literal_index(&x).into_value() {
                if seen == self.n {
                    found = Some(x);
                    break;
                }
                seen += 1;
            }
        }
        let steps = self.sim.charged() - before;
        match found {
            Some(x) => StageEval::guess(x, steps),
            None => StageEval::no_output(steps),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IncompressibleProperty;

impl Property for IncompressibleProperty {
    fn id(&self) -> &str {
        "incompressible"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let n = u64::try_from(input).map_err(|_| crate::Error::InvalidNumber(input.to_string()))?;
        Ok(Box::new(incompressible_property(n)))
    }
}
