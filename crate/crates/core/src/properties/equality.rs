use std::collections::HashSet;
use std::sync::Arc;

use super::{split_pair, ClassEnumerator};
use crate::limit_engine::{Property, StageEval, StageFunction};
use crate::machine::{ProgramIndex, RunResult, Simulator};
use crate::{Nat, Result};

/// Step bound `h(x) = c0 + c1·(x+1)^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceBound {
    pub c0: u64,
    pub c1: u64,
    pub d: u32,
}

impl ResourceBound {
    pub const fn new(c0: u64, c1: u64, d: u32) -> Self {
        ResourceBound { c0, c1, d }
    }

    /// Saturates at `u64::MAX`.
    pub fn at(&self, x: u64) -> u64 {
        let power = x.saturating_add(1).saturating_pow(self.d);
        self.c0.saturating_add(self.c1.saturating_mul(power))
    }
}

impl Default for ResourceBound {
    /// `h(x) = 8 + 8(x+1)`.
    fn default() -> Self {
        ResourceBound::new(8, 8, 1)
    }
}

/// The equality scan shared by both equality properties. `guessed` holds every
/// value produced by an earlier stage.
struct EqualityScan {
    i: ProgramIndex,
    j: ProgramIndex,
    sim: Simulator,
    guessed: HashSet<Nat>,
}

impl EqualityScan {
    fn new(i: ProgramIndex, j: ProgramIndex) -> Self {
        EqualityScan {
            i,
            j,
            sim: Simulator::new(),
            guessed: HashSet::new(),
        }
    }

    /// Scans inputs `0..=stage`, running `i` within `allow_i(y)` steps and `j`
    /// within `allow_j(y)`. The largest input where either run is cut off
    /// yields the exception guess `y + 1` unless that value was guessed
    /// before; otherwise the guess is 0 on a found difference, else 1.
    fn stage(
        &mut self,
        stage: u64,
        allow_i: impl Fn(u64) -> u64,
        allow_j: impl Fn(u64) -> u64,
    ) -> Nat {
        let mut exception = None;
        let mut differs = false;
        for y in 0..=stage {
            let x = Nat::from(y);
            let ri = self.sim.run(&self.i, &x, allow_i(y));
            let rj = self.sim.run(&self.j, &x, allow_j(y));
            match (ri, rj) {
                (RunResult::Halted { output: a, .. }, RunResult::Halted { output: b, .. }) => {
                    differs |= a != b;
                }
                _ => exception = Some(y),
            }
        }
        let value = match exception.map(|y| Nat::from(y) + 1u8) {
            Some(v) if !self.guessed.contains(&v) => v,
            _ => Nat::from(u8::from(!differs)),
        };
        self.guessed.insert(value.clone());
        value
    }
}

/// Equality of two machines assumed to run within `g` and `h` steps on all but
/// finitely many inputs. Every stage value is computed; a stage whose largest
/// allowance exceeds the stage budget reports no output.
pub struct EasyEqualityStages {
    scan: EqualityScan,
    g: ResourceBound,
    h: ResourceBound,
}

pub fn easy_equality(
    i: &ProgramIndex,
    j: &ProgramIndex,
    g: ResourceBound,
    h: ResourceBound,
) -> EasyEqualityStages {
    EasyEqualityStages {
        scan: EqualityScan::new(i.clone(), j.clone()),
        g,
        h,
    }
}

impl StageFunction for EasyEqualityStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        let before = self.scan.sim.charged();
        let (g, h) = (self.g, self.h);
        let value = self.scan.stage(stage, |y| g.at(y), |y| h.at(y));
        let steps = self.scan.sim.charged() - before;
        let needed = (0..=stage).map(|y| g.at(y).max(h.at(y))).max().unwrap_or(0);
        if needed > budget {
            StageEval::no_output(steps)
        } else {
            StageEval::guess(value, steps)
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EasyEquality {
    g: ResourceBound,
    h: ResourceBound,
}

impl EasyEquality {
    pub fn new(g: ResourceBound, h: ResourceBound) -> Self {
        EasyEquality { g, h }
    }
}

impl Property for EasyEquality {
    fn id(&self) -> &str {
        "easy-eq"
    }

    /// Input is the pair code `τ(i, j)`.
    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let (i, j) = split_pair(input);
        Ok(Box::new(easy_equality(&i, &j, self.g, self.h)))
    }
}

/// Membership of an index among the first emissions of an enumerator, found
/// incrementally.
struct Membership {
    target: ProgramIndex,
    class: Arc<dyn ClassEnumerator>,
    scanned: u64,
    found: bool,
}

impl Membership {
    fn within(&mut self, stage: u64) -> bool {
        while !self.found && self.scanned <= stage {
            self.found = self.class.emit(self.scanned) == self.target;
            self.scanned += 1;
        }
        self.found
    }
}

/// Equality of two members of enumerable classes of total functions. Stages
/// before both memberships are seen have no output; afterwards the equality
/// scan runs with the stage budget as the per-input allowance.
pub struct ClassEqualityStages {
    scan: EqualityScan,
    in_a: Membership,
    in_b: Membership,
}

pub fn class_equality(
    i: &ProgramIndex,
    j: &ProgramIndex,
    a: Arc<dyn ClassEnumerator>,
    b: Arc<dyn ClassEnumerator>,
) -> ClassEqualityStages {
    let member = |target: &ProgramIndex, class| Membership {
        target: target.clone(),
        class,
        scanned: 0,
        found: false,
    };
    ClassEqualityStages {
        scan: EqualityScan::new(i.clone(), j.clone()),
        in_a: member(i, a),
        in_b: member(j, b),
    }
}

impl StageFunction for ClassEqualityStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        let members = self.in_a.within(stage) & self.in_b.within(stage);
        if !members {
            return StageEval::no_output(0);
        }
        let before = self.scan.sim.charged();
        let value = self.scan.stage(stage, |_| budget, |_| budget);
        StageEval::guess(value, self.scan.sim.charged() - before)
    }
}

#[derive(Clone, Debug)]
pub struct ClassEquality {
    a: Arc<dyn ClassEnumerator>,
    b: Arc<dyn ClassEnumerator>,
}

impl ClassEquality {
    pub fn new(a: Arc<dyn ClassEnumerator>, b: Arc<dyn ClassEnumerator>) -> Self {
        ClassEquality { a, b }
    }
}

impl Property for ClassEquality {
    fn id(&self) -> &str {
        "class-eq"
    }

    /// Input is the pair code `τ(i, j)`.
    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let (i, j) = split_pair(input);
        Ok(Box::new(class_equality(
            &i,
            &j,
            self.a.clone(),
            self.b.clone(),
        )))
    }
}
