use std::collections::HashMap;

use crate::encodings::tau;
use crate::limit_engine::{Property, StageEval, StageFunction};
use crate::machine::{ProgramIndex, RunResult, Simulator};
use crate::{Error, Nat, Result};

/// Stage-`y` guess of `P_P` for machine `x`: `τ(x, z)` for the least `z <= y`
/// on which `x` does not halt within `y` steps, else `τ(x, y)`.
fn detect_guess(sim: &mut Simulator, x: &ProgramIndex, y: u64) -> Nat {
    let z = (0..=y)
        .find(|&z| sim.run(x, &Nat::from(z), y) == RunResult::OutOfBudget)
        .unwrap_or(y);
    tau(x.value(), &Nat::from(z))
}

/// `P_P(x)`: converges to `τ(x, z)` for the least input `z` on which `TM_x`
/// diverges; keeps changing when `TM_x` is total.
pub struct PartialDetectStages {
    x: ProgramIndex,
    sim: Simulator,
}

pub fn partial_detect_property(x: &ProgramIndex) -> PartialDetectStages {
    PartialDetectStages {
        x: x.clone(),
        sim: Simulator::new(),
    }
}

impl StageFunction for PartialDetectStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        if stage > budget {
            return StageEval::no_output(0);
        }
        let before = self.sim.charged();
        let guess = detect_guess(&mut self.sim, &self.x, stage);
        StageEval::guess(guess, self.sim.charged() - before)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PartialDetect;

impl Property for PartialDetect {
    fn id(&self) -> &str {
        "partial-detect"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        Ok(Box::new(partial_detect_property(&ProgramIndex::new(
            input.clone(),
        ))))
    }
}

/// `P_Q(n)`: the `n`-th machine (in pair order) that diverges somewhere.
///
/// At stage `t`, machine `a <= t` contributes its `P_P` pair once the `P_P`
/// guesses for `a` have been identical over the last `window` stages. The
/// contributed pairs are sorted by code and position `n` names the machine of
/// the `(n+1)`-th pair.
pub struct PartialEnumStages {
    n: u64,
    window: u64,
    sim: Simulator,
    detect: HashMap<(u64, u64), Nat>,
}

pub fn partial_enum_property(n: u64, window: u64) -> PartialEnumStages {
    PartialEnumStages {
        n,
        window: window.max(1),
        sim: Simulator::new(),
        detect: HashMap::new(),
    }
}

impl PartialEnumStages {
    fn detect(&mut self, a: u64, s: u64) -> Nat {
        if let Some(g) = self.detect.get(&(a, s)) {
            return g.clone();
        }
        let g = detect_guess(&mut self.sim, &ProgramIndex::from(a), s);
        self.detect.insert((a, s), g.clone());
        g
    }

    /// Pairs confirmed at stage `t`, sorted by code.
    pub fn confirmed_pairs(&mut self, stage: u64) -> Vec<(Nat, u64)> {
        if stage + 1 < self.window {
            return Vec::new();
        }
        let first = stage + 1 - self.window;
        let mut pairs = Vec::new();
        for a in 0..=stage {
            let current = self.detect(a, stage);
            if (first..stage).all(|s| self.detect(a, s) == current) {
                pairs.push((current, a));
            }
        }
        pairs.sort();
        pairs
    }
}

impl StageFunction for PartialEnumStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        if stage > budget {
            return StageEval::no_output(0);
        }
        let before = self.sim.charged();
        let pairs = self.confirmed_pairs(stage);
        let steps = self.sim.charged() - before;
        match pairs.get(self.n as usize) {
            Some((_, a)) => StageEval::guess(Nat::from(*a), steps),
            None => StageEval::no_output(steps),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PartialEnum {
    window: u64,
}

impl PartialEnum {
    pub fn new(window: u64) -> Self {
        PartialEnum { window }
    }
}

impl Property for PartialEnum {
    fn id(&self) -> &str {
        "partial-enum"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let n = u64::try_from(input).map_err(|_| Error::InvalidNumber(input.to_string()))?;
        Ok(Box::new(partial_enum_property(n, self.window)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_engine::{run_stage_function, stabilization, BudgetSchedule, Verdict};
    use crate::machine::{literal_index, run, Machine, MachineKind};
    use crate::zoo;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn stream(f: &mut dyn StageFunction, t_max: u64) -> crate::limit_engine::GuessStream {
        run_stage_function("p", &nat(0), f, t_max, BudgetSchedule::default())
    }

    #[test]
    fn diverger_settles_on_input_zero() {
        let x = ProgramIndex::from(0u64);
        let s = stream(&mut partial_detect_property(&x), 30);
        assert!(s.guesses().all(|g| *g == tau(&nat(0), &nat(0))));
    }

    #[test]
    fn literal_keeps_moving() {
        let x = literal_index(&nat(6));
        let s = stream(&mut partial_detect_property(&x), 30);
        // "110" needs three steps, so stages from 3 on see every input halt.
        for e in &s.events[3..] {
            assert_eq!(e.outcome.guess(), Some(&tau(x.value(), &nat(e.stage))));
        }
        assert_eq!(stabilization(&s, 16).verdict, Verdict::StillChanging);
    }

    #[test]
    fn loops_on_two_settles_at_two() {
        let x = zoo::loops_on_two();
        let s = stream(&mut partial_detect_property(&x), 40);
        let r = stabilization(&s, 16);
        assert_eq!(r.verdict, Verdict::Stabilized);
        assert_eq!(r.last_value, Some(tau(x.value(), &nat(2))));
        // Oracle: inputs 0 and 1 halt, 2 does not within a large budget.
        assert!(run(&x, &nat(0), 10_000).is_halted());
        assert!(run(&x, &nat(1), 10_000).is_halted());
        assert!(!run(&x, &nat(2), 10_000).is_halted());
    }

    #[test]
    fn enumeration_over_small_indices() {
        // Every index below 5 decodes to a diverger; 5 is the literal for 0.
        for i in 0..5u64 {
            assert!(matches!(
                Machine::decode(&ProgramIndex::from(i)).kind(),
                MachineKind::Diverger
            ));
        }
        let window = 8;
        let mut settled = Vec::new();
        for n in 0..3u64 {
            let s = stream(&mut partial_enum_property(n, window), 30);
            let r = stabilization(&s, 8);
            assert_eq!(r.verdict, Verdict::Stabilized);
            settled.push(r.last_value.unwrap());
        }
        assert_eq!(settled, vec![nat(0), nat(1), nat(2)]);
        let mut early = partial_enum_property(0, window);
        assert_eq!(early.eval(window - 2, 1000).outcome.guess(), None);
    }
}
