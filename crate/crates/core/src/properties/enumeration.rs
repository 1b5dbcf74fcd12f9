use std::sync::Arc;

use super::ClassEnumerator;
use crate::encodings::tau;
use crate::limit_engine::{Property, StageEval, StageFunction};
use crate::machine::{ProgramIndex, RunResult, Simulator};
use crate::{Error, Nat, Result};

/// Least `z <= stage` where both machines halt within `budget` with different
/// outputs.
fn difference_witness(
    sim: &mut Simulator,
    a: &ProgramIndex,
    b: &ProgramIndex,
    stage: u64,
    budget: u64,
) -> Option<u64> {
    (0..=stage).find(|&z| {
        let x = Nat::from(z);
        match (sim.run(a, &x, budget), sim.run(b, &x, budget)) {
            (RunResult::Halted { output: p, .. }, RunResult::Halted { output: q, .. }) => p != q,
            _ => false,
        }
    })
}

/// Indices accepted at `stage`: the first `stage + 1` emissions of `src` in
/// order, keeping one only if it has a difference witness against every index
/// kept before it.
fn accepted(
    sim: &mut Simulator,
    src: &dyn ClassEnumerator,
    stage: u64,
    budget: u64,
) -> Vec<ProgramIndex> {
    let mut kept: Vec<ProgramIndex> = Vec::new();
    for k in 0..=stage {
        let e = src.emit(k);
        let distinct = kept
            .iter()
            .all(|a| difference_witness(sim, a, &e, stage, budget).is_some());
        if distinct {
            kept.push(e);
        }
    }
    kept
}

/// Position `n` of the canonical enumeration of `src`: each function listed
/// once, in order of first occurrence.
pub struct CanonicalStages {
    src: Arc<dyn ClassEnumerator>,
    n: u64,
    sim: Simulator,
}

pub fn canonicalize(src: Arc<dyn ClassEnumerator>, n: u64) -> CanonicalStages {
    CanonicalStages {
        src,
        n,
        sim: Simulator::new(),
    }
}

impl CanonicalStages {
    /// Indices accepted at `stage` under `budget`.
    pub fn accepted(&mut self, stage: u64, budget: u64) -> Vec<ProgramIndex> {
        accepted(&mut self.sim, self.src.as_ref(), stage, budget)
    }
}

impl StageFunction for CanonicalStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        let before = self.sim.charged();
        let kept = self.accepted(stage, budget);
        let steps = self.sim.charged() - before;
        match kept.get(self.n as usize) {
            Some(i) => StageEval::guess(i.value().clone(), steps),
            None => StageEval::no_output(steps),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalEnumeration {
    src: Arc<dyn ClassEnumerator>,
}

impl CanonicalEnumeration {
    pub fn new(src: Arc<dyn ClassEnumerator>) -> Self {
        CanonicalEnumeration { src }
    }
}

impl Property for CanonicalEnumeration {
    fn id(&self) -> &str {
        "canonical"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let n = u64::try_from(input).map_err(|_| Error::InvalidNumber(input.to_string()))?;
        Ok(Box::new(canonicalize(self.src.clone(), n)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    OutputDiffers {
        expected: Nat,
        found: Nat,
    },
    /// `j` did not halt within the `allowed` steps `i` took.
    TooSlow {
        allowed: u64,
    },
}

/// An input on which candidate `j` fails to match canonical machine `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub input: Nat,
    pub kind: ViolationKind,
}

fn violation_with(
    sim: &mut Simulator,
    i: &ProgramIndex,
    j: &ProgramIndex,
    stage: u64,
    budget: u64,
) -> Option<Violation> {
    (0..=stage).find_map(|x| {
        let input = Nat::from(x);
        let RunResult::Halted { output, steps } = sim.run(i, &input, budget) else {
            return None;
        };
        let kind = match sim.run(j, &input, steps) {
            RunResult::OutOfBudget => ViolationKind::TooSlow { allowed: steps },
            RunResult::Halted { output: found, .. } if found != output => {
                ViolationKind::OutputDiffers {
                    expected: output,
                    found,
                }
            }
            RunResult::Halted { .. } => return None,
        };
        Some(Violation { input, kind })
    })
}

/// The least input `x <= stage` where `i` halts within `budget` and `j` either
/// needs more steps than `i` or outputs something else.
pub fn find_violation(
    i: &ProgramIndex,
    j: &ProgramIndex,
    stage: u64,
    budget: u64,
) -> Option<Violation> {
    violation_with(&mut Simulator::new(), i, j, stage, budget)
}

/// Position `n` of the complexity-bound enumeration.
///
/// Pairs `(m, c)` with `m, c <= stage` are visited in `τ` order, pairing the
/// canonical machine at position `m` with candidate `c` of `candidates`. A
/// pair survives while no input `x <= stage` shows a violation; position `n`
/// guesses `τ(i_m, j)` for the `(n+1)`-th survivor.
pub struct ComplexityBoundStages {
    canon: Arc<dyn ClassEnumerator>,
    candidates: Arc<dyn ClassEnumerator>,
    n: u64,
    sim: Simulator,
}

pub fn complexity_bound_enum(
    canon: Arc<dyn ClassEnumerator>,
    candidates: Arc<dyn ClassEnumerator>,
    n: u64,
) -> ComplexityBoundStages {
    ComplexityBoundStages {
        canon,
        candidates,
        n,
        sim: Simulator::new(),
    }
}

impl ComplexityBoundStages {
    /// Survivors at `stage` in `τ` order, up to `limit` of them.
    pub fn survivors(
        &mut self,
        stage: u64,
        budget: u64,
        limit: usize,
    ) -> Vec<(ProgramIndex, ProgramIndex)> {
        let kept = accepted(&mut self.sim, self.canon.as_ref(), stage, budget);
        let mut out = Vec::new();
        for diagonal in 0..=2 * stage {
            for m in diagonal.saturating_sub(stage)..=diagonal.min(stage) {
                let Some(i) = kept.get(m as usize) else {
                    continue;
                };
                let j = self.candidates.emit(diagonal - m);
                if violation_with(&mut self.sim, i, &j, stage, budget).is_none() {
                    out.push((i.clone(), j));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }
}

impl StageFunction for ComplexityBoundStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        let before = self.sim.charged();
        let survivors = self.survivors(stage, budget, self.n as usize + 1);
        let steps = self.sim.charged() - before;
        match survivors.get(self.n as usize) {
            Some((i, j)) => StageEval::guess(tau(i.value(), j.value()), steps),
            None => StageEval::no_output(steps),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComplexityBoundEnumeration {
    canon: Arc<dyn ClassEnumerator>,
    candidates: Arc<dyn ClassEnumerator>,
}

impl ComplexityBoundEnumeration {
    /// `canon` is the source enumerator that gets canonicalized; `candidates`
    /// lists the machines tested against each canonical entry.
    pub fn new(canon: Arc<dyn ClassEnumerator>, candidates: Arc<dyn ClassEnumerator>) -> Self {
        ComplexityBoundEnumeration { canon, candidates }
    }
}

impl Property for ComplexityBoundEnumeration {
    fn id(&self) -> &str {
        "cbe"
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let n = u64::try_from(input).map_err(|_| Error::InvalidNumber(input.to_string()))?;
        Ok(Box::new(complexity_bound_enum(
            self.canon.clone(),
            self.candidates.clone(),
            n,
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::tau_inv;
    use crate::limit_engine::{
        run_stage_function, stabilization, BudgetSchedule, StageOutcome, Verdict,
    };
    use crate::machine::run;
    use crate::properties::Cycle;
    use crate::zoo;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn source() -> Arc<dyn ClassEnumerator> {
        Arc::new(
            Cycle::new(vec![
                zoo::slow_identity(),
                zoo::fast_identity(),
                zoo::slow_identity(),
                zoo::append_zero(),
                zoo::fast_identity(),
                zoo::mark_multiples_of_three(),
                zoo::append_zero(),
            ])
            .unwrap(),
        )
    }

    fn settled(f: &mut dyn StageFunction, t_max: u64) -> Option<Nat> {
        let s = run_stage_function("c", &nat(0), f, t_max, BudgetSchedule::default());
        let r = stabilization(&s, 16);
        (r.verdict == Verdict::Stabilized).then(|| r.last_value.unwrap())
    }

    #[test]
    fn duplicates_collapse_to_first_occurrences() {
        let expected = [
            zoo::slow_identity(),
            zoo::append_zero(),
            zoo::mark_multiples_of_three(),
        ];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(
                settled(&mut canonicalize(source(), n as u64), 30).as_ref(),
                Some(e.value())
            );
        }
        let mut fourth = canonicalize(source(), 3);
        for t in 0..30 {
            assert_eq!(fourth.eval(t, 64 * (t + 1)).outcome, StageOutcome::NoOutput);
        }
    }

    #[test]
    fn single_function_source() {
        let src: Arc<dyn ClassEnumerator> = Arc::new(Cycle::new(vec![zoo::append_zero()]).unwrap());
        assert_eq!(
            settled(&mut canonicalize(src.clone(), 0), 20).as_ref(),
            Some(zoo::append_zero().value())
        );
        let s = run_stage_function(
            "c",
            &nat(0),
            &mut canonicalize(src, 1),
            20,
            BudgetSchedule::default(),
        );
        assert!(s.guesses().next().is_none());
    }

    #[test]
    fn accepted_indices_carry_witnesses() {
        let mut f = canonicalize(source(), 0);
        for t in 0..12u64 {
            let kept = f.accepted(t, 64 * (t + 1));
            for (a, ia) in kept.iter().enumerate() {
                for ib in &kept[a + 1..] {
                    let z =
                        difference_witness(&mut Simulator::new(), ia, ib, t, 64 * (t + 1)).unwrap();
                    assert_ne!(
                        run(ia, &nat(z), 1000).output(),
                        run(ib, &nat(z), 1000).output()
                    );
                }
            }
        }
    }

    #[test]
    fn violations_replay() {
        let (slow, fast, diff) = (
            zoo::slow_identity(),
            zoo::fast_identity(),
            zoo::differs_at_four(),
        );
        assert_eq!(find_violation(&slow, &fast, 64, 1000), None);
        assert_eq!(find_violation(&slow, &slow, 64, 1000), None);
        let v = find_violation(&slow, &diff, 64, 1000).unwrap();
        assert_eq!(v.input, nat(4));
        assert_eq!(
            v.kind,
            ViolationKind::OutputDiffers {
                expected: nat(4),
                found: nat(9)
            }
        );
        // The fast identity bounds nothing slower than itself.
        let v = find_violation(&fast, &slow, 64, 1000).unwrap();
        assert_eq!(
            (v.input, v.kind),
            (nat(0), ViolationKind::TooSlow { allowed: 1 })
        );
    }

    #[test]
    fn survivors_follow_pair_order() {
        let canon: Arc<dyn ClassEnumerator> =
            Arc::new(Cycle::new(vec![zoo::slow_identity()]).unwrap());
        let candidates: Arc<dyn ClassEnumerator> = Arc::new(
            Cycle::new(vec![
                zoo::differs_at_four(),
                zoo::fast_identity(),
                zoo::slow_identity(),
            ])
            .unwrap(),
        );
        let mut f = complexity_bound_enum(canon, candidates, 0);
        // Before input 4 is scanned the differing machine still survives.
        let early = f.survivors(3, 256, 10);
        assert_eq!(early[0], (zoo::slow_identity(), zoo::differs_at_four()));
        let late = f.survivors(8, 576, 10);
        assert!(late.iter().all(|(_, j)| *j != zoo::differs_at_four()));
        assert_eq!(late[0], (zoo::slow_identity(), zoo::fast_identity()));
        let g = settled(&mut f, 30).unwrap();
        assert_eq!(
            tau_inv(&g),
            (
                zoo::slow_identity().into_value(),
                zoo::fast_identity().into_value()
            )
        );
    }
}
