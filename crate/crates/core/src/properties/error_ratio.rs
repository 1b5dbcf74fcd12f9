use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::rational::{error_fraction, parts, saturating_sub, simplest_rational_in, Rational};
use super::split_pair;
use crate::encodings::{tau_k, tau_k_inv};
use crate::limit_engine::{Property, StageEval, StageFunction};
use crate::machine::{ProgramIndex, RunResult, Simulator};
use crate::{Nat, Result};

/// Error bound `ε(t)` for `t >= 1`: values in `(0, 1]`, non-increasing, and
/// eventually below every positive rational.
pub trait ErrorBound: fmt::Debug + Send + Sync {
    fn at(&self, t: u64) -> Rational;
}

/// `ε(t) = 1/t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InverseStage;

impl ErrorBound for InverseStage {
    fn at(&self, t: u64) -> Rational {
        error_fraction(1, t.max(1))
    }
}

/// `ε(t) = 1/⌈√t⌉`. Shrinks slowly enough that an error count which stays
/// bounded (finitely many differences) ends up within `ε` of 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct InverseCeilSqrt;

impl ErrorBound for InverseCeilSqrt {
    fn at(&self, t: u64) -> Rational {
        let t = t.max(1);
        let s = t.isqrt();
        let ceil = if s * s < t { s + 1 } else { s };
        error_fraction(1, ceil)
    }
}

/// Limit of the error ratio of two total machines.
///
/// Stage `t >= 1` counts the inputs `y` in `1..=t` where the outputs differ,
/// both machines running within the stage budget, and guesses
/// `τ⁴(i, j, a, b)` for the simplest `a/b` within `ε(t)` of `count/t`.
pub struct ErrorRatioStages {
    i: ProgramIndex,
    j: ProgramIndex,
    eps: Arc<dyn ErrorBound>,
    sim: Simulator,
}

pub fn error_ratio(
    i: &ProgramIndex,
    j: &ProgramIndex,
    eps: Arc<dyn ErrorBound>,
) -> ErrorRatioStages {
    ErrorRatioStages {
        i: i.clone(),
        j: j.clone(),
        eps,
        sim: Simulator::new(),
    }
}

impl ErrorRatioStages {
    /// `Err(t)` with both machines run within `budget`, or `None` on a cutoff.
    fn err(&mut self, t: u64, budget: u64) -> Option<Rational> {
        let mut differences = 0;
        for y in 1..=t {
            let x = Nat::from(y);
            match (
                self.sim.run(&self.i, &x, budget),
                self.sim.run(&self.j, &x, budget),
            ) {
                (RunResult::Halted { output: a, .. }, RunResult::Halted { output: b, .. }) => {
                    differences += u64::from(a != b);
                }
                _ => return None,
            }
        }
        Some(error_fraction(differences, t))
    }
}

impl StageFunction for ErrorRatioStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        if stage == 0 {
            return StageEval::no_output(0);
        }
        let before = self.sim.charged();
        let err = self.err(stage, budget);
        let steps = self.sim.charged() - before;
        let Some(err) = err else {
            return StageEval::no_output(steps);
        };
        let eps = self.eps.at(stage);
        let lo = saturating_sub(&err, &eps);
        let hi = (&err + &eps).min(Rational::one());
        let best = simplest_rational_in(&lo, &hi).expect("lo <= hi within [0, 1]");
        let (a, b) = parts(&best);
        let code =
            tau_k(&[self.i.value().clone(), self.j.value().clone(), a, b]).expect("four parts");
        StageEval::guess(code, steps)
    }
}

/// Splits a guess `τ⁴(i, j, a, b)` into the two indices and `a/b`. Returns
/// `None` when the denominator is zero.
pub fn decode_error_guess(code: &Nat) -> Option<(ProgramIndex, ProgramIndex, Rational)> {
    let mut parts = tau_k_inv(code, 4).expect("arity 4").into_iter();
    let (i, j, a, b) = (parts.next()?, parts.next()?, parts.next()?, parts.next()?);
    if b == Nat::default() {
        return None;
    }
    Some((
        ProgramIndex::new(i),
        ProgramIndex::new(j),
        Rational::new(a, b),
    ))
}

#[derive(Clone, Debug)]
pub struct ErrorRatio {
    eps: Arc<dyn ErrorBound>,
}

impl ErrorRatio {
    pub fn new(eps: Arc<dyn ErrorBound>) -> Self {
        ErrorRatio { eps }
    }
}

impl Property for ErrorRatio {
    fn id(&self) -> &str {
        "error-ratio"
    }

    /// Input is the pair code `τ(i, j)`.
    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let (i, j) = split_pair(input);
        Ok(Box::new(error_ratio(&i, &j, self.eps.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_engine::{
        run_stage_function, stabilization, BudgetSchedule, StageOutcome, Verdict,
    };
    use crate::zoo;

    fn q(n: u64, d: u64) -> Rational {
        Rational::new(Nat::from(n), Nat::from(d))
    }

    fn settled_ratio(
        i: &ProgramIndex,
        j: &ProgramIndex,
        eps: Arc<dyn ErrorBound>,
        t_max: u64,
    ) -> Option<Rational> {
        let s = run_stage_function(
            "err",
            &Nat::from(0u8),
            &mut error_ratio(i, j, eps),
            t_max,
            BudgetSchedule::default(),
        );
        assert_eq!(s.events[0].outcome, StageOutcome::NoOutput);
        let r = stabilization(&s, 16);
        (r.verdict == Verdict::Stabilized)
            .then(|| decode_error_guess(&r.last_value.unwrap()).unwrap().2)
    }

    #[test]
    fn bounds() {
        assert_eq!(InverseStage.at(4), q(1, 4));
        assert_eq!(InverseCeilSqrt.at(10), q(1, 4));
        assert_eq!(InverseCeilSqrt.at(16), q(1, 4));
        assert_eq!(InverseCeilSqrt.at(1), q(1, 1));
    }

    #[test]
    fn identical_machines_guess_zero_from_stage_one() {
        let i = zoo::slow_identity();
        let mut f = error_ratio(&i, &i, Arc::new(InverseStage));
        for t in 1..10 {
            let g = f.eval(t, 1000).outcome.guess().cloned().unwrap();
            let (gi, gj, r) = decode_error_guess(&g).unwrap();
            assert_eq!((gi, gj, r), (i.clone(), i.clone(), q(0, 1)));
        }
    }

    #[test]
    fn multiples_of_three_settle_at_one_third() {
        let (i, j) = (zoo::append_zero(), zoo::mark_multiples_of_three());
        assert_eq!(
            settled_ratio(&i, &j, Arc::new(InverseStage), 40),
            Some(q(1, 3))
        );
    }

    #[test]
    fn finitely_many_differences_settle_at_zero() {
        let (i, j) = (zoo::append_zero(), zoo::mark_at_most_five());
        assert_eq!(
            settled_ratio(&i, &j, Arc::new(InverseCeilSqrt), 60),
            Some(q(0, 1))
        );
        // With 1/t the interval around 5/t never reaches 0.
        assert_ne!(
            settled_ratio(&i, &j, Arc::new(InverseStage), 60),
            Some(q(0, 1))
        );
    }

    #[test]
    fn cutoff_gives_no_output() {
        let (i, j) = (zoo::slow_identity(), zoo::loops_on_two());
        let mut f = error_ratio(&i, &j, Arc::new(InverseStage));
        assert!(f.eval(1, 100).outcome.guess().is_some());
        assert_eq!(f.eval(2, 100).outcome, StageOutcome::NoOutput);
    }
}
