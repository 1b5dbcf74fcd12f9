use std::cell::RefCell;
use std::collections::HashMap;

use super::Computation;
use crate::encodings::tau_inv;
use crate::limit_engine::{BudgetSchedule, Property, StageFunction, StageOutcome};
use crate::machine::Configuration;
use crate::Nat;

struct Stream {
    f: Option<Box<dyn StageFunction>>,
    outcomes: Vec<StageOutcome>,
}

/// A limit property viewed as a computation on inputs `τ(x, n)`.
///
/// The initial configuration holds `τ(x, n)` in binary. One step evaluates
/// stage `n` of the property on `x`: a guess `v` leads to a halted
/// configuration holding `v` in binary, and a stage without output leaves the
/// configuration unchanged, so the computation never halts. Histories are
/// therefore two configurations long.
pub struct StageComputation<P> {
    property: P,
    schedule: BudgetSchedule,
    streams: RefCell<HashMap<Nat, Stream>>,
}

impl<P: Property> StageComputation<P> {
    pub fn new(property: P, schedule: BudgetSchedule) -> Self {
        StageComputation {
            property,
            schedule,
            streams: RefCell::new(HashMap::new()),
        }
    }

    pub fn property(&self) -> &P {
        &self.property
    }

    /// Stage `n` of the property on `x`, evaluating earlier stages first.
    pub fn outcome(&self, x: &Nat, n: u64) -> StageOutcome {
        let mut streams = self.streams.borrow_mut();
        let stream = streams.entry(x.clone()).or_insert_with(|| Stream {
            f: self.property.stage_function(x).ok(),
            outcomes: Vec::new(),
        });
        let Some(f) = stream.f.as_mut() else {
            return StageOutcome::NoOutput;
        };
        while stream.outcomes.len() as u64 <= n {
            let t = stream.outcomes.len() as u64;
            stream.outcomes.push(f.eval(t, self.schedule.at(t)).outcome);
        }
        stream.outcomes[n as usize].clone()
    }
}

impl<P: Property> Computation for StageComputation<P> {
    fn initial(&self, input: &Nat) -> Configuration {
        Configuration::initial(Some(input))
    }

    fn successor(&self, cfg: &Configuration) -> Configuration {
        if cfg.is_halted() {
            return cfg.clone();
        }
        let (x, n) = tau_inv(&cfg.output());
        let Ok(n) = u64::try_from(n) else {
            return cfg.clone();
        };
        match self.outcome(&x, n) {
            StageOutcome::Guess(v) => {
                let mut out = Configuration::initial(Some(&v));
                out.state = 0;
                out
            }
            StageOutcome::NoOutput => cfg.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::tau;
    use crate::limit_engine::StageEval;
    use crate::normal_form::{
        history_witnesses, is_history, is_least_history, is_mind_change, lambda_mind_change,
        least_history_below, output, stage_witnesses,
    };
    use crate::Result;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    /// Guesses from a fixed script, then repeats the last entry.
    struct Scripted(Vec<Option<u64>>);

    impl Property for Scripted {
        fn id(&self) -> &str {
            "scripted"
        }

        fn stage_function(&self, _input: &Nat) -> Result<Box<dyn StageFunction>> {
            let script = self.0.clone();
            Ok(Box::new(move |t: u64, _b: u64| {
                let at = script[(t as usize).min(script.len() - 1)];
                match at {
                    Some(v) => StageEval::guess(nat(v), 0),
                    None => StageEval::no_output(0),
                }
            }))
        }
    }

    fn comp(script: &[Option<u64>]) -> StageComputation<Scripted> {
        StageComputation::new(Scripted(script.to_vec()), BudgetSchedule::default())
    }

    fn big_bound() -> Nat {
        nat(1) << 20_000u32
    }

    /// Independent check of the joint quantifier: collect every halting
    /// history below `y` at stages `m < n` by simulation and compare outputs.
    fn mind_change_by_enumeration<P: Property>(
        c: &StageComputation<P>,
        x: u64,
        n: u64,
        y: &Nat,
    ) -> bool {
        let xn = tau(&nat(x), &nat(n));
        if !is_history(c, &xn, y) {
            return false;
        }
        (0..n).all(|m| {
            history_witnesses(c, &tau(&nat(x), &nat(m)), y)
                .iter()
                .all(|z| output(z) != output(y))
        })
    }

    #[test]
    fn stage_histories_have_two_configurations() {
        let c = comp(&[Some(3)]);
        let h = least_history_below(&c, &tau(&nat(4), &nat(0)), &big_bound()).unwrap();
        assert_eq!(crate::encodings::decode_prefix(&h).len(), 2);
        assert_eq!(output(&h), nat(3));
        assert!(is_least_history(&c, &tau(&nat(4), &nat(0)), &h));
    }

    #[test]
    fn no_output_stage_never_halts() {
        let c = comp(&[None, Some(1)]);
        assert!(least_history_below(&c, &tau(&nat(2), &nat(0)), &big_bound()).is_none());
        assert!(least_history_below(&c, &tau(&nat(2), &nat(1)), &big_bound()).is_some());
    }

    #[test]
    fn two_guess_stream_mind_changes() {
        let c = comp(&[Some(3), Some(3), Some(7)]);
        let x = 1u64;
        for n in 0..4u64 {
            let xn = tau(&nat(x), &nat(n));
            let bound = big_bound();
            for y in history_witnesses(&c, &xn, &bound) {
                let expected = mind_change_by_enumeration(&c, x, n, &y);
                assert_eq!(is_mind_change(&c, &xn, &y), expected, "stage {n}");
                // Stage 0 has no earlier stage; stage 2 is the switch to 7.
                assert_eq!(expected, n == 0 || n == 2, "stage {n}");
            }
        }
    }

    #[test]
    fn repeated_guess_is_not_a_mind_change() {
        let c = comp(&[Some(5)]);
        let xn = tau(&nat(0), &nat(1));
        let h = least_history_below(&c, &xn, &big_bound()).unwrap();
        assert!(!is_mind_change(&c, &xn, &h));
    }

    #[test]
    fn final_witness_matches_stabilized_guess() {
        let script = [Some(3), None, Some(7), Some(7), Some(2)];
        let c = comp(&script);
        let x = nat(2);
        // Bound: one past the largest least history over the scripted stages.
        let bound = (0..script.len() as u64)
            .filter_map(|n| least_history_below(&c, &tau(&x, &nat(n)), &big_bound()))
            .max()
            .unwrap()
            + 1u8;
        let found = lambda_mind_change(&c, &x, &bound);
        assert_eq!(output(found.found().unwrap()), nat(2));
        assert!(stage_witnesses(&c, &x, &bound).len() >= script.len() - 1);
    }
}
