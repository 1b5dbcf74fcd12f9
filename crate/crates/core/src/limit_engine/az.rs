//! The A_Z handle set and the prefix-composition lemma.
//!
//! A_Z is the set of canonical literal programs: for each `x` the machine that
//! ignores its input and outputs `x`. Handles are cheap to compute and to
//! invert, and the set is recursively enumerable. Any limit property can be
//! lifted to act on handles by composing its stage function with the handle's
//! output, which [`AzLifted`] does through [`compose_prefix_property`].

use std::sync::Arc;

use super::{Property, StageEval, StageFunction};
use crate::encodings::{binary_digits, decode_prefix, encode_prefix};
use crate::machine::{literal_index, Machine, MachineKind, ProgramIndex};
use crate::{Error, Nat, Result};

/// `a_Z(x)`: the canonical literal program outputting `x`.
pub fn az_index(x: &Nat) -> ProgramIndex {
    literal_index(x)
}

/// `a_Z⁻¹(y)`, defined exactly on the image of [`az_index`].
pub fn az_inverse(y: &ProgramIndex) -> Result<Nat> {
    match Machine::decode(y).kind() {
        MachineKind::Literal(payload) if payload.bits() == binary_digits(&payload.value()) => {
            Ok(payload.value())
        }
        _ => Err(Error::NotAzHandle(y.value().clone())),
    }
}

/// A total sequence `S(0), S(1), ...`.
pub trait Sequence {
    fn term(&self, n: u64) -> Nat;
}

impl<F: Fn(u64) -> Nat> Sequence for F {
    fn term(&self, n: u64) -> Nat {
        self(n)
    }
}

/// The constant sequence produced by an A_Z handle: every term is the handle's
/// output, obtained by running the literal machine.
#[derive(Clone, Debug)]
pub struct AzSequence {
    machine: Machine,
    steps: u64,
}

impl AzSequence {
    pub fn new(handle: &ProgramIndex) -> Result<Self> {
        let value = az_inverse(handle)?;
        Ok(AzSequence {
            machine: Machine::decode(handle),
            steps: binary_digits(&value).len() as u64,
        })
    }
}

impl Sequence for AzSequence {
    fn term(&self, n: u64) -> Nat {
        self.machine
            .run(Some(&Nat::from(n)), self.steps)
            .output()
            .cloned()
            .expect("canonical literal programs halt within their payload length")
    }
}

/// A procedure reading sequence prefixes `⟨S(0),...,S(t)⟩`.
pub trait PrefixProcedure {
    fn eval(&mut self, prefix_code: &Nat, budget: u64) -> StageEval;
}

/// Stage `t` evaluates `q` on `⟨S(0),...,S(t)⟩`.
pub struct ComposedStages {
    q: Box<dyn PrefixProcedure>,
    seq: Box<dyn Sequence>,
    terms: Vec<Nat>,
}

/// `P(S) = lim_t q(⟨S(0),...,S(t)⟩)` as a stage function.
pub fn compose_prefix_property(
    q: Box<dyn PrefixProcedure>,
    seq: Box<dyn Sequence>,
) -> ComposedStages {
    ComposedStages {
        q,
        seq,
        terms: Vec::new(),
    }
}

impl StageFunction for ComposedStages {
    fn eval(&mut self, stage: u64, budget: u64) -> StageEval {
        while self.terms.len() as u64 <= stage {
            let n = self.terms.len() as u64;
            self.terms.push(self.seq.term(n));
        }
        let code = encode_prefix(&self.terms[..=stage as usize]).expect("prefix is non-empty");
        self.q.eval(&code, budget)
    }
}

/// The prefix procedure behind a lifted property: it reads the first term of
/// the prefix as the underlying input and runs stage `t` (the prefix length
/// minus one) of the underlying stage function.
pub struct AzReduction {
    property: Arc<dyn Property + Send + Sync>,
    current: Option<(Nat, Box<dyn StageFunction>, u64)>,
}

impl AzReduction {
    pub fn new(property: Arc<dyn Property + Send + Sync>) -> Self {
        AzReduction {
            property,
            current: None,
        }
    }
}

impl PrefixProcedure for AzReduction {
    fn eval(&mut self, prefix_code: &Nat, budget: u64) -> StageEval {
        let terms = decode_prefix(prefix_code);
        let stage = terms.len() as u64 - 1;
        let input = &terms[0];
        // Stage functions are evaluated in order, so restart whenever the
        // input changes or an earlier stage is requested.
        let reusable = matches!(&self.current, Some((x, _, next)) if x == input && *next <= stage);
        if !reusable {
            match self.property.stage_function(input) {
                Ok(f) => self.current = Some((input.clone(), f, 0)),
                Err(_) => return StageEval::no_output(0),
            }
        }
        let (_, f, next) = self.current.as_mut().expect("stage function present");
        let mut eval = StageEval::no_output(0);
        while *next <= stage {
            // Earlier stages replay with the current budget; properties only
            // use the budget as a per-stage cap, so the final stage is exact.
            eval = f.eval(*next, budget);
            *next += 1;
        }
        eval
    }
}

/// A property lifted to act on A_Z handles: `P'(a_Z(x)) = P(x)`.
pub struct AzLifted {
    inner: Arc<dyn Property + Send + Sync>,
    id: String,
}

impl AzLifted {
    pub fn new(inner: Arc<dyn Property + Send + Sync>) -> Self {
        let id = format!("az:{}", inner.id());
        AzLifted { inner, id }
    }
}

impl Property for AzLifted {
    fn id(&self) -> &str {
        &self.id
    }

    fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
        let seq = AzSequence::new(&ProgramIndex::new(input.clone()))?;
        Ok(Box::new(compose_prefix_property(
            Box::new(AzReduction::new(self.inner.clone())),
            Box::new(seq),
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_engine::{run_stages, BudgetSchedule};

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn handles_round_trip() {
        for x in 0..500u64 {
            assert_eq!(az_inverse(&az_index(&nat(x))).unwrap(), nat(x));
        }
        assert_eq!(az_index(&nat(0)), ProgramIndex::from(5u64));
    }

    #[test]
    fn non_handles_are_rejected() {
        // 0 is the empty program, 3 is "00", 11 is "100" (payload with a leading zero).
        for y in [0u64, 1, 2, 3, 4, 11] {
            assert!(matches!(
                az_inverse(&ProgramIndex::from(y)),
                Err(Error::NotAzHandle(_))
            ));
        }
        let handles: Vec<u64> = (0..200u64)
            .filter(|y| az_inverse(&ProgramIndex::from(*y)).is_ok())
            .collect();
        let expected: Vec<u64> = (0..200u64)
            .map(|x| az_index(&nat(x)).value().clone())
            .filter(|v| *v < nat(200))
            .map(|v| v.try_into().unwrap())
            .collect();
        assert_eq!(handles, expected);
    }

    #[test]
    fn az_sequence_is_constant() {
        let seq = AzSequence::new(&az_index(&nat(37))).unwrap();
        for n in 0..20 {
            assert_eq!(seq.term(n), nat(37));
        }
    }

    struct Echo;

    impl PrefixProcedure for Echo {
        fn eval(&mut self, prefix_code: &Nat, _budget: u64) -> StageEval {
            let terms = decode_prefix(prefix_code);
            StageEval::guess(terms.iter().sum(), 0)
        }
    }

    #[test]
    fn composition_sees_growing_prefixes() {
        let mut f = compose_prefix_property(Box::new(Echo), Box::new(|n: u64| nat(n)));
        let sums: Vec<Nat> = (0..6)
            .map(|t| f.eval(t, 0).outcome.guess().unwrap().clone())
            .collect();
        assert_eq!(sums, [0u64, 1, 3, 6, 10, 15].map(nat).to_vec());
    }

    struct Doubler;

    impl Property for Doubler {
        fn id(&self) -> &str {
            "doubler"
        }

        fn stage_function(&self, input: &Nat) -> Result<Box<dyn StageFunction>> {
            let x = input.clone();
            Ok(Box::new(move |t: u64, _b: u64| {
                if t < 2 {
                    StageEval::no_output(1)
                } else {
                    StageEval::guess(&x * 2u32 + t.min(4), 1)
                }
            }))
        }
    }

    #[test]
    fn lifted_property_matches_direct_stream() {
        let lifted = AzLifted::new(Arc::new(Doubler));
        for x in [0u64, 3, 12] {
            let direct = run_stages(&Doubler, &nat(x), 8, BudgetSchedule::default()).unwrap();
            let via = run_stages(
                &lifted,
                az_index(&nat(x)).value(),
                8,
                BudgetSchedule::default(),
            )
            .unwrap();
            assert_eq!(direct.outcomes(), via.outcomes());
            assert_eq!(via.last_guess(), Some(&nat(2 * x + 4)));
        }
        assert!(lifted.stage_function(&nat(11)).is_err());
        assert_eq!(lifted.id(), "az:doubler");
    }
}
