//! Brute-force ground truth. Everything here is built from the machine module
//! alone and every answer is relative to the simulation budget it was given.

use std::fmt;

use num_rational::Ratio;
use num_traits::One;

use crate::machine::{literal_index, run, run_on_empty, ProgramIndex, RunResult};
use crate::{Error, Nat, Result};

/// Least `y <= literal_index(x)` whose run on the empty tape halts with `x`
/// within `budget` steps.
pub fn brute_k(x: &Nat, budget: u64) -> Nat {
    let literal = literal_index(x).into_value();
    let mut y = Nat::default();
    while y < literal {
        if run_on_empty(&ProgramIndex::new(y.clone()), budget).output() == Some(x) {
            return y;
        }
        y += 1u8;
    }
    literal
}

/// Ascending list of `x < upto` that no index below `literal_index(x)`
/// produces within `budget` steps.
pub fn brute_incompressible(upto: u64, budget: u64) -> Vec<Nat> {
    (0..upto)
        .map(Nat::from)
        .filter(|x| brute_k(x, budget) == literal_index(x).into_value())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Confirmed,
    Refuted { witness: Nat },
}

/// Budget-relative answer to an equality question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: String,
    pub budget: u64,
    pub verdict: CertificateVerdict,
    /// Inputs skipped because a run did not halt within the budget.
    pub unresolved: Vec<Nat>,
}

impl Certificate {
    pub fn witness(&self) -> Option<&Nat> {
        match &self.verdict {
            CertificateVerdict::Refuted { witness } => Some(witness),
            CertificateVerdict::Confirmed => None,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            CertificateVerdict::Confirmed => write!(f, "confirmed: {}", self.claim)?,
            CertificateVerdict::Refuted { witness } => {
                write!(f, "refuted at {witness}: {}", self.claim)?
            }
        }
        write!(f, " (budget {}", self.budget)?;
        if !self.unresolved.is_empty() {
            write!(f, ", {} unresolved", self.unresolved.len())?;
        }
        write!(f, ")")
    }
}

/// Compares `i` and `j` on inputs `0..=n`. Refuted at the least input where
/// both halt within `budget` with different outputs.
pub fn brute_equal_upto(i: &ProgramIndex, j: &ProgramIndex, n: u64, budget: u64) -> Certificate {
    let claim = format!("machines {i} and {j} agree on inputs 0..={n}");
    let mut unresolved = Vec::new();
    for z in 0..=n {
        let x = Nat::from(z);
        match (run(i, &x, budget), run(j, &x, budget)) {
            (RunResult::Halted { output: a, .. }, RunResult::Halted { output: b, .. }) => {
                if a != b {
                    return Certificate {
                        claim,
                        budget,
                        verdict: CertificateVerdict::Refuted { witness: x },
                        unresolved,
                    };
                }
            }
            _ => unresolved.push(x),
        }
    }
    Certificate {
        claim,
        budget,
        verdict: CertificateVerdict::Confirmed,
        unresolved,
    }
}

/// Exact `Err(t)`: the fraction of `y` in `1..=t` where the outputs differ.
/// Every run must halt within `budget`.
pub fn brute_err(i: &ProgramIndex, j: &ProgramIndex, t: u64, budget: u64) -> Result<Ratio<Nat>> {
    if t == 0 {
        return Err(Error::ZeroStage);
    }
    let mut differences = 0u64;
    for y in 1..=t {
        let x = Nat::from(y);
        let output = |m: &ProgramIndex| match run(m, &x, budget) {
            RunResult::Halted { output, .. } => Ok(output),
            RunResult::OutOfBudget => Err(Error::BudgetOverrun {
                index: m.value().clone(),
                input: x.clone(),
                budget,
            }),
        };
        let (a, b) = (output(i)?, output(j)?);
        differences += u64::from(a != b);
    }
    Ok(Ratio::new(Nat::from(differences), Nat::from(t)))
}

/// `Err(t)` for `t = 1..=t_max`, with the first stage from which the simplest
/// fraction within `eps(t)` of `Err(t)` equals `target` for every later `t`.
pub fn first_stable_stage(
    i: &ProgramIndex,
    j: &ProgramIndex,
    t_max: u64,
    budget: u64,
    target: &Ratio<Nat>,
    eps: impl Fn(u64) -> Ratio<Nat>,
) -> Result<Option<u64>> {
    let mut first = None;
    for t in 1..=t_max {
        let err = brute_err(i, j, t, budget)?;
        let e = eps(t);
        let lo = if err > e { &err - &e } else { Ratio::default() };
        let hi = (&err + &e).min(Ratio::one());
        if simplest_by_scan(&lo, &hi) == *target {
            first.get_or_insert(t);
        } else {
            first = None;
        }
    }
    Ok(first)
}

/// Least denominator first, then least numerator.
fn simplest_by_scan(lo: &Ratio<Nat>, hi: &Ratio<Nat>) -> Ratio<Nat> {
    let mut d = Nat::one();
    loop {
        let mut n = Nat::default();
        while n <= d {
            let c = Ratio::new(n.clone(), d.clone());
            if *lo <= c && c <= *hi {
                return c;
            }
            n += 1u8;
        }
        d += 1u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn q(n: u64, d: u64) -> Ratio<Nat> {
        Ratio::new(nat(n), nat(d))
    }

    #[test]
    fn k_is_bounded_by_the_literal_and_monotone_in_budget() {
        for x in 0..64u64 {
            let x = nat(x);
            let small = brute_k(&x, 50);
            let large = brute_k(&x, 2000);
            assert!(small <= literal_index(&x).into_value());
            assert!(large <= small);
        }
    }

    #[test]
    fn small_values_are_incompressible() {
        let list = brute_incompressible(256, 2000);
        assert_eq!(list.len(), 256);
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn equality_certificates() {
        let i = zoo::slow_identity();
        let c = brute_equal_upto(&i, &i, 20, 1000);
        assert_eq!(c.verdict, CertificateVerdict::Confirmed);
        let c = brute_equal_upto(&literal_index(&nat(3)), &literal_index(&nat(4)), 20, 1000);
        assert_eq!(c.witness(), Some(&nat(0)));
        let c = brute_equal_upto(&zoo::slow_identity(), &zoo::differs_at_three(), 20, 1000);
        let z = c.witness().unwrap().clone();
        assert_eq!(z, nat(3));
        assert_ne!(
            run(&zoo::slow_identity(), &z, 1000).output(),
            run(&zoo::differs_at_three(), &z, 1000).output()
        );
        let c = brute_equal_upto(&i, &zoo::loops_on_two(), 5, 1000);
        assert!(c.unresolved.contains(&nat(2)));
        assert!(c.to_string().contains("budget 1000"));
    }

    #[test]
    fn error_ratios() {
        let i = zoo::append_zero();
        assert_eq!(brute_err(&i, &i, 7, 1000).unwrap(), q(0, 1));
        assert_eq!(
            brute_err(&i, &zoo::mark_multiples_of_three(), 9, 1000).unwrap(),
            q(1, 3)
        );
        assert_eq!(
            brute_err(&i, &zoo::mark_at_most_five(), 100, 5000).unwrap(),
            q(1, 20)
        );
        assert!(matches!(brute_err(&i, &i, 0, 10), Err(Error::ZeroStage)));
        assert!(matches!(
            brute_err(&i, &zoo::loops_on_two(), 5, 1000),
            Err(Error::BudgetOverrun { .. })
        ));
    }

    #[test]
    fn first_stable_stage_for_thirds() {
        let (i, j) = (zoo::append_zero(), zoo::mark_multiples_of_three());
        let t = first_stable_stage(&i, &j, 40, 5000, &q(1, 3), |t| q(1, t)).unwrap();
        assert!(matches!(t, Some(s) if s <= 24), "{t:?}");
    }
}
