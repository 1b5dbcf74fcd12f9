use std::io::{self, Write};

use anyhow::{bail, Result};
use clap::Args;
use limitlab::machine::{Machine, ProgramIndex, RunResult};
use limitlab::normal_form::{history_witnesses, is_least_history, lambda_among, mu_history, u};
use limitlab::{zoo, Nat};
use serde_json::json;

#[derive(Args)]
pub struct NfCheckArgs {
    /// Machines to check; the built-in sample when absent.
    #[arg(long = "index")]
    indices: Vec<String>,
    /// Inputs `0..=max_input`.
    #[arg(long, default_value = "5", value_parser = crate::parse_u64)]
    max_input: u64,
    #[arg(long, default_value = "200", value_parser = crate::parse_u64)]
    budget: u64,
    /// Longest run checked. History codes roughly double in length per step.
    #[arg(long, default_value = "12", value_parser = crate::parse_u64)]
    max_steps: u64,
}

/// History codes below `2^(2^16)` are searched.
const BOUND_LOG2: usize = 1 << 16;

enum Verdict {
    Agree,
    Disagree(&'static str),
    Skipped(&'static str),
}

fn check(machine: &Machine, x: &Nat, budget: u64, max_steps: u64, bound: &Nat) -> Verdict {
    let output = match machine.run(Some(x), budget) {
        RunResult::Halted { output, steps } if steps <= max_steps => output,
        RunResult::Halted { .. } => return Verdict::Skipped("run longer than max-steps"),
        RunResult::OutOfBudget => return Verdict::Skipped("no halt within budget"),
    };
    let Some(mu) = mu_history(machine, x, bound).found().cloned() else {
        return Verdict::Skipped("least history exceeds the search bound");
    };
    if u(&mu) != output {
        return Verdict::Disagree("U of the least history differs from the run output");
    }
    let witnesses = history_witnesses(machine, x, bound);
    let least: Vec<&Nat> = witnesses
        .iter()
        .filter(|y| is_least_history(machine, x, y))
        .collect();
    if least != [&mu] {
        return Verdict::Disagree("T'' does not hold at exactly the least history");
    }
    let lambda = lambda_among(witnesses.iter().cloned(), bound, |y| {
        is_least_history(machine, x, y)
    });
    if lambda.found() != Some(&mu) {
        return Verdict::Disagree("lambda over T'' differs from mu over T");
    }
    Verdict::Agree
}

pub fn cmd_nf_check(args: NfCheckArgs) -> Result<()> {
    let indices: Vec<ProgramIndex> = if args.indices.is_empty() {
        zoo::all().into_iter().map(|(_, i)| i).collect()
    } else {
        args.indices
            .iter()
            .map(|s| crate::index(s))
            .collect::<Result<_>>()?
    };
    let bound = Nat::from(1u8) << BOUND_LOG2;
    let mut out = io::stdout().lock();
    let mut failures = 0;
    for index in &indices {
        let machine = Machine::decode(index);
        for x in 0..=args.max_input {
            let (verdict, reason) =
                match check(&machine, &Nat::from(x), args.budget, args.max_steps, &bound) {
                    Verdict::Agree => ("agree", None),
                    Verdict::Disagree(r) => {
                        failures += 1;
                        ("disagree", Some(r))
                    }
                    Verdict::Skipped(r) => ("skipped", Some(r)),
                };
            let record = json!({
                "record": "nf_check",
                "index": index.to_string(),
                "input": x.to_string(),
                "verdict": verdict,
                "reason": reason,
            });
            crate::emit(&mut out, &record)?;
        }
    }
    out.flush()?;
    if failures > 0 {
        bail!("{failures} normal-form disagreements");
    }
    Ok(())
}
