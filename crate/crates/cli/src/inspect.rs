use std::io::{self, Write};

use anyhow::Result;
use clap::Args;
use limitlab::machine::{index_to_program, Machine, MachineKind, RunResult, Symbol};
use limitlab::Nat;

#[derive(Args)]
pub struct InspectArgs {
    /// Program index as a decimal natural.
    index: String,
    /// Input for the bounded trace; the empty tape when absent.
    #[arg(long)]
    input: Option<String>,
    /// Step limit for the trace.
    #[arg(long, default_value = "32", value_parser = crate::parse_u64)]
    steps: u64,
}

pub fn cmd_inspect(args: InspectArgs) -> Result<()> {
    let index = crate::index(&args.index)?;
    let input: Option<Nat> = args.input.as_deref().map(crate::nat).transpose()?;
    let program = index_to_program(&index);
    let machine = Machine::decode(&index);
    let mut out = io::stdout().lock();
    writeln!(out, "index {index}")?;
    writeln!(out, "program {:?}", crate::bit_string(&program))?;
    match machine.kind() {
        MachineKind::Diverger => {
            let why = match program.bits() {
                [] => "empty program",
                [true] => "empty payload",
                _ => "malformed table",
            };
            writeln!(out, "diverger ({why})")?;
        }
        MachineKind::Literal(payload) => {
            let bits: String = payload
                .bits()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            writeln!(out, "literal, payload {bits}")?;
            writeln!(
                out,
                "outputs {} after {} steps on every input",
                payload.value(),
                payload.len()
            )?;
        }
        MachineKind::Table(table) => {
            writeln!(
                out,
                "table, {} states, {} transitions",
                table.states(),
                3 * table.states()
            )?;
            for (q, row) in table.rows().iter().enumerate() {
                for (read, t) in [Symbol::Blank, Symbol::Zero, Symbol::One]
                    .into_iter()
                    .zip(row)
                {
                    let next = if t.next == 0 {
                        "halt".to_string()
                    } else {
                        format!("q{}", t.next)
                    };
                    writeln!(
                        out,
                        "  q{} {read} -> write {} move {} {next}",
                        q + 1,
                        t.write,
                        t.motion
                    )?;
                }
            }
            let shown = input
                .as_ref()
                .map_or("empty tape".to_string(), |x| format!("input {x}"));
            writeln!(out, "trace on {shown}, at most {} steps:", args.steps)?;
            for (step, cfg) in machine.trace(input.as_ref(), args.steps).iter().enumerate() {
                writeln!(out, "  {step:>4} {cfg}")?;
            }
        }
    }
    match machine.run(input.as_ref(), args.steps) {
        RunResult::Halted { output, steps } => {
            writeln!(out, "halted after {steps} steps with output {output}")?;
        }
        RunResult::OutOfBudget => writeln!(out, "no halt within {} steps", args.steps)?,
    }
    Ok(())
}
