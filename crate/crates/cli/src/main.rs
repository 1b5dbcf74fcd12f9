//! `limitlab`: batch front end for the limit-computation laboratory.

mod inspect;
mod nf_check;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use limitlab::encodings::{decode_prefix, encode_prefix, tau, tau_inv, tau_k, tau_k_inv};
use limitlab::limit_engine::{
    run_stages, stabilization, write_trace, AzLifted, BudgetSchedule, Property, DEFAULT_WINDOW,
};
use limitlab::machine::{
    index_to_program, literal_index, program_to_index, ProgramIndex, ProgramString,
};
use limitlab::oracle::{
    brute_equal_upto, brute_err, brute_incompressible, brute_k, CertificateVerdict,
};
use limitlab::properties::catalog_property;
use limitlab::{parse_nat, Nat};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "limitlab",
    version,
    about = "Guess streams, oracles and machine inspection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property to a stage horizon and write its trace.
    Run(RunArgs),
    /// Brute-force certificates.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Describe the machine with a given index.
    Inspect(inspect::InspectArgs),
    /// Encode values with the pairing and program codecs.
    #[command(subcommand)]
    Encode(EncodeCommand),
    /// Decode pairing, prefix and program codes.
    #[command(subcommand)]
    Decode(DecodeCommand),
    /// Check the normal form against direct simulation.
    NfCheck(nf_check::NfCheckArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Property id, optionally prefixed with `az:` to run on A_Z handles.
    #[arg(required_unless_present = "config")]
    property: Option<String>,
    /// Input as a decimal natural.
    #[arg(required_unless_present = "config")]
    input: Option<String>,
    #[arg(long, default_value = "64", value_parser = parse_u64)]
    t_max: u64,
    #[arg(long, env = "LIMITLAB_BUDGET_BASE", default_value = "64", value_parser = parse_u64)]
    budget_base: u64,
    #[arg(long, default_value = "64", value_parser = parse_u64)]
    budget_slope: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW, value_parser = parse_u64)]
    window: u64,
    /// Trace file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// JSON batch file: a list of runs with the same fields as the flags.
    #[arg(long, conflicts_with_all = ["property", "input"])]
    config: Option<PathBuf>,
}

/// One entry of a batch file. Numbers are decimal strings; missing fields
/// take the command-line values.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunEntry {
    property: String,
    input: String,
    t_max: Option<String>,
    budget_base: Option<String>,
    budget_slope: Option<String>,
    window: Option<String>,
    output: Option<PathBuf>,
}

struct RunConfig {
    property: String,
    input: Nat,
    t_max: u64,
    schedule: BudgetSchedule,
    window: u64,
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Least index printing `x` on the empty tape.
    K {
        x: String,
        #[arg(long, default_value = "2000", value_parser = parse_u64)]
        budget: u64,
    },
    /// Values below `upto` with no shorter program.
    Incompressible {
        #[arg(long, default_value = "256", value_parser = parse_u64)]
        upto: u64,
        #[arg(long, default_value = "2000", value_parser = parse_u64)]
        budget: u64,
    },
    /// Compare two machines on inputs `0..=n`.
    Equal {
        i: String,
        j: String,
        #[arg(long, default_value = "64", value_parser = parse_u64)]
        n: u64,
        #[arg(long, default_value = "2000", value_parser = parse_u64)]
        budget: u64,
    },
    /// Exact error ratio at stage `t`.
    Err {
        i: String,
        j: String,
        #[arg(long, value_parser = parse_u64)]
        t: u64,
        #[arg(long, default_value = "2000", value_parser = parse_u64)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum EncodeCommand {
    /// `τ(x, y)`.
    Tau { x: String, y: String },
    /// Left fold of `τ` over two or more values.
    TauK {
        #[arg(num_args = 1.., required = true)]
        values: Vec<String>,
    },
    /// Prefix code of a non-empty sequence.
    Prefix {
        #[arg(num_args = 1.., required = true)]
        values: Vec<String>,
    },
    /// Index of a program given as a bit string (empty string allowed).
    Program { bits: String },
    /// Index of the canonical literal machine printing `x`.
    Literal { x: String },
}

#[derive(Subcommand)]
enum DecodeCommand {
    Tau {
        z: String,
    },
    TauK {
        k: String,
        z: String,
    },
    Prefix {
        z: String,
    },
    /// Program string of an index.
    Program {
        index: String,
    },
}

fn parse_u64(text: &str) -> Result<u64> {
    let n = parse_nat(text)?;
    u64::try_from(&n).with_context(|| format!("{text} does not fit in 64 bits"))
}

fn nat(text: &str) -> Result<Nat> {
    Ok(parse_nat(text)?)
}

fn index(text: &str) -> Result<ProgramIndex> {
    Ok(text.parse::<ProgramIndex>()?)
}

fn emit(out: &mut impl Write, record: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn resolve_property(id: &str) -> Result<Arc<dyn Property + Send + Sync>> {
    Ok(match id.strip_prefix("az:") {
        Some(inner) => Arc::new(AzLifted::new(catalog_property(inner)?)),
        None => catalog_property(id)?,
    })
}

fn execute_run(config: &RunConfig) -> Result<()> {
    let property = resolve_property(&config.property)?;
    let stream = run_stages(
        property.as_ref(),
        &config.input,
        config.t_max,
        config.schedule,
    )?;
    let report = stabilization(&stream, config.window);
    match &config.output {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_trace(&stream, Some(&report), &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            write_trace(&stream, Some(&report), &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn batch(path: &Path, defaults: &RunArgs) -> Result<Vec<RunConfig>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let entries: Vec<RunEntry> = serde_json::from_str(&text)
        .with_context(|| format!("malformed batch file {}", path.display()))?;
    let or = |field: &Option<String>, default: u64| field.as_deref().map_or(Ok(default), parse_u64);
    entries
        .into_iter()
        .map(|e| {
            Ok(RunConfig {
                input: nat(&e.input)?,
                t_max: or(&e.t_max, defaults.t_max)?,
                schedule: BudgetSchedule::linear(
                    or(&e.budget_base, defaults.budget_base)?,
                    or(&e.budget_slope, defaults.budget_slope)?,
                ),
                window: or(&e.window, defaults.window)?,
                output: e.output,
                property: e.property,
            })
        })
        .collect()
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let configs = match &args.config {
        Some(path) => batch(path, &args)?,
        None => vec![RunConfig {
            property: args.property.clone().expect("clap requires property"),
            input: nat(args.input.as_deref().expect("clap requires input"))?,
            t_max: args.t_max,
            schedule: BudgetSchedule::linear(args.budget_base, args.budget_slope),
            window: args.window,
            output: args.output.clone(),
        }],
    };
    // Resolve every id up front so a bad batch fails before writing anything.
    for c in &configs {
        resolve_property(&c.property)?;
    }
    configs.iter().try_for_each(execute_run)
}

fn cmd_oracle(command: OracleCommand) -> Result<()> {
    let mut out = io::stdout().lock();
    let record = match command {
        OracleCommand::K { x, budget } => {
            let x = nat(&x)?;
            json!({
                "record": "oracle_k",
                "x": x.to_string(),
                "budget": budget.to_string(),
                "value": brute_k(&x, budget).to_string(),
                "literal": literal_index(&x).to_string(),
            })
        }
        OracleCommand::Incompressible { upto, budget } => {
            let values: Vec<String> = brute_incompressible(upto, budget)
                .iter()
                .map(Nat::to_string)
                .collect();
            json!({
                "record": "oracle_incompressible",
                "upto": upto.to_string(),
                "budget": budget.to_string(),
                "values": values,
            })
        }
        OracleCommand::Equal { i, j, n, budget } => {
            let (i, j) = (index(&i)?, index(&j)?);
            let c = brute_equal_upto(&i, &j, n, budget);
            let (verdict, witness) = match &c.verdict {
                CertificateVerdict::Confirmed => ("confirmed", None),
                CertificateVerdict::Refuted { witness } => ("refuted", Some(witness.to_string())),
            };
            json!({
                "record": "certificate",
                "claim": c.claim,
                "budget": c.budget.to_string(),
                "verdict": verdict,
                "witness": witness,
                "unresolved": c.unresolved.iter().map(Nat::to_string).collect::<Vec<_>>(),
            })
        }
        OracleCommand::Err { i, j, t, budget } => {
            let (i, j) = (index(&i)?, index(&j)?);
            let r = brute_err(&i, &j, t, budget)?;
            json!({
                "record": "oracle_err",
                "i": i.to_string(),
                "j": j.to_string(),
                "t": t.to_string(),
                "budget": budget.to_string(),
                "numerator": r.numer().to_string(),
                "denominator": r.denom().to_string(),
            })
        }
    };
    emit(&mut out, &record)
}

fn strings(values: &[Nat]) -> Vec<String> {
    values.iter().map(Nat::to_string).collect()
}

fn parse_bits(bits: &str) -> Result<ProgramString> {
    let bits = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => bail!("not a bit: {other:?}"),
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(ProgramString::new(bits))
}

fn bit_string(program: &ProgramString) -> String {
    program
        .bits()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

fn cmd_encode(command: EncodeCommand) -> Result<()> {
    let values = |v: &[String]| v.iter().map(|s| nat(s)).collect::<Result<Vec<Nat>>>();
    let (kind, inputs, value) = match command {
        EncodeCommand::Tau { x, y } => {
            let (x, y) = (nat(&x)?, nat(&y)?);
            let z = tau(&x, &y);
            ("tau", strings(&[x, y]), z.to_string())
        }
        EncodeCommand::TauK { values: v } => {
            let v = values(&v)?;
            let z = tau_k(&v)?;
            ("tau_k", strings(&v), z.to_string())
        }
        EncodeCommand::Prefix { values: v } => {
            let v = values(&v)?;
            let z = encode_prefix(&v)?;
            ("prefix", strings(&v), z.to_string())
        }
        EncodeCommand::Program { bits } => {
            let i = program_to_index(&parse_bits(&bits)?);
            ("program", vec![bits], i.to_string())
        }
        EncodeCommand::Literal { x } => {
            let x = nat(&x)?;
            let i = literal_index(&x);
            ("literal", vec![x.to_string()], i.to_string())
        }
    };
    let record = json!({"record": "encode", "kind": kind, "inputs": inputs, "value": value});
    emit(&mut io::stdout().lock(), &record)
}

fn cmd_decode(command: DecodeCommand) -> Result<()> {
    let (kind, input, values) = match command {
        DecodeCommand::Tau { z } => {
            let z = nat(&z)?;
            let (x, y) = tau_inv(&z);
            ("tau", z, strings(&[x, y]))
        }
        DecodeCommand::TauK { k, z } => {
            let z = nat(&z)?;
            let k = usize::try_from(parse_u64(&k)?)?;
            let parts = tau_k_inv(&z, k)?;
            ("tau_k", z, strings(&parts))
        }
        DecodeCommand::Prefix { z } => {
            let z = nat(&z)?;
            let parts = decode_prefix(&z);
            ("prefix", z, strings(&parts))
        }
        DecodeCommand::Program { index: i } => {
            let i = index(&i)?;
            let bits = bit_string(&index_to_program(&i));
            ("program", i.into_value(), vec![bits])
        }
    };
    let record =
        json!({"record": "decode", "kind": kind, "input": input.to_string(), "values": values});
    emit(&mut io::stdout().lock(), &record)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (`| head`) is not a failure.
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let kind = c
            .downcast_ref::<io::Error>()
            .map(io::Error::kind)
            .or_else(|| c.downcast_ref::<serde_json::Error>()?.io_error_kind())
            .or_else(|| match c.downcast_ref::<limitlab::Error>()? {
                limitlab::Error::Io(io) => Some(io.kind()),
                limitlab::Error::Json(j) => j.io_error_kind(),
                _ => None,
            });
        kind == Some(io::ErrorKind::BrokenPipe)
    })
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Oracle(c) => cmd_oracle(c),
        Command::Inspect(args) => inspect::cmd_inspect(args),
        Command::Encode(c) => cmd_encode(c),
        Command::Decode(c) => cmd_decode(c),
        Command::NfCheck(args) => nf_check::cmd_nf_check(args),
    }
}
