//! JSON-lines guess traces.
//!
//! One object per stage with fields `property`, `input`, `stage`, `outcome`
//! (`"guess"` or `"no_output"`), `value` (guesses only) and `steps_used`,
//! optionally followed by one `"record": "stabilization"` summary. Numbers are
//! decimal strings so arbitrarily large values survive every JSON reader.
//! Traces carry no timestamps: identical runs give identical bytes.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{GuessStream, StabilizationReport, StageEvent, StageOutcome, Verdict};
use crate::{parse_nat, Error, Nat, Result};

#[derive(Serialize, Deserialize)]
struct StageLine {
    property: String,
    input: String,
    stage: String,
    outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    steps_used: String,
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    record: String,
    property: String,
    input: String,
    verdict: String,
    last_value: Option<String>,
    last_change_stage: Option<String>,
    stable_for: String,
    window: String,
}

const SUMMARY_TAG: &str = "stabilization";

/// One parsed trace line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceRecord {
    Stage {
        property: String,
        input: Nat,
        event: StageEvent,
    },
    Stabilization {
        property: String,
        input: Nat,
        report: StabilizationReport,
    },
}

/// Writes `stream` as JSON lines, followed by `report` when given.
pub fn write_trace(
    stream: &GuessStream,
    report: Option<&StabilizationReport>,
    mut out: impl Write,
) -> Result<()> {
    let input = stream.input.to_string();
    for e in &stream.events {
        let (outcome, value) = match &e.outcome {
            StageOutcome::Guess(v) => ("guess", Some(v.to_string())),
            StageOutcome::NoOutput => ("no_output", None),
        };
        let line = StageLine {
            property: stream.property.clone(),
            input: input.clone(),
            stage: e.stage.to_string(),
            outcome: outcome.to_string(),
            value,
            steps_used: e.steps_used.to_string(),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    if let Some(r) = report {
        let line = SummaryLine {
            record: SUMMARY_TAG.to_string(),
            property: stream.property.clone(),
            input,
            verdict: r.verdict.as_str().to_string(),
            last_value: r.last_value.as_ref().map(Nat::to_string),
            last_change_stage: r.last_change_stage.map(|s| s.to_string()),
            stable_for: r.stable_for.to_string(),
            window: r.window.to_string(),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn parse_u64(text: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::InvalidNumber(text.to_string()))
}

fn parse_line(line: &str) -> Result<TraceRecord> {
    let value: serde_json::Value = serde_json::from_str(line)?;
    if value.get("record").and_then(|r| r.as_str()) == Some(SUMMARY_TAG) {
        let s: SummaryLine = serde_json::from_value(value)?;
        let verdict = Verdict::parse(&s.verdict)
            .ok_or_else(|| Error::Trace(format!("unknown verdict {:?}", s.verdict)))?;
        return Ok(TraceRecord::Stabilization {
            property: s.property,
            input: parse_nat(&s.input)?,
            report: StabilizationReport {
                last_value: s.last_value.as_deref().map(parse_nat).transpose()?,
                last_change_stage: s.last_change_stage.as_deref().map(parse_u64).transpose()?,
                stable_for: parse_u64(&s.stable_for)?,
                window: parse_u64(&s.window)?,
                verdict,
            },
        });
    }
    let s: StageLine = serde_json::from_value(value)?;
    let outcome = match (s.outcome.as_str(), s.value) {
        ("guess", Some(v)) => StageOutcome::Guess(parse_nat(&v)?),
        ("no_output", None) => StageOutcome::NoOutput,
        (other, _) => return Err(Error::Trace(format!("malformed outcome {other:?}"))),
    };
    Ok(TraceRecord::Stage {
        property: s.property,
        input: parse_nat(&s.input)?,
        event: StageEvent {
            stage: parse_u64(&s.stage)?,
            outcome,
            steps_used: parse_u64(&s.steps_used)?,
        },
    })
}

/// Reads a trace written by [`write_trace`]. All stage lines must share one
/// property and input.
pub fn read_trace(input: impl BufRead) -> Result<(GuessStream, Option<StabilizationReport>)> {
    let mut stream: Option<GuessStream> = None;
    let mut summary = None;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(&line)? {
            TraceRecord::Stage {
                property,
                input,
                event,
            } => {
                let s = stream.get_or_insert_with(|| GuessStream {
                    property: property.clone(),
                    input: input.clone(),
                    events: Vec::new(),
                });
                if s.property != property || s.input != input {
                    return Err(Error::Trace("trace mixes several streams".into()));
                }
                s.events.push(event);
            }
            TraceRecord::Stabilization { report, .. } => summary = Some(report),
        }
    }
    let stream = stream.ok_or_else(|| Error::Trace("trace has no stage records".into()))?;
    Ok((stream, summary))
}
