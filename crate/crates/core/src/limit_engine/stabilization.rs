use super::{GuessStream, StageOutcome};
use crate::Nat;

/// Default number of trailing stages a value must hold to count as settled.
pub const DEFAULT_WINDOW: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The last value has been guessed at each of the last `window` stages.
    Stabilized,
    StillChanging,
    NoGuessYet,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stabilized => "stabilized",
            Verdict::StillChanging => "still_changing",
            Verdict::NoGuessYet => "no_guess_yet",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        [
            Verdict::Stabilized,
            Verdict::StillChanging,
            Verdict::NoGuessYet,
        ]
        .into_iter()
        .find(|v| v.as_str() == text)
    }
}

/// Summary of an observed guess stream. A finite window can only suggest
/// stabilization; it never proves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub last_value: Option<Nat>,
    /// Stage at which `last_value` was first guessed after the last change.
    pub last_change_stage: Option<u64>,
    /// Number of trailing guessed stages that guess `last_value`; stages
    /// without output neither count nor break the run.
    pub stable_for: u64,
    pub window: u64,
    pub verdict: Verdict,
}

/// Summarizes `stream`: the stream counts as stabilized when its final
/// `window` stages all guess the same value.
pub fn stabilization(stream: &GuessStream, window: u64) -> StabilizationReport {
    let last_value = stream.last_guess().cloned();
    let Some(value) = last_value.clone() else {
        return StabilizationReport {
            last_value: None,
            last_change_stage: None,
            stable_for: 0,
            window,
            verdict: Verdict::NoGuessYet,
        };
    };
    let mut stable_for = 0;
    let mut last_change_stage = None;
    for e in stream.events.iter().rev() {
        match &e.outcome {
            StageOutcome::Guess(v) if *v == value => {
                stable_for += 1;
                last_change_stage = Some(e.stage);
            }
            StageOutcome::Guess(_) => break,
            StageOutcome::NoOutput => {}
        }
    }
    let verdict = if stable_for >= window.max(1) {
        Verdict::Stabilized
    } else {
        Verdict::StillChanging
    };
    StabilizationReport {
        last_value,
        last_change_stage,
        stable_for,
        window,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_engine::StageEvent;

    fn stream(outcomes: &[Option<u64>]) -> GuessStream {
        GuessStream {
            property: "test".into(),
            input: Nat::from(0u8),
            events: outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| StageEvent {
                    stage: i as u64,
                    outcome: match o {
                        Some(v) => StageOutcome::Guess(Nat::from(*v)),
                        None => StageOutcome::NoOutput,
                    },
                    steps_used: 0,
                })
                .collect(),
        }
    }

    #[test]
    fn settled_stream() {
        let s = stream(&[
            Some(3),
            Some(1),
            Some(1),
            Some(2),
            Some(2),
            Some(2),
            Some(2),
        ]);
        let r = stabilization(&s, 4);
        assert_eq!(r.last_value, Some(Nat::from(2u8)));
        assert_eq!(r.last_change_stage, Some(3));
        assert_eq!(r.stable_for, 4);
        assert_eq!(r.verdict, Verdict::Stabilized);
        assert_eq!(stabilization(&s, 5).verdict, Verdict::StillChanging);
    }

    #[test]
    fn gaps_and_empty_streams() {
        assert_eq!(
            stabilization(&stream(&[None, None]), 1).verdict,
            Verdict::NoGuessYet
        );
        let r = stabilization(&stream(&[Some(3), Some(3), None, Some(3)]), 3);
        assert_eq!(r.verdict, Verdict::Stabilized);
        assert_eq!(r.last_value, Some(Nat::from(3u8)));
        assert_eq!(r.last_change_stage, Some(0));
        let s = stream(&[Some(1), Some(1), None]);
        assert_eq!(stabilization(&s, 2).stable_for, 2);
    }

    #[test]
    fn alternating_guesses_never_settle() {
        let r = stabilization(&stream(&[Some(0), Some(1), Some(0), Some(1)]), 2);
        assert_eq!(r.verdict, Verdict::StillChanging);
        assert_eq!(r.stable_for, 1);
        assert_eq!(r.last_change_stage, Some(3));
    }

    #[test]
    fn late_switch_is_the_change_stage() {
        let outcomes: Vec<Option<u64>> =
            (0..20).map(|t| Some(if t < 5 { t } else { 99 })).collect();
        let r = stabilization(&stream(&outcomes), DEFAULT_WINDOW);
        assert_eq!(r.last_change_stage, Some(5));
        assert_eq!(r.stable_for, 15);
        assert_eq!(r.verdict, Verdict::StillChanging);
    }

    #[test]
    fn no_output_stages_are_transparent() {
        let base = [Some(4), Some(2), Some(2), Some(2)];
        let padded = [Some(4), None, Some(2), None, None, Some(2), Some(2), None];
        let a = stabilization(&stream(&base), 3);
        let b = stabilization(&stream(&padded), 3);
        assert_eq!(
            (a.last_value, a.stable_for, a.verdict),
            (b.last_value, b.stable_for, b.verdict)
        );
    }

    #[test]
    fn verdict_names_round_trip() {
        for v in [
            Verdict::Stabilized,
            Verdict::StillChanging,
            Verdict::NoGuessYet,
        ] {
            assert_eq!(Verdict::parse(v.as_str()), Some(v));
        }
    }
}
