use serde::{Deserialize, Serialize};

use super::Scenario;

/// Which account of the measurement an event belongs to. Ordered by label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// Reduction at the end of the object–apparatus interaction.
    New,
    /// Reduction when the pointer reading completes.
    Orthodox,
}

impl Interpretation {
    pub fn label(self) -> &'static str {
        match self {
            Interpretation::New => "new",
            Interpretation::Orthodox => "orthodox",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineEvent {
    pub time: f64,
    pub event: String,
    pub interpretation: Interpretation,
}

pub const EVENT_INTERACTION_START: &str = "interaction-start";
pub const EVENT_INTERACTION_END: &str = "interaction-end";
pub const EVENT_SECOND_MEASUREMENT: &str = "second-measurement-available";
pub const EVENT_READING_COMPLETE: &str = "pointer-reading-complete";
pub const EVENT_REDUCTION: &str = "reduction";

/// Event times and flags for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TimingSection {
    pub t: f64,
    pub delta_t: f64,
    pub tau: f64,
    /// `t₁ = t + Δt`: end of the interaction, earliest repeated measurement.
    pub t1: f64,
    /// `t″ = t + Δt + τ`: pointer reading complete.
    pub reading_time: f64,
    pub new_reduction_time: f64,
    pub orthodox_reduction_time: f64,
    /// `τ / Δt`.
    pub ratio: f64,
    pub regime_ratio_threshold: f64,
    /// `Δt ≪ τ`, taken as `ratio ≥ regime_ratio_threshold`.
    pub regime_inequality_holds: bool,
    /// `τ > 0`: the orthodox reduction comes after the second measurement
    /// could already have been made.
    pub orthodox_postdates_second_measurement: bool,
    pub illustrative: bool,
    pub timeline: Vec<TimelineEvent>,
}

/// Lays out the measurement timeline under both interpretations. No
/// evolution is applied between `t + Δt` and `t + Δt + τ`.
pub fn run_timing_comparison(scenario: &Scenario) -> TimingSection {
    let timing = &scenario.timing;
    let t1 = timing.t + timing.delta_t;
    let reading_time = t1 + timing.tau;
    let ratio = timing.tau / timing.delta_t;

    let both = [Interpretation::New, Interpretation::Orthodox];
    let mut timeline = Vec::new();
    let mut push = |time: f64, event: &str, who: &[Interpretation]| {
        for &interpretation in who {
            timeline.push(TimelineEvent {
                time,
                event: event.to_owned(),
                interpretation,
            });
        }
    };
    push(timing.t, EVENT_INTERACTION_START, &both);
    push(t1, EVENT_INTERACTION_END, &both);
    push(t1, EVENT_REDUCTION, &[Interpretation::New]);
    push(t1, EVENT_SECOND_MEASUREMENT, &both);
    push(reading_time, EVENT_READING_COMPLETE, &both);
    push(reading_time, EVENT_REDUCTION, &[Interpretation::Orthodox]);
    // Stable: ties keep insertion order within an interpretation.
    timeline.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then(a.interpretation.cmp(&b.interpretation))
    });

    TimingSection {
        t: timing.t,
        delta_t: timing.delta_t,
        tau: timing.tau,
        t1,
        reading_time,
        new_reduction_time: t1,
        orthodox_reduction_time: reading_time,
        ratio,
        regime_ratio_threshold: timing.regime_ratio_threshold,
        regime_inequality_holds: ratio >= timing.regime_ratio_threshold,
        orthodox_postdates_second_measurement: timing.tau > 0.0,
        illustrative: timing.illustrative,
        timeline,
    }
}
