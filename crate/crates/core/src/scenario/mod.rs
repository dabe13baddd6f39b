//! Declarative scenarios: JSON input, checks dispatched to the measurement
//! kernel, and text/CSV/JSON reports.

mod checks;
mod report;
mod schema;
mod stock;
mod timing;

pub use checks::{run_checks, CheckName, CLASSICAL_TOL, CORRELATION_TOL, ENTROPY_TOL};
pub use report::{emit_report, CheckResult, Metric, Report, ReportFormat, Table};
pub use schema::{
    load_scenario, MonteCarlo, ReadyStateSpec, Scenario, Timing, AMPLITUDE_NORM_TOL,
    DEFAULT_REGIME_RATIO,
};
pub use stock::{stock_scenario, stock_scenario_json, STOCK_SCENARIOS};
pub use timing::{
    run_timing_comparison, Interpretation, TimelineEvent, TimingSection, EVENT_INTERACTION_END,
    EVENT_INTERACTION_START, EVENT_READING_COMPLETE, EVENT_REDUCTION, EVENT_SECOND_MEASUREMENT,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),
    #[error("unknown demo {0:?}")]
    UnknownDemo(String),
    #[error(transparent)]
    Kernel(#[from] crate::Error),
}
