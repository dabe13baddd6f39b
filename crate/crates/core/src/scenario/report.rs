use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checks::CheckName;
use super::timing::TimingSection;
use super::{Scenario, ScenarioError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
}

impl Metric {
    pub fn new(name: &str, value: f64) -> Self {
        Self {
            name: name.to_owned(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub metrics: Vec<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl CheckResult {
    pub fn new(name: CheckName, passed: bool, metrics: Vec<Metric>) -> Self {
        Self {
            name: name.as_str().to_owned(),
            passed,
            metrics,
            table: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }
}

/// Everything a run produces: the scenario echo, the timeline and the
/// per-check results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    pub timing: TimingSection,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(ScenarioError::UnsupportedFormat(other.to_owned())),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_report(report: &Report, format: ReportFormat) -> Result<Vec<u8>, ScenarioError> {
    let text = match format {
        ReportFormat::Text => emit_text(report),
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| ScenarioError::UnsupportedFormat(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    Ok(text.into_bytes())
}

fn emit_csv(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("# timeline\ntime,event,interpretation\n");
    for e in &report.timing.timeline {
        let _ = writeln!(
            out,
            "{},{},{}",
            num(e.time),
            e.event,
            e.interpretation.label()
        );
    }
    for check in &report.checks {
        let _ = writeln!(
            out,
            "# check {} {}",
            check.name,
            if check.passed { "pass" } else { "fail" }
        );
        out.push_str("metric,value\n");
        for m in &check.metrics {
            let _ = writeln!(out, "{},{}", m.name, num(m.value));
        }
        if let Some(table) = &check.table {
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|x| num(*x)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
    }
    out
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let s = &report.scenario;
    let name = s.name.as_deref().unwrap_or("scenario");
    let _ = writeln!(
        out,
        "{name}: objectDim={} apparatusDim={}",
        s.object_dim,
        s.apparatus_dim()
    );
    let t = &report.timing;
    let _ = writeln!(
        out,
        "timing: t={} deltaT={} tau={} ratio={}{}",
        t.t,
        t.delta_t,
        t.tau,
        t.ratio,
        if t.illustrative {
            " (illustrative)"
        } else {
            ""
        }
    );
    let _ = writeln!(
        out,
        "  deltaT << tau (ratio >= {}): {}",
        t.regime_ratio_threshold,
        yes_no(t.regime_inequality_holds)
    );
    let _ = writeln!(
        out,
        "  orthodox reduction after second measurement possible: {}",
        yes_no(t.orthodox_postdates_second_measurement)
    );
    out.push_str("timeline:\n");
    for e in &t.timeline {
        let _ = writeln!(
            out,
            "  {:<24e} {:<8} {}",
            e.time,
            e.interpretation.label(),
            e.event
        );
    }
    if report.checks.is_empty() {
        return out;
    }
    out.push_str("checks:\n");
    for c in &report.checks {
        let _ = writeln!(
            out,
            "  [{}] {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name
        );
        for m in &c.metrics {
            let _ = writeln!(out, "      {} = {:e}", m.name, m.value);
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", report.checks.len());
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
