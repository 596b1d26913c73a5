//! Verification reports and their JSON / CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::campaign::CampaignSpec;
use crate::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Hypothesis satisfied outside the guard band.
    Qualifying,
    NonQualifying,
    /// Within the guard band after the precise re-solve.
    Boundary,
    /// Isomorphic to the excluded extremal graph.
    Exceptional,
    NotApplicable,
}

impl Classification {
    fn as_str(self) -> &'static str {
        match self {
            Classification::Qualifying => "qualifying",
            Classification::NonQualifying => "non_qualifying",
            Classification::Boundary => "boundary",
            Classification::Exceptional => "exceptional",
            Classification::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub n: usize,
    pub sample: usize,
    pub graph6: String,
    pub statement: String,
    pub class: Classification,
    pub mu: Option<f64>,
    pub threshold: Option<f64>,
    pub hypothesis_holds: bool,
    pub conclusion_holds: Option<bool>,
    pub violation: bool,
    pub advisory: bool,
    /// Patterns the graph fails to contain.
    pub missing: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Budget,
    Cap,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub n: usize,
    pub sample: usize,
    pub graph6: String,
    pub statement: String,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub graphs_scanned: usize,
    /// Statement × graph pairs evaluated.
    pub evaluations: usize,
    pub hypothesis_satisfying: usize,
    pub boundary: usize,
    pub exceptional: usize,
    pub violations: usize,
    /// Violations of statements that hold at every order.
    pub hard_violations: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NStat {
    pub n: usize,
    pub evaluated: usize,
    pub hypothesis: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub statement: String,
    pub advisory: bool,
    pub per_n: Vec<NStat>,
    /// Smallest scanned `n` from which every larger scanned order is free
    /// of violations.
    pub smallest_clean_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFrequency {
    pub statement: String,
    pub pattern: String,
    /// Hypothesis-satisfying graphs the pattern was searched in.
    pub checked: usize,
    pub contained: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub spec: CampaignSpec,
    pub statements: Vec<String>,
    pub totals: Totals,
    /// Hypothesis-satisfying, boundary and exceptional verdicts.
    pub records: Vec<VerdictRecord>,
    pub violations: Vec<VerdictRecord>,
    pub thresholds: Vec<ThresholdEstimate>,
    pub pattern_frequencies: Vec<PatternFrequency>,
    /// Spider campaign only: how often each proof branch was taken.
    pub spider_branches: BTreeMap<String, usize>,
    pub errors: Vec<ErrorRecord>,
    pub timings: Option<Timings>,
}

impl VerificationReport {
    /// `(graph6, statement)` of every violation, for comparing runs.
    pub fn violation_keys(&self) -> Vec<(String, String)> {
        self.violations.iter().map(|v| (v.graph6.clone(), v.statement.clone())).collect()
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        let t = &self.totals;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "campaign {} k={} n={}..={} source={}",
            self.spec.campaign, self.spec.k, self.spec.n_min, self.spec.n_max, self.spec.source
        );
        let _ = writeln!(
            s,
            "graphs {}  evaluations {}  hypothesis {}  boundary {}  exceptional {}  violations {} (hard {})  errors {}",
            t.graphs_scanned,
            t.evaluations,
            t.hypothesis_satisfying,
            t.boundary,
            t.exceptional,
            t.violations,
            t.hard_violations,
            t.errors
        );
        for th in &self.thresholds {
            let clean = th.smallest_clean_n.map_or("none".to_string(), |n| n.to_string());
            let tag = if th.advisory { "advisory" } else { "hard" };
            let _ = writeln!(s, "  {} [{tag}] smallest clean n: {clean}", th.statement);
        }
        for (b, c) in &self.spider_branches {
            let _ = writeln!(s, "  branch {b}: {c}");
        }
        for v in self.violations.iter().take(20) {
            if v.missing.is_empty() {
                let _ = writeln!(s, "  violation {} {}: {}", v.graph6, v.statement, v.detail);
            } else {
                let _ = writeln!(s, "  violation {} {} missing [{}]", v.graph6, v.statement, v.missing.join(" "));
            }
        }
        if self.violations.len() > 20 {
            let _ = writeln!(s, "  ... {} more", self.violations.len() - 20);
        }
        for e in self.errors.iter().take(10) {
            let _ = writeln!(s, "  error {} {} {:?}: {}", e.graph6, e.statement, e.kind, e.message);
        }
        if let Some(tm) = &self.timings {
            let _ = writeln!(s, "wall {} ms", tm.wall_ms);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Summary,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "summary" | "text" => Ok(ReportFormat::Summary),
            _ => Err(HarnessError::InvalidSpec(format!("unknown report format `{s}`"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    sample: usize,
    graph6: &'a str,
    statement: &'a str,
    class: &'static str,
    mu: Option<f64>,
    threshold: Option<f64>,
    hypothesis_holds: bool,
    conclusion_holds: Option<bool>,
    violation: bool,
    advisory: bool,
    missing: String,
    detail: &'a str,
}

pub fn render_report(report: &VerificationReport, format: ReportFormat) -> Result<Vec<u8>, HarnessError> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = format!("#schema_version={}\n", report.schema_version).into_bytes();
            let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(&mut out);
            if report.records.is_empty() {
                w.write_record([
                    "n",
                    "sample",
                    "graph6",
                    "statement",
                    "class",
                    "mu",
                    "threshold",
                    "hypothesis_holds",
                    "conclusion_holds",
                    "violation",
                    "advisory",
                    "missing",
                    "detail",
                ])?;
            }
            for r in &report.records {
                w.serialize(CsvRow {
                    n: r.n,
                    sample: r.sample,
                    graph6: &r.graph6,
                    statement: &r.statement,
                    class: r.class.as_str(),
                    mu: r.mu,
                    threshold: r.threshold,
                    hypothesis_holds: r.hypothesis_holds,
                    conclusion_holds: r.conclusion_holds,
                    violation: r.violation,
                    advisory: r.advisory,
                    missing: r.missing.join(" "),
                    detail: &r.detail,
                })?;
            }
            w.flush().map_err(|e| HarnessError::Io {
                path: "<buffer>".into(),
                source: e,
            })?;
            drop(w);
            Ok(out)
        }
        ReportFormat::Summary => Ok(report.summary().into_bytes()),
    }
}

pub fn write_report(report: &VerificationReport, format: ReportFormat, path: &Path) -> Result<(), HarnessError> {
    let bytes = render_report(report, format)?;
    let io = |e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(&bytes).map_err(io)?;
    Ok(())
}

/// Reads a JSON report written by [`write_report`].
pub fn read_report(path: &Path) -> Result<VerificationReport, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let report: VerificationReport = serde_json::from_str(&text)?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(HarnessError::InvalidSpec(format!(
            "{}: schema version {} (expected {SCHEMA_VERSION})",
            path.display(),
            report.schema_version
        )));
    }
    Ok(report)
}
