//! Report assembly and rendering.
//!
//! Every run produces one `Output`: a structured `Report` for `check`,
//! `bound` and `integral`, or a sweep/search artifact for `sharpness`. The
//! same value renders as a human-readable text block, as JSON, or (for
//! sharpness artifacts) as CSV. All numeric text uses 17 significant digits so
//! two runs of the same command are byte-identical and reports are diff-able;
//! JSON numbers use the shortest representation that parses back to the same
//! float, so a serialized report re-reads exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Result};
use clap::ValueEnum;
use gruss_core::bounds::BoundReport;
use gruss_core::measures::MeanRatioReport;
use gruss_core::sharpness::{SearchResult, SweepResult};
use gruss_core::{Bracket, ConditionReport, Mode, Scalar, Sign};
use serde::{Deserialize, Serialize};

/// Output rendering selected by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    /// Only sharpness artifacts have a CSV form.
    Csv,
}

/// Per-line and overall outcome of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "VIOLATED")]
    Violated,
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
            Verdict::NotApplicable => "NOT-APPLICABLE",
        }
    }
}

/// Verdict for a bound evaluation: VIOLATED is reserved for an applicable
/// instance whose ratio exceeds 1 + tolerance — the signal the test suite
/// treats as a soundness failure. A degenerate bound (no ratio) holds.
pub fn bound_verdict(report: &BoundReport, tol: f64) -> Verdict {
    if !report.applicable {
        return Verdict::NotApplicable;
    }
    match report.ratio {
        Some(r) if r > 1.0 + tol => Verdict::Violated,
        _ => Verdict::Holds,
    }
}

/// Same rule for the mean-ratio estimate.
pub fn mean_ratio_verdict(report: &MeanRatioReport, tol: f64) -> Verdict {
    if !report.applicable {
        return Verdict::NotApplicable;
    }
    match report.ratio {
        Some(r) if r > 1.0 + tol => Verdict::Violated,
        _ => Verdict::Holds,
    }
}

/// Echo of the loaded instance, so a report is self-describing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputsEcho {
    pub path: String,
    pub mode: Mode,
    pub points: usize,
    pub fields: Vec<String>,
    pub boxes: BTreeMap<String, Bracket>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    pub sign: Sign,
}

impl InputsEcho {
    pub fn new(instance: &crate::instance::Instance, path: &Path) -> Self {
        InputsEcho {
            path: path.display().to_string(),
            mode: instance.mode,
            points: instance.dim(),
            fields: instance.present_fields(),
            boxes: instance.boxes.clone(),
            lambda: instance.lambda,
            sign: instance.sign,
        }
    }
}

/// One labelled result: an admissibility check, a bound evaluation, or a
/// mean-ratio evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub label: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub conditions: Vec<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_ratio: Option<MeanRatioReport>,
    /// Why the line could not be evaluated, when it could not.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub verdict: Verdict,
}

/// The full result of a `check`, `bound` or `integral` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// e.g. `bound --bound c3`.
    pub run: String,
    pub inputs: InputsEcho,
    pub tolerance: f64,
    pub lines: Vec<ReportLine>,
    pub verdict: Verdict,
}

/// One row of a sharpness sweep; `abs_error` is the distance between the
/// constant the instance forces and its closed-form prediction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub measured: f64,
    pub bound_normalizer: f64,
    pub implied_constant: f64,
    pub analytic_prediction: f64,
    pub abs_error: f64,
}

impl From<SweepResult> for SweepRow {
    fn from(r: SweepResult) -> Self {
        SweepRow {
            parameter: r.parameter,
            measured: r.measured,
            bound_normalizer: r.bound_normalizer,
            implied_constant: r.implied_constant,
            analytic_prediction: r.analytic_prediction,
            abs_error: r.abs_error(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepArtifact {
    pub family: String,
    pub rows: Vec<SweepRow>,
}

/// Everything a command can emit.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Sweep(SweepArtifact),
    Search(SearchResult),
}

const SWEEP_COLUMNS: [&str; 6] = [
    "parameter",
    "measured",
    "bound_normalizer",
    "implied_constant",
    "analytic_prediction",
    "abs_error",
];

/// `1.2345678901234567e0`-style: 17 significant digits, enough to reproduce
/// the exact float, and stable across runs.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        fmt_num(z.re)
    } else {
        format!("({}, {})", fmt_num(z.re), fmt_num(z.im))
    }
}

pub fn fmt_bracket(b: &Bracket) -> String {
    format!("[{}, {}]", fmt_scalar(b.lo), fmt_scalar(b.hi))
}

fn sign_str(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

fn push_condition(out: &mut String, index: usize, c: &ConditionReport) {
    let _ = writeln!(
        out,
        "  condition {index}: slack_re = {}, slack_ball = {}, admissible = {}",
        fmt_num(c.slack_re),
        fmt_num(c.slack_ball),
        c.admissible
    );
}

impl Report {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "run: {}", self.run);
        let _ = writeln!(out, "input: {}", self.inputs.path);
        let _ = writeln!(
            out,
            "mode: {}, points: {}, fields: {}",
            match self.inputs.mode {
                Mode::Real => "real",
                Mode::Complex => "complex",
            },
            self.inputs.points,
            self.inputs.fields.join(", ")
        );
        let _ = writeln!(out, "tolerance: {}", fmt_num(self.tolerance));
        for (name, b) in &self.inputs.boxes {
            let _ = writeln!(out, "boxes.{name} = {}", fmt_bracket(b));
        }
        if let Some(l) = self.inputs.lambda {
            let _ = writeln!(out, "lambda = {}", fmt_num(l));
        }
        let _ = writeln!(out, "sign = {}", sign_str(self.inputs.sign));

        for line in &self.lines {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}]", line.label);
            if let Some(reason) = &line.reason {
                let _ = writeln!(out, "  not applicable: {reason}");
            }
            for (i, c) in line.conditions.iter().enumerate() {
                push_condition(&mut out, i + 1, c);
            }
            if let Some(b) = &line.bound {
                let _ = writeln!(out, "  functional = {}", fmt_scalar(b.functional));
                let _ = writeln!(out, "  measured   = {}", fmt_num(b.measured));
                let _ = writeln!(out, "  bound      = {}", fmt_num(b.bound_value));
                match b.ratio {
                    Some(r) => {
                        let _ = writeln!(out, "  ratio      = {}", fmt_num(r));
                    }
                    None => {
                        let _ = writeln!(out, "  ratio      = n/a (degenerate bound)");
                    }
                }
                let _ = writeln!(out, "  applicable = {}", b.applicable);
                if let Some(reason) = &b.reason {
                    let _ = writeln!(out, "  reason     = {reason}");
                }
                for (i, c) in b.conditions.iter().enumerate() {
                    push_condition(&mut out, i + 1, c);
                }
            }
            if let Some(m) = &line.mean_ratio {
                let _ = writeln!(out, "  left       = {}", fmt_num(m.left));
                let _ = writeln!(out, "  right      = {}", fmt_num(m.right));
                match m.ratio {
                    Some(r) => {
                        let _ = writeln!(out, "  ratio      = {}", fmt_num(r));
                    }
                    None => {
                        let _ = writeln!(out, "  ratio      = n/a (degenerate right side)");
                    }
                }
                let _ = writeln!(out, "  applicable = {}", m.applicable);
                if let Some(reason) = &m.reason {
                    let _ = writeln!(out, "  reason     = {reason}");
                }
            }
            let _ = writeln!(out, "  verdict: {}", line.verdict.as_str());
        }

        let _ = writeln!(out);
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }
}

fn sweep_text(artifact: &SweepArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", artifact.family);
    let header: Vec<String> = SWEEP_COLUMNS.iter().map(|c| format!("{c:>24}")).collect();
    let _ = writeln!(out, "{}", header.join("  "));
    for row in &artifact.rows {
        let cells = [
            row.parameter,
            row.measured,
            row.bound_normalizer,
            row.implied_constant,
            row.analytic_prediction,
            row.abs_error,
        ];
        let cells: Vec<String> = cells.iter().map(|&v| format!("{:>24}", fmt_num(v))).collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

fn sweep_csv(artifact: &SweepArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", SWEEP_COLUMNS.join(","));
    for row in &artifact.rows {
        let cells = [
            row.parameter,
            row.measured,
            row.bound_normalizer,
            row.implied_constant,
            row.analytic_prediction,
            row.abs_error,
        ];
        let cells: Vec<String> = cells.iter().map(|&v| fmt_num(v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

fn search_text(result: &SearchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: search");
    let _ = writeln!(
        out,
        "bound: {}, trials: {}, seed: {}",
        result.bound.as_str(),
        result.trials,
        result.seed
    );
    match result.max_ratio {
        Some(r) => {
            let _ = writeln!(out, "max_ratio: {}", fmt_num(r));
        }
        None => {
            let _ = writeln!(out, "max_ratio: n/a (no applicable trial)");
        }
    }
    if let Some(best) = &result.best {
        let _ = writeln!(
            out,
            "best: trial {}, measured = {}, bound = {}",
            best.trial,
            fmt_num(best.measured),
            fmt_num(best.bound_value)
        );
        let xs: Vec<String> = best.x.entries().iter().map(|&z| fmt_scalar(z)).collect();
        let ys: Vec<String> = best.y.entries().iter().map(|&z| fmt_scalar(z)).collect();
        let _ = writeln!(out, "best x: ({})", xs.join(", "));
        let _ = writeln!(out, "best y: ({})", ys.join(", "));
    }
    let _ = writeln!(out, "violations: {}", result.violations);
    let _ = writeln!(out, "not_applicable: {}", result.not_applicable);
    out
}

fn search_csv(result: &SearchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bound,trials,seed,max_ratio,best_trial,best_ratio,violations,not_applicable"
    );
    let max_ratio = result.max_ratio.map(fmt_num).unwrap_or_default();
    let (best_trial, best_ratio) = match &result.best {
        Some(b) => (b.trial.to_string(), fmt_num(b.ratio)),
        None => (String::new(), String::new()),
    };
    let _ = writeln!(
        out,
        "{},{},{},{max_ratio},{best_trial},{best_ratio},{},{}",
        result.bound.as_str(),
        result.trials,
        result.seed,
        result.violations,
        result.not_applicable
    );
    out
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

impl Output {
    /// The human-readable rendering that always goes to stdout.
    pub fn text(&self) -> String {
        match self {
            Output::Report(r) => r.text(),
            Output::Sweep(s) => sweep_text(s),
            Output::Search(s) => search_text(s),
        }
    }

    /// The rendering selected by `--format`.
    pub fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (_, Format::Text) => Ok(self.text()),
            (Output::Report(r), Format::Json) => to_json(r),
            (Output::Sweep(s), Format::Json) => to_json(s),
            (Output::Search(s), Format::Json) => to_json(s),
            (Output::Sweep(s), Format::Csv) => Ok(sweep_csv(s)),
            (Output::Search(s), Format::Csv) => Ok(search_csv(s)),
            (Output::Report(_), Format::Csv) => {
                bail!("csv output exists only for sharpness artifacts; use json or text")
            }
        }
    }
}
