//! Command execution: each subcommand loads its inputs, drives the library,
//! and produces an `Output` plus the process exit code.
//!
//! Exit codes are a stable contract for CI:
//!   0 — every line holds (or, for `check`, every pair is admissible);
//!       NOT-APPLICABLE lines do not fail a `bound`/`integral` run
//!   1 — a VIOLATED verdict occurred, an inadmissible pair in `check`,
//!       or a search that found violations
//!   2 — usage errors, unreadable or malformed files, and structurally
//!       invalid requests (e.g. a bound that needs a field the file lacks)

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use gruss_core::bounds::{self, BoundReport};
use gruss_core::measures::{self, MeasureSample};
use gruss_core::sharpness::{self, SearchConfig};
use gruss_core::{conditions, BoundId, Bracket, Combination, Mode, Sign};

use crate::instance::{self, Instance};
use crate::report::{
    bound_verdict, fmt_bracket, mean_ratio_verdict, Format, InputsEcho, Output, Report,
    ReportLine, SweepArtifact, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundFlag {
    T1,
    T2,
    C3,
    T3,
    C4,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchBoundFlag {
    T1,
    T2,
    C3,
    T3,
    C4,
}

impl SearchBoundFlag {
    fn id(self) -> BoundId {
        match self {
            SearchBoundFlag::T1 => BoundId::T1,
            SearchBoundFlag::T2 => BoundId::T2,
            SearchBoundFlag::C3 => BoundId::C3,
            SearchBoundFlag::T3 => BoundId::T3,
            SearchBoundFlag::C4 => BoundId::C4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropFlag {
    P1,
    C5,
    R5,
    P2,
    C6,
}

impl PropFlag {
    fn as_str(self) -> &'static str {
        match self {
            PropFlag::P1 => "p1",
            PropFlag::C5 => "c5",
            PropFlag::R5 => "r5",
            PropFlag::P2 => "p2",
            PropFlag::C6 => "c6",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyFlag {
    /// Positive-box extremal family swept over the eccentricity q.
    #[value(name = "c3-q")]
    C3Q,
    /// Combination extremal family swept over λ.
    T3Lambda,
    /// Seeded randomized search for near-violations of one bound.
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    Real,
    Complex,
}

impl ModeFlag {
    fn mode(self) -> Mode {
        match self {
            ModeFlag::Real => Mode::Real,
            ModeFlag::Complex => Mode::Complex,
        }
    }
}

/// Flags shared by the file-driven subcommands.
#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Instance file (a single JSON document).
    pub file: PathBuf,

    /// Tolerance for admissibility and for the HOLDS/VIOLATED verdict.
    #[arg(long, default_value_t = conditions::DEFAULT_TOL)]
    pub tol: f64,

    /// stdout rendering; with --out, the rendering written to the file
    /// (stdout then keeps the text report). Defaults: text on stdout,
    /// json for --out.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Also write a machine-readable artifact to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Which bound to evaluate; `all` reports every bound and marks the ones
    /// the file cannot feed NOT-APPLICABLE instead of failing.
    #[arg(long, value_enum)]
    pub bound: BoundFlag,
}

#[derive(Args, Debug)]
pub struct IntegralArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Which measure-layer estimate to evaluate.
    #[arg(long, value_enum)]
    pub prop: PropFlag,
}

#[derive(Args, Debug)]
pub struct SharpnessArgs {
    #[arg(long, value_enum)]
    pub family: FamilyFlag,

    /// Box eccentricities for --family c3-q (comma-separated).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub q: Option<Vec<f64>>,

    /// λ values: a list for --family t3-lambda, a single value for a t3/c4
    /// search.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub lambda: Option<Vec<f64>>,

    /// Box lower endpoint (t3-lambda default 0, search default 1).
    #[arg(long)]
    pub lo: Option<f64>,

    /// Box upper endpoint (t3-lambda default 2, search default 3).
    #[arg(long)]
    pub hi: Option<f64>,

    /// Bound to search (--family search only).
    #[arg(long, value_enum)]
    pub bound: Option<SearchBoundFlag>,

    /// Scalar mode for the search.
    #[arg(long, value_enum, default_value = "real")]
    pub mode: ModeFlag,

    /// Dimension of the search space.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,

    /// Number of search trials.
    #[arg(long, default_value_t = 256)]
    pub trials: usize,

    /// Seed; the same seed reproduces the run byte for byte.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// stdout rendering; with --out, the rendering written to the file.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Also write the artifact (default csv) to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check box admissibility of each declared vector/box pair.
    Check(CheckArgs),
    /// Evaluate one deviation bound (or all of them) on an instance.
    Bound(BoundArgs),
    /// Evaluate a measure-layer estimate on sampled data.
    Integral(IntegralArgs),
    /// Produce sharpness artifacts: extremal-family sweeps or a randomized
    /// search.
    Sharpness(SharpnessArgs),
}

/// Runs one command and returns its exit code. Every anyhow error maps to
/// exit code 2 in `main`.
pub fn execute(command: &Command) -> Result<u8> {
    match command {
        Command::Check(args) => {
            let (output, exit) = cmd_check(&args.common)?;
            emit(&output, args.common.format, &args.common.out, Format::Json)?;
            Ok(exit)
        }
        Command::Bound(args) => {
            let (output, exit) = cmd_bound(&args.common, args.bound)?;
            emit(&output, args.common.format, &args.common.out, Format::Json)?;
            Ok(exit)
        }
        Command::Integral(args) => {
            let (output, exit) = cmd_integral(&args.common, args.prop)?;
            emit(&output, args.common.format, &args.common.out, Format::Json)?;
            Ok(exit)
        }
        Command::Sharpness(args) => {
            let (output, exit) = cmd_sharpness(args)?;
            emit(&output, args.format, &args.out, Format::Csv)?;
            Ok(exit)
        }
    }
}

/// stdout/file routing: without --out the chosen format (default text) goes to
/// stdout; with --out the chosen format (default `out_default`) goes to the
/// file and stdout keeps the text report.
fn emit(
    output: &Output,
    format: Option<Format>,
    out: &Option<PathBuf>,
    out_default: Format,
) -> Result<()> {
    match out {
        Some(path) => {
            let rendered = output.render(format.unwrap_or(out_default))?;
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", output.text());
        }
        None => print!("{}", output.render(format.unwrap_or(Format::Text))?),
    }
    Ok(())
}

fn cmd_check(common: &CommonArgs) -> Result<(Output, u8)> {
    let inst = instance::load(&common.file)?;
    let space = inst.space()?;
    let e = inst.unit_vector()?;
    let tol = common.tol;

    let mut lines = Vec::new();
    for name in ["x", "y"] {
        let b = match inst.boxes.get(name) {
            Some(b) => b,
            None => continue,
        };
        let v = inst
            .require_vector(name)
            .with_context(|| format!("boxes.{name} is declared"))?;
        let condition = conditions::check(&space, v, e, b, tol)?;
        lines.push(check_line(format!("{name} in {}", fmt_bracket(b)), condition));
    }
    if let Some(b) = inst.boxes.get("comb") {
        let lambda = inst.require_lambda().context("boxes.comb is declared")?;
        let comb = Combination::new(lambda, inst.sign)?;
        let x = inst.require_vector("x").context("boxes.comb is declared")?;
        let y = inst.require_vector("y").context("boxes.comb is declared")?;
        let z = conditions::combine(x, y, comb)?;
        let condition = conditions::check(&space, &z, e, b, tol)?;
        lines.push(check_line(format!("comb in {}", fmt_bracket(b)), condition));
    }
    if lines.is_empty() {
        bail!(
            "nothing to check: declare x with boxes.x, y with boxes.y, \
             or x, y and lambda with boxes.comb"
        );
    }

    let all_admissible = lines.iter().all(|l| l.verdict == Verdict::Holds);
    let report = Report {
        run: "check".to_string(),
        inputs: InputsEcho::new(&inst, &common.file),
        tolerance: tol,
        verdict: if all_admissible {
            Verdict::Holds
        } else {
            Verdict::NotApplicable
        },
        lines,
    };
    Ok((Output::Report(report), u8::from(!all_admissible)))
}

fn check_line(label: String, condition: gruss_core::ConditionReport) -> ReportLine {
    let verdict = if condition.admissible {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    };
    ReportLine {
        label,
        conditions: vec![condition],
        bound: None,
        mean_ratio: None,
        reason: None,
        verdict,
    }
}

fn cmd_bound(common: &CommonArgs, flag: BoundFlag) -> Result<(Output, u8)> {
    let inst = instance::load(&common.file)?;
    let space = inst.space()?;
    let e = inst.unit_vector()?;
    let x = inst.require_vector("x")?;
    let y = inst.require_vector("y")?;
    let tol = common.tol;

    let eval = |id: BoundId| -> Result<BoundReport> {
        Ok(match id {
            BoundId::T1 => bounds::bound_t1(
                &space,
                x,
                y,
                e,
                inst.require_box("x")?,
                inst.require_box("y")?,
                tol,
            )?,
            BoundId::T2 => bounds::bound_t2(
                &space,
                x,
                y,
                e,
                inst.require_box("x")?,
                inst.require_box("y")?,
                tol,
            )?,
            BoundId::C3 => bounds::bound_c3(
                &space,
                x,
                y,
                e,
                inst.require_box("x")?,
                inst.require_box("y")?,
                tol,
            )?,
            BoundId::T3 => {
                let comb = Combination::new(inst.require_lambda()?, inst.sign)?;
                bounds::bound_t3(&space, x, y, e, inst.require_box("comb")?, comb, tol)?
            }
            BoundId::C4 => {
                let lambda = inst.require_lambda()?;
                bounds::bound_c4(
                    &space,
                    x,
                    y,
                    e,
                    inst.require_box("comb")?,
                    Combination::plus(lambda)?,
                    Combination::minus(lambda)?,
                    tol,
                )?
            }
            BoundId::Schwartz => unreachable!("not reachable from the CLI"),
        })
    };

    let ids = [BoundId::T1, BoundId::T2, BoundId::C3, BoundId::T3, BoundId::C4];
    let mut lines = Vec::new();
    match flag {
        BoundFlag::All => {
            for id in ids {
                match eval(id) {
                    Ok(report) => lines.push(bound_line(report, tol)),
                    Err(err) => lines.push(ReportLine {
                        label: id.as_str().to_string(),
                        conditions: vec![],
                        bound: None,
                        mean_ratio: None,
                        reason: Some(format!("{err:#}")),
                        verdict: Verdict::NotApplicable,
                    }),
                }
            }
        }
        BoundFlag::T1 => lines.push(bound_line(eval(BoundId::T1)?, tol)),
        BoundFlag::T2 => lines.push(bound_line(eval(BoundId::T2)?, tol)),
        BoundFlag::C3 => lines.push(bound_line(eval(BoundId::C3)?, tol)),
        BoundFlag::T3 => lines.push(bound_line(eval(BoundId::T3)?, tol)),
        BoundFlag::C4 => lines.push(bound_line(eval(BoundId::C4)?, tol)),
    }

    let selector = match flag {
        BoundFlag::All => "all",
        BoundFlag::T1 => "t1",
        BoundFlag::T2 => "t2",
        BoundFlag::C3 => "c3",
        BoundFlag::T3 => "t3",
        BoundFlag::C4 => "c4",
    };
    finish_report(
        format!("bound --bound {selector}"),
        &inst,
        common,
        lines,
    )
}

fn bound_line(report: BoundReport, tol: f64) -> ReportLine {
    let verdict = bound_verdict(&report, tol);
    ReportLine {
        label: report.bound_id.as_str().to_string(),
        conditions: vec![],
        bound: Some(report),
        mean_ratio: None,
        reason: None,
        verdict,
    }
}

fn cmd_integral(common: &CommonArgs, prop: PropFlag) -> Result<(Output, u8)> {
    let inst = instance::load(&common.file)?;
    inst.forbid_unit_vector()?;
    let f = inst.require_vector("f")?;
    let g = inst.require_vector("g")?;
    let tol = common.tol;

    let sample = |with_carrier: bool| -> Result<MeasureSample> {
        let h = if with_carrier {
            Some(inst.require_vector("h")?.entries().to_vec())
        } else {
            None
        };
        Ok(MeasureSample::new(
            inst.weights.clone(),
            f.entries().to_vec(),
            g.entries().to_vec(),
            h,
        )?)
    };
    let combination = || -> Result<(Combination, bool)> {
        // The file's sign picks the one-sided (plus) or two-sided (minus —
        // both combinations must be admissible) variant; the library always
        // receives the plus combination and derives the minus one itself.
        let comb = Combination::plus(inst.require_lambda()?)?;
        Ok((comb, inst.sign == Sign::Minus))
    };

    let line = match prop {
        PropFlag::P1 => {
            let s = sample(true)?;
            let report =
                measures::check_p1(&s, inst.require_box("f")?, inst.require_box("g")?, tol)?;
            prop_line(prop, report, tol)
        }
        PropFlag::C5 => {
            let s = sample(false)?;
            let report =
                measures::check_c5(&s, inst.require_box("f")?, inst.require_box("g")?, tol)?;
            prop_line(prop, report, tol)
        }
        PropFlag::R5 => {
            let s = sample(false)?;
            let report =
                measures::ratio_r5(&s, inst.require_box("f")?, inst.require_box("g")?)?;
            let verdict = mean_ratio_verdict(&report, tol);
            ReportLine {
                label: prop.as_str().to_string(),
                conditions: vec![],
                bound: None,
                mean_ratio: Some(report),
                reason: None,
                verdict,
            }
        }
        PropFlag::P2 => {
            let s = sample(true)?;
            let (comb, two_sided) = combination()?;
            let report =
                measures::check_p2(&s, inst.require_box("comb")?, comb, two_sided, tol)?;
            prop_line(prop, report, tol)
        }
        PropFlag::C6 => {
            let s = sample(false)?;
            let (comb, two_sided) = combination()?;
            let report =
                measures::check_c6(&s, inst.require_box("comb")?, comb, two_sided, tol)?;
            prop_line(prop, report, tol)
        }
    };

    finish_report(
        format!("integral --prop {}", prop.as_str()),
        &inst,
        common,
        vec![line],
    )
}

fn prop_line(prop: PropFlag, report: BoundReport, tol: f64) -> ReportLine {
    let verdict = bound_verdict(&report, tol);
    ReportLine {
        label: prop.as_str().to_string(),
        conditions: vec![],
        bound: Some(report),
        mean_ratio: None,
        reason: None,
        verdict,
    }
}

/// Overall verdict and exit code for bound/integral runs: VIOLATED dominates,
/// otherwise any HOLDS makes the run hold; a run of only NOT-APPLICABLE lines
/// stays NOT-APPLICABLE. Only VIOLATED is a failing exit.
fn finish_report(
    run: String,
    inst: &Instance,
    common: &CommonArgs,
    lines: Vec<ReportLine>,
) -> Result<(Output, u8)> {
    let verdict = if lines.iter().any(|l| l.verdict == Verdict::Violated) {
        Verdict::Violated
    } else if lines.iter().any(|l| l.verdict == Verdict::Holds) {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    };
    let exit = u8::from(verdict == Verdict::Violated);
    let report = Report {
        run,
        inputs: InputsEcho::new(inst, &common.file),
        tolerance: common.tol,
        lines,
        verdict,
    };
    Ok((Output::Report(report), exit))
}

fn cmd_sharpness(args: &SharpnessArgs) -> Result<(Output, u8)> {
    match args.family {
        FamilyFlag::C3Q => {
            let qs = args
                .q
                .clone()
                .unwrap_or_else(|| vec![0.5, 0.1, 0.01, 0.001]);
            let rows = sharpness::sweep_q(&qs)?;
            Ok((
                Output::Sweep(SweepArtifact {
                    family: "c3-q".to_string(),
                    rows: rows.into_iter().map(Into::into).collect(),
                }),
                0,
            ))
        }
        FamilyFlag::T3Lambda => {
            let lambdas = args
                .lambda
                .clone()
                .unwrap_or_else(|| vec![0.1, 0.25, 0.5, 0.75, 0.9]);
            let lo = args.lo.unwrap_or(0.0);
            let hi = args.hi.unwrap_or(2.0);
            let rows = sharpness::sweep_lambda(lo, hi, &lambdas)?;
            Ok((
                Output::Sweep(SweepArtifact {
                    family: "t3-lambda".to_string(),
                    rows: rows.into_iter().map(Into::into).collect(),
                }),
                0,
            ))
        }
        FamilyFlag::Search => {
            let bound = match args.bound {
                Some(flag) => flag.id(),
                None => bail!("--family search needs --bound (one of t1, t2, c3, t3, c4)"),
            };
            let lambda = match args.lambda.as_deref() {
                None => None,
                Some([l]) => Some(*l),
                Some(more) => bail!(
                    "--family search takes a single --lambda, got {}",
                    more.len()
                ),
            };
            let lo = args.lo.unwrap_or(1.0);
            let hi = args.hi.unwrap_or(3.0);
            let config = SearchConfig {
                bound,
                mode: args.mode.mode(),
                dim: args.dim,
                trials: args.trials,
                seed: args.seed,
                box_x: Bracket::real(lo, hi)?,
                box_y: None,
                lambda,
            };
            let result = sharpness::random_search(&config)?;
            let exit = u8::from(result.violations > 0);
            Ok((Output::Search(result), exit))
        }
    }
}
