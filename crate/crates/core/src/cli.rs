//! Command-line front end.
//!
//! Exit codes: 0 success or converged, 1 verification failure, 2 not
//! converged, 3 degenerate input, 4 overflow, 5 unsupported dimension,
//! 64 bad usage, 65 unreadable or malformed input document.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog;
use crate::document::{DocumentError, SimplexDocument};
use crate::geom::{GeomError, Simplex};
use crate::iteration::{iterate, subsequence_limits, ConvergenceReport, IterationConfig, IterationError, StopReason, Trajectory};
use crate::oracle::{self, OracleError, DEFAULT_QUALITY_FLOOR};
use crate::scalar::{DoubleDouble, Real};
use crate::svg::{self, PlotMode};
use crate::tolerance::REL_TOL;
use crate::verify::{self, summarize, CaseReport, VerifyConfig};
use crate::export;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;
pub const EXIT_DIMENSION: i32 = 5;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_BAD_INPUT: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "simplex-root", version, about = "Roots of simplices, their iteration and property checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a simplex document, random or named.
    Gen(GenArgs),
    /// Iterate the root map and report circumcenter convergence.
    Iterate(IterateArgs),
    /// Check the root's properties on given or random simplices.
    Verify(VerifyArgs),
    /// Draw a planar trajectory as SVG.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, conflicts_with = "named", required_unless_present = "named")]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum r/R of the generated simplex.
    #[arg(long, default_value_t = DEFAULT_QUALITY_FLOOR)]
    pub quality: f64,
    /// equilateral, right-3-4-5 or regular-N.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    DoubleDouble,
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    /// Simplex document; `-` or absent reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    /// Cauchy threshold on |O_k - O_{k+2}|.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub no_recenter: bool,
    #[arg(long, value_enum, default_value_t = Precision::DoubleDouble)]
    pub precision: Precision,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub input: Option<PathBuf>,
    /// Number of random cases.
    #[arg(long, requires = "dim")]
    pub random: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub mc_samples: usize,
    /// Relative tolerance for every residual.
    #[arg(long, default_value_t = REL_TOL)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Root,
    Containment,
    Centers,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of root steps to draw.
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Show::Root)]
    pub show: Show,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let code = match e {
            GeomError::Degenerate { .. } => EXIT_DEGENERATE,
            GeomError::Overflow { .. } => EXIT_OVERFLOW,
            _ => EXIT_BAD_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Geom(g) => g.into(),
            DocumentError::Json(_) => Failure::new(EXIT_BAD_INPUT, e.to_string()),
        }
    }
}

impl From<IterationError> for Failure {
    fn from(e: IterationError) -> Self {
        match e {
            IterationError::Geom(g) => g.into(),
            IterationError::OverflowBeforeTwoSteps { .. } => Failure::new(EXIT_OVERFLOW, e.to_string()),
            IterationError::UnsupportedDimension(_) => Failure::new(EXIT_DIMENSION, e.to_string()),
            IterationError::InvalidConfig(_) => Failure::new(EXIT_USAGE, e.to_string()),
            IterationError::TooShort { .. } => Failure::new(EXIT_NOT_CONVERGED, e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Geom(g) => g.into(),
            _ => Failure::new(EXIT_USAGE, e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_BAD_INPUT, e.to_string())
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Iterate(a) => cmd_iterate(&a, stdin, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Plot(a) => cmd_plot(&a, stdin, out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_document(input: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<SimplexDocument, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(SimplexDocument::parse(&text)?)
}

fn nondegenerate(doc: &SimplexDocument) -> Result<Simplex, Failure> {
    let s = doc.to_simplex()?;
    if s.is_degenerate() {
        return Err(Failure::new(EXIT_DEGENERATE, format!("degenerate simplex (scaled volume {:e})", s.scaled_volume())));
    }
    Ok(s)
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = match &a.named {
        Some(name) => {
            let s = catalog::by_name(name).ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown simplex name {name:?}")))?;
            SimplexDocument::from_simplex(&s, Some(name.clone()))
        }
        None => {
            let dim = a.dim.expect("clap requires --dim");
            let s = oracle::random_simplex(dim, a.seed, a.quality)?;
            SimplexDocument::from_simplex(&s, None)
        }
    };
    writeln!(out, "{}", doc.to_json())?;
    Ok(EXIT_OK)
}

struct IterOutput {
    text: String,
    report: Option<ConvergenceReport>,
    stop: StopReason,
    steps: usize,
}

fn iterate_as<T: Real>(s: &Simplex, cfg: &IterationConfig, format: Format) -> Result<IterOutput, IterationError> {
    let traj: Trajectory<T> = iterate(&s.cast::<T>(), cfg)?;
    let report = subsequence_limits(&traj, cfg).ok();
    let text = match format {
        Format::Csv => export::to_csv(&traj),
        Format::Json => export::to_json(&traj, report.as_ref()),
    };
    Ok(IterOutput { text, report, stop: traj.stop, steps: traj.len() })
}

fn fmt_point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| format!("{x:.17e}")).collect();
    format!("({})", parts.join(", "))
}

fn cmd_iterate(a: &IterateArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let s = nondegenerate(&read_document(a.input.as_ref(), stdin)?)?;
    let cfg = IterationConfig { max_steps: a.steps, cauchy_tolerance: a.tol, recenter: !a.no_recenter, ..Default::default() };
    let res = match a.precision {
        Precision::Double => iterate_as::<f64>(&s, &cfg, a.format),
        Precision::DoubleDouble => iterate_as::<DoubleDouble>(&s, &cfg, a.format),
    }?;
    out.write_all(res.text.as_bytes())?;
    out.flush()?;
    writeln!(err, "steps: {} (stopped: {:?})", res.steps, res.stop)?;
    let converged = match &res.report {
        Some(r) => {
            writeln!(err, "even limit: {}", fmt_point(&r.even_limit))?;
            writeln!(err, "odd limit:  {}", fmt_point(&r.odd_limit))?;
            writeln!(err, "gap: {:.17e}", r.gap)?;
            writeln!(err, "rho estimate: {:.17e}", r.rho_estimate)?;
            writeln!(err, "converged: even={} odd={}", r.even_converged, r.odd_converged)?;
            r.converged()
        }
        None => {
            writeln!(err, "too few steps for a convergence report")?;
            false
        }
    };
    if res.stop == StopReason::Overflow {
        writeln!(err, "error: circumradius passed the overflow guard")?;
        return Ok(EXIT_OVERFLOW);
    }
    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn print_case(out: &mut dyn Write, r: &CaseReport) -> std::io::Result<()> {
    let seed = r.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
    writeln!(
        out,
        "case {} seed {seed} n={}: circumsphere {:.3e} ({:.3e} abs) gram {:.3e} ({:.3e} abs) margin {:.3e} ({:.3e} abs) \
         mc {} recurrence {:.3e} container {:.3e} ratio {:.3e} {}",
        r.index,
        r.dimension,
        r.circumsphere_residual,
        r.circumsphere_residual_abs,
        r.gram_residual,
        r.gram_residual_abs,
        r.min_margin,
        r.min_margin_abs,
        r.mc_fraction,
        r.recurrence_residual,
        r.container_slack,
        r.ratio_slack,
        if r.passed { "ok" } else { "FAIL" }
    )
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if a.mc_samples == 0 {
        return Err(Failure::new(EXIT_USAGE, "--mc-samples must be at least 1"));
    }
    if !(a.tol >= 0.0) {
        return Err(Failure::new(EXIT_USAGE, "--tol must be nonnegative"));
    }
    let cfg = VerifyConfig { tolerance: a.tol, mc_samples: a.mc_samples };
    let reports = match (&a.input, a.random) {
        (Some(path), _) => {
            let s = nondegenerate(&read_document(Some(path), &mut std::io::empty())?)?;
            vec![verify::verify_simplex(&s, 0, None, &cfg)?]
        }
        (None, Some(count)) => verify::verify_random(count, a.dim.expect("clap requires --dim"), a.seed, &cfg)?,
        (None, None) => unreachable!("clap requires --input or --random"),
    };
    for r in &reports {
        print_case(out, r)?;
    }
    let s = summarize(&reports);
    writeln!(out, "cases: {}  failures: {}", s.cases, s.failures)?;
    writeln!(out, "max circumsphere residual: {:.3e}", s.circumsphere_residual)?;
    writeln!(out, "max gram residual: {:.3e}", s.gram_residual)?;
    writeln!(out, "min containment margin: {:.3e}", s.min_margin)?;
    writeln!(out, "min mc fraction: {}", s.min_mc_fraction)?;
    writeln!(out, "max recurrence residual: {:.3e}", s.recurrence_residual)?;
    writeln!(out, "min container slack: {:.3e}", s.min_container_slack)?;
    writeln!(out, "min ratio slack: {:.3e}", s.min_ratio_slack)?;
    if s.failures == 0 {
        return Ok(EXIT_OK);
    }
    for r in reports.iter().filter(|r| !r.passed) {
        match r.seed {
            Some(seed) => writeln!(
                err,
                "failed: case {} seed {seed} (reproduce with --random 1 --dim {} --seed {seed})",
                r.index, r.dimension
            )?,
            None => writeln!(err, "failed: case {}", r.index)?,
        }
    }
    Ok(EXIT_VERIFY_FAILED)
}

fn cmd_plot(a: &PlotArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = read_document(a.input.as_ref(), stdin)?;
    if doc.dimension != 2 {
        return Err(Failure::new(EXIT_DIMENSION, format!("plot needs dimension 2, input has dimension {}", doc.dimension)));
    }
    let s = nondegenerate(&doc)?;
    let (mode, count) = match a.show {
        Show::Root => (PlotMode::Root, a.steps + 1),
        Show::Containment => (PlotMode::Containment, a.steps + 1),
        Show::Centers => (PlotMode::Centers, a.steps.max(2)),
    };
    let cfg = IterationConfig { max_steps: count.max(2), resolution_guard: false, ..Default::default() };
    let traj = iterate(&s.cast::<DoubleDouble>(), &cfg)?;
    out.write_all(svg::render(&traj, mode)?.as_bytes())?;
    Ok(EXIT_OK)
}
