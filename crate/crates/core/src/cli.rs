//! The `pms-metrics` command line.
//!
//! ```text
//! pms-metrics validate <assessment.json>
//! pms-metrics analyze <module.rl> [--config <file>] [--json]
//! pms-metrics evaluate <assessment.json> [--out <report.json>]
//! pms-metrics compare <report.json>... [--out <comparison.json>]
//! pms-metrics render <report.json|comparison.json> --figure <kind>
//!                    [--ref-complexity <real>] [--out <file.svg>]
//! ```
//!
//! Exit codes: 0 success, 1 validation failure, 2 lex/parse failure, 3 I/O
//! failure, 4 usage error. Output files are written to a temporary file in
//! the target directory and renamed into place.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::assessment::{load_assessment, parse_assessment, validate_assessment, LoadError};
use crate::metrics::{module_complexity, MetricsReport};
use crate::render::{self, Panel, RenderSpec};
use crate::report::{compare_candidates, evaluate_pms, ComparisonReport, EvaluateError};
use crate::rules::{analyze_source, AnalyzerConfig, IoClassification};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    ValidationFailure,
    ParseFailure,
    IoFailure,
    Usage,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::ValidationFailure => 1,
            ExitStatus::ParseFailure => 2,
            ExitStatus::IoFailure => 3,
            ExitStatus::Usage => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pms-metrics", version, about = "Metrics for power management system software")]
pub struct Cli {
    /// Report progress and warnings on stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Suppress informational output on stdout.
    #[arg(long, global = true, conflicts_with = "verbose")]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an assessment document and list every violation.
    Validate { assessment: PathBuf },
    /// Compute readability, McCabe number and fan-in/fan-out of a rule module.
    Analyze {
        module: PathBuf,
        /// Analyzer configuration (JSON).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an assessment document into a metrics report.
    Evaluate {
        assessment: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank two or more metrics reports.
    Compare {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a figure from a report or comparison.
    Render {
        input: PathBuf,
        #[arg(long, value_enum)]
        figure: Figure,
        /// Complexity drawn at full axis length.
        #[arg(long)]
        ref_complexity: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Modifiability,
    Surface,
    Autonomy,
    Panels,
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self::new(ExitStatus::IoFailure, format!("{}: {err}", path.display()))
    }
}

struct Context<'a> {
    verbose: bool,
    quiet: bool,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Context<'_> {
    fn info(&mut self, msg: &str) {
        if self.verbose {
            let _ = writeln!(self.stderr, "{msg}");
        }
    }

    /// Writes an artifact to `out`, or to stdout when no path is given.
    fn emit(&mut self, out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
        match out {
            Some(path) => {
                write_atomic(path, bytes).map_err(|e| Failure::io(path, e))?;
                self.info(&format!("wrote {}", path.display()));
                Ok(())
            }
            None => self
                .stdout
                .write_all(bytes)
                .map_err(|e| Failure::new(ExitStatus::IoFailure, format!("stdout: {e}"))),
        }
    }
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`. On failure nothing is left behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::Builder::new()
        .prefix(".pms-metrics-")
        .tempfile_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(path, e))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    ExitStatus::Success
                }
                _ => {
                    let _ = write!(stderr, "{err}");
                    ExitStatus::Usage
                }
            };
        }
    };

    let mut ctx = Context {
        verbose: cli.verbose,
        quiet: cli.quiet,
        stdout,
        stderr,
    };
    let result = match &cli.command {
        Command::Validate { assessment } => validate(&mut ctx, assessment),
        Command::Analyze {
            module,
            config,
            json,
        } => analyze(&mut ctx, module, config.as_deref(), *json),
        Command::Evaluate { assessment, out } => evaluate(&mut ctx, assessment, out.as_deref()),
        Command::Compare { reports, out } => compare(&mut ctx, reports, out.as_deref()),
        Command::Render {
            input,
            figure,
            ref_complexity,
            out,
        } => render_figure(&mut ctx, input, *figure, *ref_complexity, out.as_deref()),
    };
    match result {
        Ok(()) => ExitStatus::Success,
        Err(failure) => {
            let _ = writeln!(ctx.stderr, "error: {}", failure.message);
            failure.status
        }
    }
}

fn load_error(path: &Path, err: LoadError) -> Failure {
    Failure::new(ExitStatus::ValidationFailure, format!("{}: {err}", path.display()))
}

fn validate(ctx: &mut Context, path: &Path) -> Result<(), Failure> {
    let bytes = read(path)?;
    let doc = parse_assessment(&bytes).map_err(|e| load_error(path, e))?;
    let report = validate_assessment(&doc);
    if !report.is_valid() {
        for v in &report.violations {
            let _ = writeln!(ctx.stderr, "{}: {v}", path.display());
        }
        return Err(Failure::new(
            ExitStatus::ValidationFailure,
            format!("{} violation(s) found", report.len()),
        ));
    }
    if !ctx.quiet {
        let _ = writeln!(
            ctx.stdout,
            "valid: {} ({} modules)",
            doc.pms,
            doc.modules.len()
        );
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct AnalyzeOutput<'a> {
    readability: f64,
    mccabe: u32,
    fan_in: u32,
    fan_out: u32,
    c: f64,
    zero_io_warning: bool,
    io: &'a IoClassification,
}

fn analyze(ctx: &mut Context, path: &Path, config: Option<&Path>, json: bool) -> Result<(), Failure> {
    let config = match config {
        Some(cfg_path) => serde_json::from_slice::<AnalyzerConfig>(&read(cfg_path)?).map_err(|e| {
            Failure::new(ExitStatus::ValidationFailure, format!("{}: {e}", cfg_path.display()))
        })?,
        None => AnalyzerConfig::default(),
    };
    let bytes = read(path)?;
    let source = String::from_utf8(bytes).map_err(|_| {
        Failure::new(ExitStatus::ParseFailure, format!("{}: not valid UTF-8", path.display()))
    })?;
    let analysis = analyze_source(&source, &config)
        .map_err(|e| Failure::new(ExitStatus::ParseFailure, format!("{}: {e}", path.display())))?;
    let module = module_complexity(&path.display().to_string(), analysis.inputs);
    if module.zero_io_warning {
        ctx.info("warning: fan-in or fan-out is zero, so complexity is zero");
    }

    let inputs = analysis.inputs;
    if json {
        let out = AnalyzeOutput {
            readability: inputs.readability,
            mccabe: inputs.mccabe,
            fan_in: inputs.fan_in,
            fan_out: inputs.fan_out,
            c: module.c,
            zero_io_warning: module.zero_io_warning,
            io: &analysis.io,
        };
        let mut bytes = serde_json::to_vec_pretty(&out).expect("analysis output serializes");
        bytes.push(b'\n');
        return ctx.emit(None, &bytes);
    }

    let list = |set: &std::collections::BTreeSet<String>| {
        set.iter().cloned().collect::<Vec<_>>().join(", ")
    };
    let io = &analysis.io;
    let text = format!(
        "readability  {}\nmccabe       {}\nfan_in       {}\nfan_out      {}\ncomplexity   {}\ninputs       {}\noutputs      {}\ninternals    {}\nexcluded     {}\n",
        inputs.readability,
        inputs.mccabe,
        inputs.fan_in,
        inputs.fan_out,
        module.c,
        list(&io.inputs),
        list(&io.outputs),
        list(&io.internals),
        list(&io.excluded),
    );
    ctx.emit(None, text.as_bytes())
}

fn evaluate(ctx: &mut Context, path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let doc = load_assessment(&read(path)?).map_err(|e| load_error(path, e))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let report = evaluate_pms(&doc, base).map_err(|e| {
        let status = match &e {
            EvaluateError::Invalid(_) | EvaluateError::Metrics { .. } => ExitStatus::ValidationFailure,
            EvaluateError::Io { .. } => ExitStatus::IoFailure,
            EvaluateError::Analyze { .. } => ExitStatus::ParseFailure,
        };
        Failure::new(status, e.to_string())
    })?;
    for m in report.module_complexities.iter().filter(|m| m.zero_io_warning) {
        ctx.info(&format!(
            "warning: module {:?} has zero fan-in or fan-out; its complexity is 0",
            m.module
        ));
    }
    ctx.emit(out, &report.to_json())
}

fn parse_report(path: &Path, bytes: &[u8]) -> Result<MetricsReport, Failure> {
    serde_json::from_slice(bytes).map_err(|e| {
        Failure::new(ExitStatus::ValidationFailure, format!("{}: not a metrics report: {e}", path.display()))
    })
}

fn compare(ctx: &mut Context, paths: &[PathBuf], out: Option<&Path>) -> Result<(), Failure> {
    if paths.len() < 2 {
        return Err(Failure::new(
            ExitStatus::Usage,
            "compare needs at least two reports",
        ));
    }
    let reports = paths
        .iter()
        .map(|p| parse_report(p, &read(p)?))
        .collect::<Result<Vec<_>, _>>()?;
    let comparison = compare_candidates(&reports)
        .map_err(|e| Failure::new(ExitStatus::Usage, e.to_string()))?;
    ctx.emit(out, &comparison.to_json())
}

enum RenderInput {
    Report(MetricsReport),
    Comparison(ComparisonReport),
}

fn render_figure(
    ctx: &mut Context,
    path: &Path,
    figure: Figure,
    reference: Option<f64>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let mut spec = RenderSpec::default();
    if let Some(r) = reference {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Failure::new(
                ExitStatus::Usage,
                format!("--ref-complexity must be greater than 0, got {r}"),
            ));
        }
        spec = spec.with_reference(r);
    }

    let bytes = read(path)?;
    let value: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| {
        Failure::new(ExitStatus::ValidationFailure, format!("{}: {e}", path.display()))
    })?;
    let input = if value.get("candidates").is_some() {
        serde_json::from_value(value).map(RenderInput::Comparison)
    } else {
        serde_json::from_value(value).map(RenderInput::Report)
    }
    .map_err(|e| {
        Failure::new(
            ExitStatus::ValidationFailure,
            format!("{}: not a report or comparison: {e}", path.display()),
        )
    })?;

    let usage = |msg: &str| Err(Failure::new(ExitStatus::Usage, msg));
    let svg = match (&input, figure) {
        (RenderInput::Report(r), Figure::Modifiability) => render::render_modifiability(r, &spec),
        (RenderInput::Report(r), Figure::Surface) => render::render_surface(r, &spec),
        (RenderInput::Report(r), Figure::Autonomy) => render::render_autonomy(&r.autonomy, &spec),
        (RenderInput::Report(_), Figure::Panels) => {
            return usage("--figure panels needs a comparison produced by `compare`")
        }
        (RenderInput::Comparison(c), Figure::Autonomy | Figure::Panels) => {
            let panels: Vec<_> = c
                .candidates
                .iter()
                .map(|r| Panel::autonomy(r.pms.to_string(), r.autonomy.clone()))
                .collect();
            render::render_panels(&panels, &spec)
        }
        (RenderInput::Comparison(c), Figure::Surface) => {
            let panels: Vec<_> = c
                .candidates
                .iter()
                .map(|r| Panel::report(r.pms.to_string(), r.clone()))
                .collect();
            render::render_panels(&panels, &spec)
        }
        (RenderInput::Comparison(_), Figure::Modifiability) => {
            return usage("--figure modifiability needs a single report")
        }
    }
    .map_err(|e| Failure::new(ExitStatus::ValidationFailure, e.to_string()))?;
    ctx.emit(out, svg.as_bytes())
}
