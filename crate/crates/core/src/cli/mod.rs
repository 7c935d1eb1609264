//! Command-line front end: argument parsing, dispatch, and text / JSON
//! rendering. The binary is a thin wrapper around [`main_with_args`].

pub mod expr;
pub mod lower;
mod output;

use std::io::Read;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::coeff::{CoeffError, Coefficient, Mode, MIN_PRECISION};
use crate::flow::{self, FlowError, RootOutcome};
use crate::linearize::{self, LinearizeError};
use crate::series::SeriesError;

pub use expr::{parse_germ, render, Expr, GermExpression, ParseError};
pub use output::{Report, SCHEMA_ID};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage, parse or precondition errors.
pub const EXIT_ERROR: i32 = 1;
/// Exit code when the answer is an obstruction certificate.
pub const EXIT_CERTIFICATE: i32 = 2;

pub const DEFAULT_ORDER: u32 = 16;
pub const DEFAULT_PRECISION: usize = 256;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Linearize(#[from] LinearizeError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

impl CliError {
    /// Whether retrying in float mode could succeed.
    fn wants_float(&self) -> bool {
        matches!(
            self,
            CliError::Coeff(CoeffError::NotRepresentable(_) | CoeffError::IncompatibleFields(..))
                | CliError::Linearize(LinearizeError::RequiresFloat(_))
                | CliError::Linearize(LinearizeError::Coeff(CoeffError::NotRepresentable(_)))
                | CliError::Flow(FlowError::NeedsFloat(_))
                | CliError::Flow(FlowError::Coeff(CoeffError::NotRepresentable(_) | CoeffError::IncompatibleFields(..)))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Time-t flow of a vector field (Lie series).
    Exp,
    /// Formal infinitesimal generator of a germ tangent to the identity.
    Log,
    /// Flow embedding of a germ; with --eval-t also evaluate it.
    Flow,
    /// Evaluate the flow of a germ at time t.
    Eval,
    /// k-th iterative root, or an obstruction certificate.
    Root,
    /// Conjugacy to the linear part (Koenigs / Poincaré).
    Linearize,
    /// Multiplicative resonances among multipliers.
    Resonance,
    /// Matrix logarithm.
    Matlog,
    /// Fractional matrix power.
    Matpow,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Exp => "exp",
            Command::Log => "log",
            Command::Flow => "flow",
            Command::Eval => "eval",
            Command::Root => "root",
            Command::Linearize => "linearize",
            Command::Resonance => "resonance",
            Command::Matlog => "matlog",
            Command::Matpow => "matpow",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "germflow", version, about = "Flows, roots and linearizations of formal germs")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Germ, vector field, multipliers or matrix; "-" reads standard input.
    pub input: String,
    /// Truncation order.
    #[arg(short = 'N', long, default_value_t = DEFAULT_ORDER)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Float precision in bits.
    #[arg(long, env = "GERMFLOW_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    /// Float comparison tolerance (default 2^-(precision-8)).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Root branch index.
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    /// Root order k for `root`.
    #[arg(short, long, default_value_t = 2)]
    pub k: u32,
    /// Time parameter for exp, eval, flow and matpow.
    #[arg(short, long = "t", visible_alias = "eval-t", allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Largest resonance degree (default: the order).
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

/// Validated settings for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub order: u32,
    pub mode: Mode,
    pub precision: usize,
    pub tolerance: f64,
    pub branch: usize,
    pub k: u32,
    pub t: Option<String>,
    pub max_degree: Option<u32>,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            order: DEFAULT_ORDER,
            mode: Mode::Exact,
            precision: DEFAULT_PRECISION,
            tolerance: Mode::Float { precision: DEFAULT_PRECISION }.tolerance(),
            branch: 0,
            k: 2,
            t: None,
            max_degree: None,
            output: OutputFormat::Text,
        }
    }

    pub fn from_args(a: &Args) -> Result<Self, CliError> {
        let float = Mode::Float { precision: a.precision };
        let cfg = RunConfig {
            command: a.command,
            order: a.order,
            mode: match a.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float => float,
            },
            precision: a.precision,
            tolerance: a.tolerance.unwrap_or_else(|| float.tolerance()),
            branch: a.branch,
            k: a.k,
            t: a.t.clone(),
            max_degree: a.max_degree,
            output: a.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.order < 2 {
            return Err(CliError::Config("order must be at least 2".into()));
        }
        if self.precision < MIN_PRECISION {
            return Err(CliError::Config(format!("precision must be at least {MIN_PRECISION} bits")));
        }
        if !(self.tolerance > 0.0) {
            return Err(CliError::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn float_mode(&self) -> Mode {
        Mode::Float {
            precision: self.precision,
        }
    }
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses and runs one command on `input`.
pub fn run(config: &RunConfig, input: &str) -> RunOutput {
    let mut report = Report::new(config);
    let code = match parse_germ(input).map_err(CliError::from).and_then(|e| execute(config, &e, &mut report)) {
        Ok(code) => code,
        Err(e) => {
            report.fail(&e);
            EXIT_ERROR
        }
    };
    let (stdout, stderr) = report.render(config.output);
    RunOutput { stdout, stderr, code }
}

/// Runs `op` in the configured mode, retrying in float mode with a warning
/// when an exact answer is not representable.
fn with_fallback<T>(
    config: &RunConfig,
    report: &mut Report,
    mut op: impl FnMut(Mode) -> Result<T, CliError>,
) -> Result<T, CliError> {
    match op(config.mode) {
        Err(e) if config.mode.is_exact() && e.wants_float() => {
            report.warn(format!(
                "exact result not representable ({e}); falling back to float mode at {} bits",
                config.precision
            ));
            report.set_mode(config.float_mode());
            op(config.float_mode())
        }
        other => other,
    }
}

fn parse_t(config: &RunConfig, mode: Mode, default: Option<Coefficient>) -> Result<Coefficient, CliError> {
    match (&config.t, default) {
        (Some(t), _) => match crate::coeff::rational::parse_decimal(t) {
            Some(r) => Ok(mode.rational(r)),
            None => lower::lower_scalar(&parse_germ(t)?, mode),
        },
        (None, Some(d)) => Ok(d),
        (None, None) => Err(CliError::Config(format!("{} needs --t", config.command.name()))),
    }
}

fn execute(config: &RunConfig, e: &Expr, report: &mut Report) -> Result<i32, CliError> {
    let n = config.order;
    match config.command {
        Command::Exp => {
            let (g, names) = with_fallback(config, report, |mode| {
                let (v, layout) = lower::lower_vector_field(e, n, mode)?;
                let t = parse_t(config, mode, Some(mode.one()))?;
                Ok((flow::exp_flow(&v, &t, n)?, layout))
            })?;
            report.set_series(g.components(), &names);
        }
        Command::Log => {
            let (u, layout) = lower::lower_germ(e, n, config.mode)?;
            let v = flow::formal_log(&u, n)?;
            report.set_series(v.components(), &layout);
        }
        Command::Flow | Command::Eval => {
            if config.command == Command::Eval && config.t.is_none() {
                return Err(CliError::Config("eval needs --t".into()));
            }
            let (u, layout) = lower::lower_germ(e, n, config.mode)?;
            let family = flow::flow_family(&u, n)?;
            report.set_flow(&family, &layout);
            if config.t.is_some() {
                let phi = with_fallback(config, report, |mode| {
                    let t = parse_t(config, mode, None)?;
                    Ok(flow::evaluate_flow(&family, &t, n)?)
                })?;
                report.set_series(phi.components(), &layout);
            }
        }
        Command::Root => {
            let (u, layout) = lower::lower_germ(e, n, config.mode)?;
            match flow::iterative_root(&u, config.k, n, config.branch)? {
                RootOutcome::Root(g) => report.set_series(g.components(), &layout),
                RootOutcome::Obstruction(cert) => {
                    report.set_certificate(&cert, &layout);
                    return Ok(EXIT_CERTIFICATE);
                }
            }
        }
        Command::Linearize => {
            let (u, layout) = lower::lower_germ(e, n, config.mode)?;
            let lin = if u.nvars() == 1 {
                linearize::koenigs(&u, n)?
            } else {
                linearize::poincare_linearize(&u, n)?
            };
            report.set_series(lin.f.components(), &layout);
            report.set_multipliers(&lin.multipliers);
        }
        Command::Resonance => {
            let mults = lower::lower_multipliers(e, n, config.mode)?;
            let d = config.max_degree.unwrap_or(n);
            let w = if config.mode.is_exact() {
                linearize::resonance_check(&mults, d)?
            } else {
                linearize::resonance_check_with_tolerance(&mults, d, config.tolerance)?
            };
            report.set_multipliers(&mults);
            report.set_witnesses(&w);
        }
        Command::Matlog | Command::Matpow => {
            let j = lower::lower_matrix(e, n, config.mode)?;
            let c = linearize::closeness_check(&j)?;
            report.set_norm(c.norm);
            let m = with_fallback(config, report, |mode| {
                let j = j.to_mode(mode)?;
                Ok(if config.command == Command::Matlog {
                    linearize::matrix_log(&j)?
                } else {
                    let t = parse_t(config, mode, None)?;
                    linearize::matrix_power_t(&j, &t)?
                })
            })?;
            report.set_matrix(&m);
        }
    }
    Ok(EXIT_OK)
}

/// Entry point shared by the binary and tests: parses `args` (including the
/// program name), reads standard input for "-", and returns the output.
pub fn main_with_args<I, T>(args: I, stdin: &mut dyn Read) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { stdout: String::new(), stderr: text, code }
            } else {
                RunOutput { stdout: text, stderr: String::new(), code }
            };
        }
    };
    let config = match RunConfig::from_args(&args) {
        Ok(c) => c,
        Err(e) => {
            let mut fallback = RunConfig::new(args.command);
            fallback.output = args.output;
            let mut report = Report::new(&fallback);
            report.fail(&e);
            let (stdout, stderr) = report.render(args.output);
            return RunOutput { stdout, stderr, code: EXIT_ERROR };
        }
    };
    let input = if args.input == "-" {
        let mut s = String::new();
        if let Err(e) = stdin.read_to_string(&mut s) {
            return RunOutput {
                stdout: String::new(),
                stderr: format!("error: cannot read standard input: {e}\n"),
                code: EXIT_ERROR,
            };
        }
        s
    } else {
        args.input.clone()
    };
    run(&config, &input)
}
