//! Command line front end.
//!
//! Exit codes: 0 success, 2 invalid arguments or input files, 3 budget or
//! evaluation failure, 4 convergence condition violated under `--strict`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::io::{read_signal_csv, scenario_json, write_signal_csv, write_snr_csv, write_sweep_csv};
use super::{run_scenario, AmplifierConfig, Mode};
use crate::convergence::check_convergence;
use crate::schema::{filter_from_json, system_from_json};
use crate::solver::{post_linearize, pre_linearize};
use crate::{Error, Result, VolterraSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EVALUATION: i32 = 3;
pub const EXIT_NOT_CONVERGENT: i32 = 4;

/// Environment variable overriding the dense-coefficient budget.
pub const BUDGET_ENV: &str = "VOLTLIN_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "voltlin", version, about = "Linearize time-varying Volterra systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Post,
    Pre,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Post => Mode::Post,
            ModeArg::Pre => Mode::Pre,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    Amplifier,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputKind {
    /// `r,snr_db` table
    Csv,
    /// Summary with the ψ report
    Json,
    /// `n,real,imag` error signal at `--at`
    Error,
    /// `n,real,imag` cascade output at `--at`
    Output,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the convergence functional of a system over a time range.
    Psi {
        #[arg(long)]
        system: PathBuf,
        /// Bound on the equalizer's solution, ||x||∞.
        #[arg(long)]
        bound: f64,
        /// Half-open range `start:end`.
        #[arg(long, value_parser = parse_range)]
        range: Range<i64>,
        #[arg(long)]
        strict: bool,
    },
    /// Run one amplifier experiment.
    Scenario {
        #[arg(long, value_enum, default_value = "amplifier")]
        preset: Preset,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Input amplitude bound.
        #[arg(long = "B", alias = "bound")]
        bound: f64,
        #[arg(long, default_value_t = 6)]
        iters: usize,
        /// Linearize with the perturbed coefficient set.
        #[arg(long)]
        erroneous: bool,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutputKind,
        /// Iteration whose signal is written by `--out error|output`.
        #[arg(long)]
        at: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Post- or pre-linearize a signal read from CSV.
    Linearize {
        #[arg(long)]
        system: PathBuf,
        /// Impulse response of the inverse of the target linear behaviour.
        #[arg(long)]
        inverse: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        iters: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run amplifier experiments over a grid of bounds.
    Sweep {
        #[arg(long, value_enum, default_value = "amplifier")]
        preset: Preset,
        /// Modes to run; both when omitted.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_delimiter = ',', default_value = "0.75,1,1.3")]
        bounds: Vec<f64>,
        #[arg(long, default_value_t = 6)]
        iters: usize,
        #[arg(long)]
        erroneous: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> std::result::Result<Range<i64>, String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected start:end, got {s:?}"))?;
    let start = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let end = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok(start..end)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::Diverged { .. } | Error::OrderOutOfRange { .. } => {
            EXIT_EVALUATION
        }
        _ => EXIT_INVALID,
    }
}

fn budget_from_env() -> Result<Option<usize>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={v:?} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn load_system(path: &Path) -> Result<VolterraSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let system = system_from_json(&text)?;
    Ok(match budget_from_env()? {
        Some(b) => system.with_budget(b),
        None => system,
    })
}

/// Output goes to `path` if given, otherwise to `stdout`.
fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn preset_config(preset: Preset, erroneous: bool) -> AmplifierConfig {
    match preset {
        Preset::Amplifier => AmplifierConfig {
            erroneous,
            ..AmplifierConfig::default()
        },
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Psi {
            system,
            bound,
            range,
            strict,
        } => {
            let system = load_system(&system)?;
            let report = check_convergence(&system, bound, range)?;
            writeln!(stdout, "{}", report.to_json())?;
            Ok(strict_code(strict, report.satisfied))
        }
        Command::Scenario {
            preset,
            mode,
            bound,
            iters,
            erroneous,
            out,
            at,
            output,
            strict,
        } => {
            budget_from_env()?;
            let cfg = preset_config(preset, erroneous);
            let report = run_scenario(&cfg, mode.into(), bound, iters)?;
            let at = at.unwrap_or(iters);
            if at > iters {
                return Err(Error::InvalidArgument(format!(
                    "--at {at} exceeds --iters {iters}"
                )));
            }
            with_output(output.as_deref(), stdout, |w| match out {
                OutputKind::Csv => write_snr_csv(w, &report.snr_db),
                OutputKind::Json => {
                    writeln!(w, "{}", scenario_json(&report))?;
                    Ok(())
                }
                OutputKind::Error => write_signal_csv(w, &report.errors[at]),
                OutputKind::Output => write_signal_csv(w, &report.outputs[at]),
            })?;
            Ok(strict_code(strict, report.psi.satisfied))
        }
        Command::Linearize {
            system,
            inverse,
            mode,
            input,
            iters,
            output,
        } => {
            let system = load_system(&system)?;
            let q_text = std::fs::read_to_string(&inverse)
                .map_err(|e| Error::Io(format!("{}: {e}", inverse.display())))?;
            let q = filter_from_json(&q_text)?;
            let file =
                File::open(&input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
            let y = read_signal_csv(file)?;
            let result = match Mode::from(mode) {
                Mode::Post => post_linearize(&system, &q, &y, iters)?.last().clone(),
                Mode::Pre => pre_linearize(&system, &q, &y, iters)?.trace.last().clone(),
            };
            with_output(output.as_deref(), stdout, |w| write_signal_csv(w, &result))?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            preset,
            mode,
            bounds,
            iters,
            erroneous,
            output,
        } => {
            budget_from_env()?;
            let cfg = preset_config(preset, erroneous);
            let modes = match mode {
                Some(m) => vec![Mode::from(m)],
                None => vec![Mode::Post, Mode::Pre],
            };
            let mut reports = Vec::new();
            for &b in &bounds {
                for &m in &modes {
                    reports.push(run_scenario(&cfg, m, b, iters)?);
                }
            }
            with_output(output.as_deref(), stdout, |w| write_sweep_csv(w, &reports))?;
            Ok(EXIT_OK)
        }
    }
}

fn strict_code(strict: bool, satisfied: bool) -> i32 {
    if strict && !satisfied {
        EXIT_NOT_CONVERGENT
    } else {
        EXIT_OK
    }
}
