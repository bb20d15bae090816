use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maskswap_cli::{
    enumerate_scenarios, load_scenarios, run_suite, suite, Bounds, Family, RunOptions, VerificationReport,
    DEFAULT_SUITE_SEED,
};

/// Checks closed-form entanglement-swapping predictors and maskers against a
/// brute-force oracle.
#[derive(Parser)]
#[command(name = "maskswap", version)]
struct Cli {
    /// Tolerance for every scenario, replacing per-file values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for scenario execution.
    #[arg(long, global = true, env = "MASKSWAP_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Output {
    /// How to print the report on stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the structured report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep every outcome row, not only failing ones.
    #[arg(long)]
    verbose: bool,
    /// Record per-scenario and total runtimes.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a scenario file or every `.toml` file in a directory.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Run a built-in suite.
    Suite {
        /// bell-bell-all, cat-swap, karimipour, masking-def1, masked-ghz,
        /// masked-qudit, li-masked or all.
        name: String,
        #[arg(long, default_value_t = DEFAULT_SUITE_SEED)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Write the scenarios of a family as scenario files.
    Enumerate {
        family: Family,
        #[arg(long, default_value_t = Bounds::default().d_max)]
        d_max: usize,
        #[arg(long, default_value_t = Bounds::default().n_max)]
        n_max: usize,
        #[arg(long, default_value_t = Bounds::default().m_max)]
        m_max: usize,
        /// Draws per configuration for continuous parameters.
        #[arg(long, default_value_t = Bounds::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = Bounds::default().seed)]
        seed: u64,
        /// Directory for the files; created if missing.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a structured report.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INPUT)
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn emit(report: &VerificationReport, format: Format) {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json() + "\n",
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn verdict_code(report: &VerificationReport) -> ExitCode {
    if report.verdict.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn finish(report: VerificationReport, output: &Output) -> ExitCode {
    emit(&report, output.format);
    if let Some(path) = &output.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    verdict_code(&report)
}

fn options(cli: &Cli, output: &Output) -> Result<RunOptions, String> {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(format!("--tol must be positive, got {t}"));
        }
    }
    if cli.workers == Some(0) {
        return Err("--workers must be at least 1".into());
    }
    Ok(RunOptions { tolerance: cli.tol, verbose: output.verbose, timings: output.timings, workers: cli.workers })
}

fn write_scenarios(dir: &Path, files: &[maskswap_cli::ScenarioFile], family: Family) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let width = files.len().to_string().len().max(4);
    for (i, file) in files.iter().enumerate() {
        std::fs::write(dir.join(format!("{family}-{:0width$}.toml", i + 1)), file.to_toml())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Verify { path, output } => {
            let opts = match options(&cli, output) {
                Ok(o) => o,
                Err(e) => return input_error(e),
            };
            let scenarios = match load_scenarios(path) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let named = scenarios.into_iter().map(|(p, f)| (p.display().to_string(), f)).collect();
            match run_suite(&path.display().to_string(), None, named, &opts) {
                Ok(report) => finish(report, output),
                Err(e) => input_error(e),
            }
        }
        Command::Suite { name, seed, output } => {
            let opts = match options(&cli, output) {
                Ok(o) => o,
                Err(e) => return input_error(e),
            };
            let files = match suite(name, *seed) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let named = files.into_iter().enumerate().map(|(i, f)| (format!("suite:{name}#{}", i + 1), f)).collect();
            match run_suite(&format!("suite:{name}"), Some(*seed), named, &opts) {
                Ok(report) => finish(report, output),
                Err(e) => input_error(e),
            }
        }
        Command::Enumerate { family, d_max, n_max, m_max, samples, seed, out } => {
            let bounds = Bounds { d_max: *d_max, n_max: *n_max, m_max: *m_max, samples: *samples, seed: *seed };
            let files = match enumerate_scenarios(*family, &bounds) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            if let Err(e) = write_scenarios(out, &files, *family) {
                return input_error(format!("{}: {e}", out.display()));
            }
            println!("wrote {} {family} scenarios to {}", files.len(), out.display());
            ExitCode::SUCCESS
        }
        Command::Report { file, format } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", file.display())),
            };
            match VerificationReport::from_json(&text) {
                Ok(report) => {
                    emit(&report, *format);
                    verdict_code(&report)
                }
                Err(e) => input_error(format!("{}: {e}", file.display())),
            }
        }
    }
}
