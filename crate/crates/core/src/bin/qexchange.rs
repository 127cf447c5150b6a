//! Command-line front end: `sweep`, `figure` and `verify`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qexchange::channel::MefMode;
use qexchange::sweep::{self, FigureId, Output, SweepConfig, DEFAULT_LT_MAX, DEFAULT_STEPS};
use qexchange::verify::{self, VerifyConfig, DEFAULT_SEED};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qexchange",
    version,
    about = "Entanglement and channel-information sweeps for a dephased qubit pair"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the interaction time and print one CSV row per grid point.
    Sweep(SweepArgs),
    /// Write the sweep behind one plot panel (1a..1d, 2a..2d) to fig<id>.csv.
    Figure {
        id: String,
        /// Directory for the CSV file.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long)]
        skip_mef: bool,
    },
    /// Run every invariant suite; exits 2 if any fails.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Entanglement angle in radians, within [0, pi].
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lt_min: f64,
    #[arg(long, default_value_t = DEFAULT_LT_MAX, allow_hyphen_values = true)]
    lt_max: f64,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit `nan` in the mef and Fano columns instead of optimizing.
    #[arg(long)]
    skip_mef: bool,
}

fn mef_mode(skip: bool) -> MefMode {
    if skip {
        MefMode::Skip
    } else {
        MefMode::Optimize
    }
}

fn run_and_write(cfg: &SweepConfig) -> ExitCode {
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let points = match sweep::run_sweep(cfg) {
        Ok(points) => points,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VERIFY);
        }
    };
    let written = match &cfg.output {
        Output::Stdout => sweep::write_csv(&points, BufWriter::new(io::stdout().lock())),
        Output::File(path) => File::create(path)
            .and_then(|f| sweep::write_csv(&points, BufWriter::new(f)))
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match cli.command {
        Command::Sweep(args) => {
            let cfg = SweepConfig {
                theta: args.theta,
                phi: args.phi,
                lt_min: args.lt_min,
                lt_max: args.lt_max,
                steps: args.steps,
                mef: mef_mode(args.skip_mef),
                output: args.out.map_or(Output::Stdout, Output::File),
            };
            run_and_write(&cfg)
        }
        Command::Figure { id, dir, skip_mef } => {
            let figure: FigureId = match id.parse() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let mut cfg = figure.sweep_config();
            cfg.mef = mef_mode(skip_mef);
            let path = dir.join(figure.file_name());
            cfg.output = Output::File(path.clone());
            let code = run_and_write(&cfg);
            if code == ExitCode::SUCCESS {
                println!("wrote {}", path.display());
            }
            code
        }
        Command::Verify { seed } => {
            let report = verify::run(&VerifyConfig::with_seed(seed));
            let mut stdout = io::stdout().lock();
            if writeln!(stdout, "{report}").is_err() {
                return ExitCode::from(EXIT_IO);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
    }
}
