use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Map;

use periodicity::cli::{self, presets, AnalysisOptions, CliError};
use periodicity::series::RecurrenceSeries;

/// Periodicity-inequality checks for driven quantum systems.
///
/// Exit status: 0 no violation, 1 violation found, 2 bad input, 3 runtime failure.
#[derive(Parser)]
#[command(name = "periodicity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a config (or preset) and write series.csv and report.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print S_n weights; with --out also write coeffs.csv.
    Coeffs {
        #[arg(long)]
        n: usize,
        /// Large-n Gaussian form instead of the exact weights.
        #[arg(long)]
        gaussian: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run detection on a measured series (CSV k,R[,sigma][,shots] or JSON).
    Analyze {
        #[arg(long)]
        series: PathBuf,
        /// Zero-fill extrapolation up to this n.
        #[arg(long)]
        extrapolate_to: Option<usize>,
        /// Largest S_n evaluated directly (default: all available).
        #[arg(long)]
        sn_max: Option<usize>,
        /// Skip the optimized three-cycle record.
        #[arg(long)]
        no_optimized: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// List built-in experiments or print one as a config.
    Presets {
        #[arg(long)]
        list: bool,
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
    },
}

fn execute(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Run { config, out } => {
            let cfg = cli::load_config(&config)?;
            let res = cli::run(&cfg)?;
            res.write(&out)?;
            print!("{}", res.report.summary());
            Ok(res.report.exit_code())
        }
        Command::Coeffs { n, gaussian, out } => {
            let c = cli::coeffs(n, gaussian)?;
            print!("{}", c.render());
            if let Some(dir) = out {
                c.write(&dir)?;
            }
            Ok(0)
        }
        Command::Analyze { series, extrapolate_to, sn_max, no_optimized, out } => {
            let input = cli::read_series(&series)?;
            let opts = AnalysisOptions { sn_max, optimized: !no_optimized, extrapolate_to, truncation: None };
            let report = cli::analyze(&input, &opts)?;
            cli::io::ensure_dir(&out)?;
            let echo: &RecurrenceSeries = &input.series;
            cli::io::write_atomic(&out.join("series.csv"), &cli::io::series_csv(echo))?;
            report.write(&out)?;
            print!("{}", report.summary());
            Ok(report.exit_code())
        }
        Command::Presets { list, show } => {
            if let Some(name) = show {
                println!("{}", presets::preset(&name, &Map::new())?.to_json());
            } else if list {
                for (name, about) in presets::list() {
                    println!("{name:<14} {about}");
                }
            } else {
                return Err(CliError::Input("presets: pass --list or --show NAME".into()));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
