use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use motorctl::ControllerKind;
use motorctl_cli::commands::{cmd_compare, cmd_gains_surface, cmd_metrics, cmd_simulate};
use motorctl_cli::{CliError, Overrides, RunManifest, Settings};

#[derive(Parser)]
#[command(name = "motorctl", version, about = "DC motor speed control: open loop, PID and fuzzy self-tuning PID")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its trace
    Simulate(RunArgs),
    /// Run open loop, PID and fuzzy PID and tabulate their step metrics
    Compare(RunArgs),
    /// Tabulate the fuzzy gain schedule over the (e, de) plane
    GainsSurface(RunArgs),
    /// Compute step metrics of a trace CSV
    Metrics {
        trace: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Config file of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG plots
    #[arg(long)]
    svg: bool,
    /// Also write trace CSVs
    #[arg(long)]
    csv: bool,
    /// Sample period in seconds
    #[arg(long)]
    dt: Option<f64>,
    /// Speed setpoint
    #[arg(long, allow_negative_numbers = true)]
    setpoint: Option<f64>,
    /// open-loop, pid or fuzzy-pid
    #[arg(long)]
    controller: Option<ControllerKind>,
}

impl RunArgs {
    fn manifest(&self) -> Result<RunManifest, CliError> {
        let (mut settings, base) = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
                (Settings::parse(&text)?, base)
            }
            None => (Settings::default(), PathBuf::from(".")),
        };
        Overrides {
            dt: self.dt,
            setpoint: self.setpoint,
            controller: self.controller,
            out_dir: self.out.clone(),
            csv: self.csv,
            svg: self.svg,
        }
        .apply(&mut settings)?;
        RunManifest::from_settings(settings, &base)
    }
}

fn print_written(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => print_written(&cmd_simulate(&args.manifest()?)?),
        Command::Compare(args) => {
            let (cmp, written) = cmd_compare(&args.manifest()?)?;
            print!("{cmp}");
            print_written(&written);
        }
        Command::GainsSurface(args) => print_written(&[cmd_gains_surface(&args.manifest()?)?]),
        Command::Metrics { trace } => print!("{}", cmd_metrics(&trace)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("motorctl: {e}");
            ExitCode::FAILURE
        }
    }
}
