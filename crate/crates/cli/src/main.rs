use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use juddian_cli::commands::{
    cmd_juddian, cmd_oscillator, cmd_plot, cmd_spectrum, cmd_verify, OscillatorType, Outcome, OutputFormat,
    SpectrumArgs,
};
use juddian_cli::CliError;
use juddian_core::rabi::{ModelParams, Units};

#[derive(Parser)]
#[command(name = "juddian", version, about = "Isolated exact solutions of the Rabi Hamiltonian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OscType {
    Displaced,
    Squeezed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Juddian points for N = 1..max-n
    Juddian {
        #[arg(long)]
        max_n: usize,
        /// Mode frequency ω
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Spin splitting ω₀
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parity-resolved spectrum over a coupling sweep
    Spectrum {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g_min: f64,
        #[arg(long, default_value_t = 0.8, allow_negative_numbers = true)]
        g_max: f64,
        #[arg(long, default_value_t = 201)]
        g_steps: usize,
        /// Maximum boson occupation M
        #[arg(long, default_value_t = 100)]
        cutoff: usize,
        /// Levels kept per parity
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
        /// Report eigenvalues of ω·H̃ instead of H̃
        #[arg(long)]
        unscaled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check order-N points against direct diagonalization
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        cutoff: usize,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
    },
    /// Displaced or squeezed oscillator spectrum against its closed form
    Oscillator {
        #[arg(long = "type", value_enum)]
        kind: OscType,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 100)]
        cutoff: usize,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// SVG figure from spectrum CSV and points JSON
    Plot {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        baselines: Switch,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Juddian {
            max_n,
            omega,
            omega0,
            format,
            out,
        } => {
            let params = ModelParams::new(omega, omega0, 0.0)?;
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            cmd_juddian(max_n, &params, format, out.as_deref())
        }
        Command::Spectrum {
            g_min,
            g_max,
            g_steps,
            cutoff,
            levels,
            omega,
            omega0,
            unscaled,
            out,
        } => {
            let params = ModelParams::new(omega, omega0, 0.0)?;
            let args = SpectrumArgs {
                g_min,
                g_max,
                g_steps,
                cutoff,
                levels,
                units: if unscaled { Units::Unscaled } else { Units::Scaled },
            };
            cmd_spectrum(&args, &params, out.as_deref())
        }
        Command::Verify {
            n,
            cutoff,
            omega,
            omega0,
        } => cmd_verify(n, cutoff, &ModelParams::new(omega, omega0, 0.0)?),
        Command::Oscillator {
            kind,
            lambda,
            cutoff,
            levels,
        } => {
            let kind = match kind {
                OscType::Displaced => OscillatorType::Displaced,
                OscType::Squeezed => OscillatorType::Squeezed,
            };
            cmd_oscillator(kind, lambda, cutoff, levels)
        }
        Command::Plot {
            spectrum,
            points,
            baselines,
            out,
        } => cmd_plot(&spectrum, points.as_deref(), matches!(baselines, Switch::On), &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
