use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "berkdyn",
    version,
    about = "Potential theory and parameter-space dynamics on the Berkovich line over Q_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Prime p, used when the input JSON has no "prime" field.
    #[arg(long, global = true)]
    pub prime: Option<u64>,

    /// Input JSON file, or `-` for standard input.
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Iteration level (or iteration budget for `mandelbrot` at a point).
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Skeleton JSON file, {"points": [...]}.
    #[arg(long, global = true)]
    pub skeleton: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Add decimal renderings next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Inline {
    /// Inline input JSON, used when --input is absent.
    pub json: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Level-n Green function of a family at a point or on a skeleton.
    Green(Inline),
    /// Approximate activity measure and its tail bound.
    Activity(Inline),
    /// Pullback of a Dirac mass at a type-2/3 point along a polynomial.
    Pullback(Inline),
    /// Escape test at a classical parameter, or boundedness profile on a skeleton.
    Mandelbrot(Inline),
    /// Equilibrium measure of a compact region, with an energy-minimization check.
    Equilibrium(Inline),
    /// Logarithmic capacity of a compact region.
    Capacity(Inline),
    /// Convex hull of a finite point set.
    Hull(Inline),
    /// Built-in worked examples.
    #[command(subcommand)]
    Example(Example),
}

#[derive(Subcommand, Debug)]
pub enum Example {
    /// The family z^2 + t with marked point 0.
    Quadratic,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.render().to_string();
            println!("{}", json!({"error": "usage", "detail": detail.trim_end()}));
            return ExitCode::from(2);
        }
    };
    let (code, out) = commands::run(&cli);
    print!("{out}");
    ExitCode::from(code)
}
