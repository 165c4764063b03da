use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "glshp",
    version,
    about = "Least-square homotopy perturbation solver for space-fractional wave equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the ansatz and write a report or a solution grid.
    Solve(SolveArgs),
    /// Certify basis independence at one point.
    Wronskian(WronskianArgs),
    /// Compare the functional at the HPM start and at the fit over an alpha sweep.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Built-in example.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub example: Option<u32>,
    /// Problem declaration file.
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[command(flatten)]
    pub source: Source,
    /// Order alpha in (0, 1]; defaults to 1 for examples and to the file's value otherwise.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Order beta in (0, 1]; defaults to alpha for examples.
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub nx: usize,
    pub nt: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(['x', 'X']).ok_or("expected NxM")?;
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v}: {e}"));
        let g = Grid {
            nx: parse(a)?,
            nt: parse(b)?,
        };
        if g.nx < 2 || g.nt < 2 {
            return Err("grid needs at least 2 points per side".into());
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    /// Sweep values rounded to 12 decimals so `0.89:1.0:0.01` ends exactly at 1.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| ((self.start + k as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err("expected start:stop:step".into());
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v}: {e}"));
        let sw = Sweep {
            start: num(a)?,
            stop: num(b)?,
            step: num(c)?,
        };
        let unit = |v: f64| v > 0.0 && v <= 1.0;
        if !unit(sw.start) || !unit(sw.stop) || sw.stop < sw.start {
            return Err("sweep bounds must satisfy 0 < start <= stop <= 1".into());
        }
        if !(sw.step.is_finite() && sw.step > 0.0) {
            return Err("sweep step must be positive and finite".into());
        }
        Ok(sw)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Emit the fitted solution on an NxM lattice over the unit square.
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv writes the grid, json the report; csv when --grid is given, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Classify the fit as an epsilon-approximate solution.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Wronskian point x.
    #[arg(long, requires = "t")]
    pub x: Option<f64>,
    /// Wronskian point t.
    #[arg(long, requires = "x")]
    pub t: Option<f64>,
    /// Multi-start seed.
    #[arg(long, default_value_t = glshp::lsq::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WronskianArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Point x; the problem's witness when absent.
    #[arg(long, requires = "t")]
    pub x: Option<f64>,
    /// Point t.
    #[arg(long, requires = "x")]
    pub t: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Alpha values start:stop:step.
    #[arg(long)]
    pub sweep: Sweep,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Multi-start seed.
    #[arg(long, default_value_t = glshp::lsq::DEFAULT_SEED)]
    pub seed: u64,
}
