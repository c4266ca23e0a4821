//! `beamforge`: enumerate, verify and sweep stationary solutions of the
//! coupled extensible double-beam system.

use std::path::PathBuf;
use std::process::ExitCode;

use beamforge_core::inventory::DEFAULT_TOL_RES;
use beamforge_core::mode_sets::DEFAULT_TOL_COND;
use beamforge_core::single_beam::Model;
use beamforge_core::spectrum::DEFAULT_N_MAX;
use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<beamforge_core::Error> for CliError {
    fn from(e: beamforge_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "beamforge", version, about = "Closed-form stationary solutions of the coupled extensible double-beam system")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Axial load parameter β (negative compresses).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub varrho: f64,
    /// Coupling stiffness k.
    #[arg(long, global = true)]
    pub k: Option<f64>,
    /// dirichlet | scaled | power:p | file:<path>
    #[arg(long, global = true, default_value = "scaled")]
    pub spectrum: String,
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    pub nmax: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_COND)]
    pub tol_cond: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_RES)]
    pub tol_res: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mode sets E, E1, E2, E3 and the resonant sets B1, B2, T, B*.
    Sets,
    /// Unimodal solutions; with --csv an amplitude table over -β for one mode.
    Unimodal(UnimodalArgs),
    /// Full closed-form inventory with verification.
    Enumerate(EnumerateArgs),
    /// Single-beam reduction.
    Single {
        #[arg(long, default_value = "plain")]
        model: Model,
    },
    /// Brute-force Galerkin solve matched against the closed forms.
    Oracle {
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value_t = 2000)]
        starts: usize,
    },
    /// Branch table over a grid of loads -β.
    Sweep(SweepArgs),
    /// Physical beam data to (β, ϱ, k).
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
pub struct UnimodalArgs {
    /// Restrict to one mode.
    #[arg(long)]
    pub mode: Option<usize>,
    /// Grid start in -β (CSV only).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub from: f64,
    /// Grid end in -β (CSV only).
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Members to sample inline from each family.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Restrict the general bimodal scan to these pairs (`n1,n2`; repeatable).
    #[arg(long = "pairs", value_parser = parse_pair)]
    pub pairs: Vec<(usize, usize)>,
    /// Also write u(x), v(x) of every isolated solution to this CSV.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Tracked modes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub modes: Vec<usize>,
    /// Tracked pairs (`n1-n2` or `n1,n2`; repeatable).
    #[arg(long = "pairs", value_parser = parse_pair)]
    pub pairs: Vec<(usize, usize)>,
    /// Write a gnuplot script for the CSV (needs --out).
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long)]
    pub ell: f64,
    #[arg(long)]
    pub h: f64,
    #[arg(long = "E")]
    pub e_mod: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: f64,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d_axial: f64,
    #[arg(long)]
    pub kappa: f64,
    #[arg(long)]
    pub area: f64,
    #[arg(long)]
    pub rho: Option<f64>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected n1,n2 or n1-n2, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad mode index {t:?}"));
    let (a, b) = (n(a)?, n(b)?);
    if a == 0 || a >= b {
        return Err(format!("need 1 <= n1 < n2, got {a},{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("beamforge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
