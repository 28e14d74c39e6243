//! `gkz` command-line harness.
//!
//! Every subcommand renders one artifact (JSON or CSV) to stdout and, when
//! an output directory is configured, to `<outputDir>/<subcommand>.<ext>`.
//! Exit codes: 0 pass, 2 falsified or hypothesis violated, 1 error, 64 usage.

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod sampling;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Overrides, SessionConfig};
pub use error::{CliError, EXIT_ERROR, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "gkz", version, about = "Moment functionals, GKZ polynomials and weighted Hardy spaces")]
pub struct Cli {
    #[command(flatten)]
    pub session: SessionArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SessionArgs {
    /// Flat JSON session config; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Working precision in bits (at least 53).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Moment truncation K.
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Weight truncation N.
    #[arg(long, global = true)]
    pub weight_truncation: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the artifact here.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
}

/// Exactly one way to name a moment functional.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionalArgs {
    /// Point evaluation at a complex number, e.g. `0.3` or `0.1-0.2i`.
    #[arg(long)]
    pub point: Option<String>,
    /// Weighted point evaluations `w@z,…`, e.g. `0.5@0,0.5@0.5`.
    #[arg(long)]
    pub mixture: Option<String>,
    /// JSON moments file `[[re, im], …]` or `{"moments": …}`.
    #[arg(long)]
    pub moments: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct WeightArgs {
    /// `β ≡ 1`.
    #[arg(long)]
    pub classical: bool,
    /// `reciprocal` or `geometric:q`.
    #[arg(long)]
    pub donoghue: Option<String>,
    /// One positive decimal per line, first line 1.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for GKZ roots outside a radius.
    GkzScan {
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        nmax: usize,
    },
    /// CSV of defect and bound divided by n^k.
    DefectTable {
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long)]
        k: usize,
        /// Comma-separated degrees.
        #[arg(long)]
        n: String,
        /// Fixed radius; without it the per-n root radius is used.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Residuals of e_k(roots) against C(n,k) m_k.
    VietaCheck {
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
    },
    /// Shift-operator diagnostics for a weight sequence.
    HardyInfo {
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Recover ψ and φ from a sampled map and test Tf = ψ·(f∘φ).
    WcompVerify {
        /// JSON `{grid, degree, matrix}`.
        #[arg(long, conflicts_with = "builtin")]
        map: Option<PathBuf>,
        /// identity, affine-half, evaluation-at-zero or planted-zero.
        #[arg(long, required_unless_present = "map")]
        builtin: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Degree cap for built-in maps.
        #[arg(long, default_value_t = gkz_core::composition::DEFAULT_DEGREE)]
        degree: usize,
        /// Random test polynomials drawn from the seed.
        #[arg(long, default_value_t = 50)]
        polys: usize,
        /// Also scan every per-point functional and compare witnesses with φ.
        #[arg(long)]
        scan_witnesses: bool,
    },
    /// CSV of shift diagnostics for a Donoghue family over several N.
    DonoghueDemo {
        /// `reciprocal` or `geometric:q`.
        #[arg(long, default_value = "reciprocal")]
        kind: String,
        /// Comma-separated truncations; defaults to 64,256,1024 and weightTruncationN.
        #[arg(long)]
        sizes: Option<String>,
    },
}

/// One rendered output.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
    pub exit_code: i32,
}

impl Command {
    fn artifact_name(&self) -> &'static str {
        match self {
            Command::GkzScan { .. } => "gkz-scan.json",
            Command::DefectTable { .. } => "defect-table.csv",
            Command::VietaCheck { .. } => "vieta-check.json",
            Command::HardyInfo { .. } => "hardy-info.json",
            Command::WcompVerify { .. } => "wcomp-verify.json",
            Command::DonoghueDemo { .. } => "donoghue-demo.csv",
        }
    }
}

pub fn execute(cli: Cli) -> Result<Artifact, CliError> {
    let s = cli.session;
    let config = SessionConfig::resolve(
        s.config.as_deref(),
        Overrides {
            precision_bits: s.precision,
            truncation_k: s.truncation,
            weight_truncation_n: s.weight_truncation,
            seed: s.seed,
            output_dir: s.output_dir,
        },
    )?;
    let name = cli.command.artifact_name().to_string();
    let (contents, exit_code) = commands::dispatch(&config, cli.command)?;
    let artifact = Artifact {
        name,
        contents,
        exit_code,
    };
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(&artifact.name), &artifact.contents)?;
    }
    Ok(artifact)
}

/// Parses `args` (program name first), runs, and reports to `out`/`err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(cli) {
        Ok(artifact) => {
            let _ = out.write_all(artifact.contents.as_bytes());
            artifact.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "gkz: {e}");
            e.exit_code()
        }
    }
}
