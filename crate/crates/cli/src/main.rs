//! `w3cft`: tables, curves, orbit traces and the consistency suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 invariant failure.

mod commands;
mod output;
mod specfile;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] w3cft::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "w3cft", version, about = "Kinematics of W3 conformal field theories")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Emit exact rationals where a command would otherwise use decimals.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Bound on λ1+λ2 and μ1+μ2 for scans over representations.
    #[arg(long, default_value_t = 4, global = true)]
    pub cutoff: i64,
    /// Sampling grid `MIN:MAX:STEPS`.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kac table of the model with parameters P, P′.
    KacTable { p: i64, p_prime: i64 },
    /// Conformal dimensions along a one-parameter family of central charges.
    Curves {
        #[arg(value_enum)]
        which: commands::CurveKind,
    },
    /// Weyl orbits of shifted charges at b² = p/(p+1).
    Orbits {
        #[arg(value_enum, num_args = 0..)]
        fields: Vec<commands::OrbitField>,
        #[arg(long, default_value_t = 1)]
        p_min: i64,
        #[arg(long, default_value_t = 20)]
        p_max: i64,
    },
    /// Solve fusion constraints read from a TOML spec file.
    SpinSearch { spec: PathBuf },
    /// Fusion products and spectra.
    Fusion {
        #[command(subcommand)]
        op: commands::FusionOp,
    },
    /// Three-state Potts model: fields, or fusions with `--fusions`.
    Potts {
        #[arg(long)]
        fusions: bool,
    },
    /// Run the full consistency suite.
    Check,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let g = &cli.global;
    if g.cutoff < 1 {
        return Err(CliError::Usage(format!("--cutoff must be at least 1, got {}", g.cutoff)));
    }
    let (table, code) = match &cli.command {
        Command::KacTable { p, p_prime } => (commands::kac_table(*p, *p_prime)?, ExitCode::SUCCESS),
        Command::Curves { which } => (commands::curves(*which, g)?, ExitCode::SUCCESS),
        Command::Orbits { fields, p_min, p_max } => {
            (commands::orbits(fields, *p_min, *p_max)?, ExitCode::SUCCESS)
        }
        Command::SpinSearch { spec } => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", spec.display())))?;
            (commands::spin_search(&specfile::parse_spec(&text)?)?, ExitCode::SUCCESS)
        }
        Command::Fusion { op } => (commands::fusion(op, g)?, ExitCode::SUCCESS),
        Command::Potts { fusions } => (commands::potts(*fusions)?, ExitCode::SUCCESS),
        Command::Check => {
            let (table, ok) = commands::check();
            (table, if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    };
    match &g.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(g.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(g.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
