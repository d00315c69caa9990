mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tct_core::checks::{ModularityMode, WitnessPolicy};
use tct_core::{Error, Limits};

/// Congruence lattices, type labels, pentagons and tails of finite algebras.
#[derive(Parser, Debug)]
#[command(name = "tct", version)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Largest power A^k (or S ≤ A²) to build.
    #[arg(long, global = true, env = "TCT_CAP_POWER", default_value_t = Limits::default().max_power)]
    cap_power: usize,
    /// Largest congruence lattice to build.
    #[arg(long, global = true, env = "TCT_CAP_CON", default_value_t = Limits::default().max_congruences)]
    cap_con: usize,
    /// Largest polynomial clone fragment to close.
    #[arg(long, global = true, env = "TCT_CAP_CLONE", default_value_t = Limits::default().max_clone)]
    cap_clone: usize,
    /// Largest universe for full unary polynomial enumeration.
    #[arg(long, global = true, env = "TCT_CAP_UNARY", default_value_t = Limits::default().max_unary_size)]
    cap_unary: usize,
    /// Highest arity for the tail-collapse check.
    #[arg(long, global = true, env = "TCT_ARITY_MAX", default_value_t = Limits::default().arity_max)]
    arity_max: usize,
    #[arg(long, global = true, env = "TCT_WITNESSES", value_enum, default_value_t = Witnesses::Canonical)]
    witnesses: Witnesses,
    #[arg(long, global = true, env = "TCT_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, env = "TCT_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "TCT_OUT")]
    out: Option<PathBuf>,
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Witnesses {
    Canonical,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Congruence lattice and its covers.
    Con { file: PathBuf },
    /// Compare the lattice against brute-force partition enumeration.
    OracleCon { file: PathBuf },
    /// Type label and minimal sets of every cover.
    Label { file: PathBuf },
    /// Minimal sets of a quotient δ < θ.
    Minsets { file: PathBuf, delta: String, theta: String },
    /// Pentagons, shrunk to a labeled critical cover.
    Pentagons { file: PathBuf },
    /// Covers with tailed minimal sets.
    Tails { file: PathBuf },
    /// Check that pentagons of type 2 to 5 have tails bridged by γ.
    PentagonTails { file: PathBuf },
    /// Build and verify pentagon certificates from tailed minimal sets.
    Witness {
        file: PathBuf,
        /// Lower congruence of the cover to use.
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        /// Upper congruence of the cover to use.
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        /// Tail element.
        #[arg(long)]
        t: Option<usize>,
        /// Pair in β|B − α|B, as `a,b`.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Bounded check that polynomials sending (t,…,t) into the body collapse β|B into α.
    TailCollapse { file: PathBuf },
    /// Evaluate the modularity and distributivity implication chains.
    ModularityReport {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Run every check over a corpus.
    Sweep {
        /// Number of sampled 3-element groupoids.
        #[arg(long, default_value_t = 500)]
        groupoids: usize,
        /// Number of sampled algebras with up to 5 elements.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        no_curated: bool,
        #[arg(long)]
        no_two_element: bool,
        /// Extra algebra files to include.
        #[arg(long = "include")]
        include: Vec<PathBuf>,
    },
    /// Re-verify a stored pentagon certificate.
    Verify { certificate: PathBuf },
}

/// Echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    limits: Limits,
    witnesses: Witnesses,
    seed: u64,
    format: Format,
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, Error> {
        let limits = Limits {
            max_power: self.cap_power,
            max_congruences: self.cap_con,
            max_clone: self.cap_clone,
            max_unary_size: self.cap_unary,
            arity_max: self.arity_max,
            ..Limits::default()
        };
        limits.validate()?;
        Ok(RunConfig {
            limits,
            witnesses: self.witnesses,
            seed: self.seed,
            format: self.format,
        })
    }
}

impl RunConfig {
    fn policy(&self) -> WitnessPolicy {
        match self.witnesses {
            Witnesses::Canonical => WitnessPolicy::Canonical,
            Witnesses::All => WitnessPolicy::All,
        }
    }
}

impl From<Mode> for ModularityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Auto => ModularityMode::Auto,
            Mode::Exhaustive => ModularityMode::Exhaustive,
            Mode::Sampled => ModularityMode::Sampled,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        e if e.is_cap() => 2,
        Error::LabelMismatch(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let result = cli
        .run
        .config()
        .and_then(|cfg| commands::run(&cfg, &cli.command, echo).map(|out| (cfg, out)));
    let code = match result {
        Ok((cfg, out)) => {
            let text = match cfg.format {
                Format::Json => out.doc.to_json(),
                Format::Text => out.text,
                Format::Dot => match out.dot {
                    Some(d) => d,
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(3);
                    }
                },
            };
            let written = match &cli.run.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            out.doc.verdict.exit_code() as u8
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    };
    if cli.run.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
