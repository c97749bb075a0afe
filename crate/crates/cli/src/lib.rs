//! Command-line front end for `cmdegen-core`.
//!
//! Every command prints one JSON report on stdout and a short human summary
//! on stderr. Exit codes: 0 yes/valid, 1 no/invalid (with certificate),
//! 2 unknown, 3 input or usage error.

pub mod bundled;
mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "CMDEGEN_SEED";

#[derive(Parser, Debug)]
#[command(name = "cmdegen", version, about = "Decide, certify or refute degenerations of modules over artinian Gorenstein algebras")]
pub struct Cli {
    /// Seed for every randomized step; defaults to $CMDEGEN_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure-constant algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Necessary invariant conditions for M to degenerate to N.
    Invariants {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Fitting ideal containments F_i(M) ⊇ F_i(N).
    FittingTest {
        #[arg(long = "module-m", visible_alias = "m")]
        m: PathBuf,
        #[arg(long = "module-n", visible_alias = "n")]
        n: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_i: usize,
    },
    /// Exact-sequence witnesses.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Full decision pipeline: invariants, Fitting ideals, witness search.
    Degenerates {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Stable degenerations.
    #[command(subcommand)]
    Stable(StableCmd),
    /// Jordan types over k[t]/(t^n).
    #[command(subcommand)]
    Jordan(JordanCmd),
    /// Matrix factorizations.
    #[command(subcommand)]
    Mf(MfCmd),
    /// Run a bundled example.
    Examples {
        name: ExampleName,
        /// Also write the example's input files into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub m: PathBuf,
    #[arg(long)]
    pub n: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 4)]
    pub max_i: usize,
    /// Random samples per candidate Z.
    #[arg(long, default_value_t = cmdegen_core::witness::DEFAULT_SAMPLES_PER_Z)]
    pub samples: usize,
    /// Largest dim Z tried; defaults to dim M + dim N.
    #[arg(long)]
    pub max_z_dim: Option<usize>,
    /// Random nonzero parameters at which the generic fiber is checked.
    #[arg(long, default_value_t = cmdegen_core::witness::DEFAULT_FAMILY_TRIALS)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = CatalogKind::Default)]
    pub catalog: CatalogKind,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    /// Sums of k, A/m^j, A, M and N.
    Default,
    /// Every Jordan type (only for k[t]/(t^n)).
    Partitions,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Check the axioms and report radical, socle and Gorenstein data.
    Validate {
        #[arg(long)]
        algebra: PathBuf,
        /// Random associativity/commutativity spot checks.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    Verify {
        #[arg(long)]
        witness: PathBuf,
    },
    /// The family coker(phi, t + psi) and its fiber checks.
    BuildFamily {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, default_value_t = cmdegen_core::witness::DEFAULT_FAMILY_TRIALS)]
        trials: usize,
    },
    Search {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum StableCmd {
    Check {
        #[command(flatten)]
        pair: PairArgs,
        /// Largest number of free summands added to either side.
        #[arg(long, default_value_t = 2)]
        pad: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum JordanCmd {
    Order {
        #[arg(long)]
        n: usize,
        /// Parts, comma separated; "0" for the zero module.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        stable: bool,
    },
    Hasse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Knorrer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MfCmd {
    /// Check phi psi = psi phi = f I in the polynomial ring.
    Verify {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Substitutions such as t=0, applied to phi, psi and f first.
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    /// F_0 obstruction over k[x,y]/(x^2,y^2).
    Riedtmann,
    /// Deformed matrix factorization of the cusp.
    CuspMf,
    /// Stable Hasse diagram for n = 3 with Knörrer labels.
    JordanN3,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(0),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let seed = match resolve_seed(cli.seed) {
        Ok(s) => s,
        Err(msg) => return Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    commands::dispatch(cli.command, seed)
}
