//! `nimrep`: command-line front end for nimrep-core.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "nimrep", version, about = "Fusion rings, NIM-reps, module-category data and modular invariants")]
struct Cli {
    /// Run searches on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyFamily {
    Group,
    Neargroup,
    Su2half,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Build a fusion ring from a family spec and write its JSON.
    Ring {
        /// group:<g> | neargroup:<g>:<alpha> | su2:<l> | su2half:<l> | ising
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify NIM-reps of a ring family.
    #[command(alias = "classify")]
    Nimreps {
        #[arg(long, value_enum)]
        family: ClassifyFamily,
        /// Builtin group spec (Z_n, Z_a x Z_b, D_n) for the group and near-group families.
        #[arg(long)]
        group: Option<String>,
        /// Ring family spec or ring JSON file (su2half and brute families).
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        alpha: Option<u32>,
        /// Largest orbit count for the near-group search.
        #[arg(long, default_value_t = 2)]
        max_orbits: usize,
        /// Largest dimension for the brute-force search.
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Entry bound (default derived from FP dimensions or the near-group constraints).
        #[arg(long)]
        bound: Option<u32>,
        /// Near-group: use the one- and two-orbit closed forms instead of searching.
        #[arg(long)]
        closed_form: bool,
        /// Brute force: include reducible NIM-reps.
        #[arg(long)]
        include_reducible: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a group, ring, NIM-rep or near-group solution file.
    Verify { file: PathBuf },
    /// Decide whether two NIM-reps are equivalent up to basis permutation.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Item index within each file when it holds a list (one or two values).
        #[arg(long, num_args = 1..=2)]
        index: Vec<usize>,
    },
    /// Render a NIM-rep as a Graphviz graph.
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Base points and algebra objects of NIM-reps.
    Algebras {
        #[arg(long)]
        nimrep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Modular invariants, exponents and the invariant/NIM-rep comparison.
    Modular {
        /// Catalog name or `all`.
        #[arg(long, default_value = "all")]
        mtc: String,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check a family classification against brute force.
    Oracle {
        /// group:<g> | neargroup:<g>:<alpha> | su2half:<l>
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_orbits: usize,
    },
}

/// Failure classes mapped to exit codes.
pub enum Failure {
    Validation(String),
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Usage(msg) => {
                eprintln!("usage error: {msg}");
                eprintln!("run `nimrep <subcommand> --help` for the grammar");
                ExitCode::from(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parallel = !cli.sequential;
    let result = match cli.command {
        Command::Ring { family, out } => commands::ring(&family, out.as_deref()),
        Command::Nimreps {
            family,
            group,
            ring,
            alpha,
            max_orbits,
            max_dim,
            bound,
            closed_form,
            include_reducible,
            format,
            out,
        } => commands::nimreps(commands::NimrepsArgs {
            family,
            group,
            ring,
            alpha,
            max_orbits,
            max_dim,
            bound,
            closed_form,
            include_reducible,
            format,
            out,
            parallel,
        }),
        Command::Verify { file } => commands::verify(&file),
        Command::Equiv { a, b, index } => commands::equiv(&a, &b, &index),
        Command::Graph { file, index, out } => commands::graph(&file, index, out.as_deref()),
        Command::Algebras { nimrep, out } => commands::algebras(&nimrep, out.as_deref()),
        Command::Modular { mtc, bound, report, out } => commands::modular(&mtc, bound, report, out.as_deref(), parallel),
        Command::Oracle { ring, max_dim, max_orbits } => commands::oracle(&ring, max_dim, max_orbits, parallel),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
