//! Command line syntax.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suites::Suite;

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_VAR: &str = "DESCENSO_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "descent",
    version,
    about = "Exact descent-category computations on rational chain complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homology dimensions of a chain complex.
    Homology { input: Option<PathBuf> },
    /// Descent cone of a chain map, with its inclusion and boundary map.
    Cone { input: Option<PathBuf> },
    /// Suspension of a chain complex.
    Suspend { input: Option<PathBuf> },
    /// Simplicial cylinder of two chain maps with a common source.
    Cyl {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
    /// Composite of two roofs, the first applied first.
    RoofCompose { first: PathBuf, second: PathBuf },
    /// Spectral sequence page of a filtered cochain complex.
    Ss {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        page: usize,
    },
    /// Décalage of a filtered cochain complex.
    Dec { input: Option<PathBuf> },
    /// Descent axioms, the comparison map and left fractions.
    VerifyAxioms(Sweep),
    /// Cones, triangles and the sign automorphism.
    VerifyTriangles(Sweep),
    /// Cogroup laws and stability.
    VerifyCogroup(Sweep),
    /// Spectral sequences, décalage and path objects.
    VerifyFiltered(Sweep),
    /// Every suite.
    Report(Sweep),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Sweep {
    /// Defaults to the environment variable DESCENSO_SEED, then 42.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub cases: Option<u64>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub max_deg: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub truncation: usize,
    /// Restrict to one suite of the command.
    #[arg(long)]
    pub only: Option<String>,
    /// Rerun the single case recorded in a counterexample file.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Where counterexamples of failing cases are written.
    #[arg(long, default_value = "counterexamples")]
    pub counterexamples: PathBuf,
}

impl Command {
    /// The suites a verification command runs.
    pub fn suites(&self) -> Option<(&Sweep, Vec<Suite>)> {
        match self {
            Command::VerifyAxioms(s) => {
                Some((s, vec![Suite::Axioms, Suite::Comparison, Suite::Fractions]))
            }
            Command::VerifyTriangles(s) => {
                Some((s, vec![Suite::Cone, Suite::Triangles, Suite::Minus]))
            }
            Command::VerifyCogroup(s) => Some((s, vec![Suite::Cogroup, Suite::Stability])),
            Command::VerifyFiltered(s) => Some((s, vec![Suite::Filtered])),
            Command::Report(s) => Some((s, Suite::ALL.to_vec())),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::Cone { .. } => "cone",
            Command::Suspend { .. } => "suspend",
            Command::Cyl { .. } => "cyl",
            Command::RoofCompose { .. } => "roof-compose",
            Command::Ss { .. } => "ss",
            Command::Dec { .. } => "dec",
            Command::VerifyAxioms(_) => "verify-axioms",
            Command::VerifyTriangles(_) => "verify-triangles",
            Command::VerifyCogroup(_) => "verify-cogroup",
            Command::VerifyFiltered(_) => "verify-filtered",
            Command::Report(_) => "report",
        }
    }
}
