mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clustersing::groebner::DEFAULT_MAX_PAIRS;
use clustersing::quiver::DEFAULT_FINITE_TYPE_BUDGET;
use clustersing::seed::DEFAULT_EXPLORATION_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "clustersing", version, about = "Exact computations on cluster algebras of finite type")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Text,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Pair-reduction budget of each Gröbner basis computation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PAIRS)]
    pub max_pairs: usize,
    /// Keep wall-clock timings in JSON reports (they make output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

/// A Dynkin type and rank, e.g. `--type D --rank 5`. Fixed-rank types need no rank.
#[derive(Args, Debug, Clone)]
pub struct TypeRank {
    /// One of A, B, C, D, E6, E7, E8, F4, G2, Star.
    #[arg(long = "type")]
    pub kind: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OptionalTypeRank {
    /// One of A, B, C, D, E6, E7, E8, F4, G2, Star.
    #[arg(long = "type")]
    pub kind: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a quiver, exchange matrix or seed along a vertex sequence.
    Mutate {
        #[command(flatten)]
        seed: OptionalTypeRank,
        /// JSON file holding a quiver, matrix or seed (`-` for standard input).
        #[arg(long, conflicts_with = "kind")]
        input: Option<PathBuf>,
        /// 1-based vertices, comma separated.
        #[arg(long, value_delimiter = ',')]
        sequence: Vec<usize>,
        /// Field characteristic for seed entries (0 for the rationals).
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Explore the exchange graph up to relabelling and check the Laurent property.
    ExchangeGraph {
        #[command(flatten)]
        seed: OptionalTypeRank,
        #[arg(long, conflicts_with = "kind")]
        input: Option<PathBuf>,
        /// Maximal number of seeds visited.
        #[arg(long, default_value_t = DEFAULT_EXPLORATION_BUDGET)]
        budget: usize,
        /// Extra Laurent checks along random sequences on random acyclic quivers.
        #[arg(long, default_value_t = 0)]
        random_runs: usize,
        #[arg(long, default_value_t = 20_240_611)]
        rng_seed: u64,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        /// Finite-type probe budget for the input matrix.
        #[arg(long, default_value_t = DEFAULT_FINITE_TYPE_BUDGET)]
        finite_type_budget: usize,
    },
    /// Reduced presentation of a cluster algebra.
    Present {
        #[command(flatten)]
        seed: TypeRank,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Print the lower-bound presentation with its Gröbner self-test instead.
        #[arg(long, conflicts_with = "audit")]
        lower_bound: bool,
        /// Eliminate the lower-bound presentation and compare with the reduced one.
        #[arg(long)]
        audit: bool,
    },
    /// Singular locus by the Jacobian criterion, compared with the predicted components.
    SingularLocus {
        #[command(flatten)]
        seed: TypeRank,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Also enumerate all rational points over the prime field and compare.
        #[arg(long)]
        brute_force: bool,
    },
    /// Check the singularity classification over types, ranks and characteristics.
    VerifyTheoremA {
        /// Comma-separated types; all finite types by default.
        #[arg(long, value_delimiter = ',')]
        types: Vec<String>,
        /// Largest rank for the families A to D; the default ranks otherwise.
        #[arg(long)]
        max_rank: Option<usize>,
        /// Characteristics, 0 for the rationals.
        #[arg(long, value_delimiter = ',', default_value = "0,2,3,5")]
        chars: Vec<u64>,
    },
    /// Check the star-quiver components, certificates and local form.
    VerifyTheoremC {
        #[arg(long, value_delimiter = ',', default_value = "4,5")]
        ns: Vec<usize>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Run the blowup script of a presentation and report the chart tree.
    Resolve {
        #[command(flatten)]
        seed: TypeRank,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Continuant polynomials: construction, identities and deformation verdicts.
    Continuant {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "deformation")]
        identities: bool,
        #[arg(long)]
        deformation: bool,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        chars: Vec<u64>,
        /// Constants added to the continuant, for `--deformation`.
        #[arg(long, value_delimiter = ',', default_value = "1,-1", allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Start the HTTP session service.
    Serve {
        #[arg(long, env = clustersing_service::PORT_ENV, default_value_t = clustersing_service::DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 1024)]
        capacity: usize,
        #[arg(long, default_value_t = 60)]
        ttl_minutes: u64,
        #[arg(long, default_value_t = DEFAULT_FINITE_TYPE_BUDGET)]
        finite_type_budget: usize,
        /// Allowed browser origins.
        #[arg(long, value_delimiter = ',', default_value = "http://localhost:5173,http://127.0.0.1:5173")]
        cors_origin: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
