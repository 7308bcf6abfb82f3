mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metasplit::padic::DEFAULT_PRECISION;

#[derive(Parser, Debug)]
#[command(name = "metasplit", version, about = "Exact checks for metaplectic splittings over p-adic fields")]
pub struct Cli {
    /// Working precision in p-adic digits.
    #[arg(long, global = true, env = "METASPLIT_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,

    /// Print compact instead of indented JSON.
    #[arg(long, global = true)]
    pub compact: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadratic Hilbert symbol (x, y) over Q_p or Q_p(sqrt d).
    Hilbert(HilbertArgs),
    /// Metaplectic cocycle beta(g1, g2) over Q_p(sqrt d).
    Cocycle(CocycleArgs),
    /// Run a verification suite and print its JSON report.
    Verify(VerifyArgs),
    /// Quaternion division algebra over Q_p.
    Quaternion(QuaternionArgs),
    /// Cohomology computations.
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[arg(long)]
    pub p: u32,
    /// Work over Q_p(sqrt d) instead of Q_p.
    #[arg(long, allow_hyphen_values = true)]
    pub ext: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, value_enum, default_value_t = BackendChoice::Auto)]
    pub backend: BackendChoice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BackendChoice {
    /// Closed form where available, otherwise the cached table.
    Auto,
    /// The conic-solvability oracle.
    Conic,
}

#[derive(Args, Debug)]
pub struct CocycleArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub ext: i64,
    /// Matrix as `a,b;c,d` with element literals.
    #[arg(long, allow_hyphen_values = true)]
    pub g1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
    /// Cocycle to evaluate; defaults to sl2 when both matrices have determinant 1.
    #[arg(long, value_enum)]
    pub group: Option<GroupChoice>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GroupChoice {
    Sl2,
    Gl2,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    pub suite: String,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub ext: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum)]
    pub group: Option<GroupChoice>,
    /// Override every sampled check's count.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct QuaternionArgs {
    #[arg(long)]
    pub p: u32,
    /// Structure constants `a,b`; defaults to the standard division algebra.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 2)]
    pub constants: Option<Vec<i64>>,
    #[command(subcommand)]
    pub action: QuaternionAction,
}

#[derive(Subcommand, Debug)]
pub enum QuaternionAction {
    /// Embedding of Q_p(sqrt d) through D or through M2(Q_p).
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, value_enum, default_value_t = RouteChoice::ViaD)]
        route: RouteChoice,
    },
    /// Conjugator between the two embeddings of Q_p(sqrt d).
    Conjugator {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Certify the cocycle as a coboundary on sampled pairs from Q_p(sqrt d)^x.
    SplitTorus {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Include every sampled element and pair check in the output.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RouteChoice {
    ViaD,
    ViaM2f,
}

#[derive(Subcommand, Debug)]
pub enum CohomologyCommand {
    /// H^2 of F_{q^2}^x x| Z.
    Gprime {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = CoeffChoice::Z2)]
        coeffs: CoeffChoice,
    },
    /// Restriction on H^1 of the character group to the index-2 subgroup.
    LemmaL {
        #[arg(long)]
        q: u64,
    },
    /// H^2(G, Z/2) by linear algebra for a small finite group.
    Brute {
        /// `cyclic:n`, `product:cyclic:n,cyclic:m` or `semidirect:q[:m]`.
        #[arg(long)]
        group: String,
        /// Also print cocycles representing a basis.
        #[arg(long)]
        generators: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CoeffChoice {
    Z2,
    Qz,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    let print = |v: &serde_json::Value| {
        let s = if cli.compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
        println!("{}", s.expect("JSON values serialize"));
    };
    match outcome {
        Ok(out) => {
            print(&out.json);
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            print(&e.to_json());
            eprintln!("error in {}: {}", e.module, e.error);
            ExitCode::from(e.exit_code())
        }
    }
}
