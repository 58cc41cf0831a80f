use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermite_deform::{Coeff, FloatCoeff, Status};

mod commands;
mod manifest;
mod output;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "hermite-deform", version)]
#[command(about = "Complex Hermite polynomials, GL(2,C)-deformed families and two-boson operator checks")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Arithmetic backend
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,

    /// Shorthand for `--backend float`
    #[arg(long, global = true)]
    float: bool,

    /// Comparison tolerance for the float backend
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Worker threads for parallel table and suite construction
    #[arg(long, global = true, env = "HERMITE_DEFORM_THREADS")]
    threads: Option<usize>,

    /// Run the full verification battery and print it as one JSON document
    #[arg(long)]
    seed_manifest: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

/// Where the deformation matrix comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct GroupArgs {
    /// Hermitian family parameter, e.g. 3/5
    #[arg(long, allow_hyphen_values = true, conflicts_with = "g")]
    pub alpha: Option<String>,

    /// Matrix entries g11 g12 g21 g22, each "p/q" or "a+bi"
    #[arg(long, num_args = 4, value_names = ["G11", "G12", "G21", "G22"], allow_hyphen_values = true)]
    pub g: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complex Hermite polynomial H_{m,n}, or the whole table up to --Lmax
    Hermite {
        m: Option<u32>,
        n: Option<u32>,
        #[arg(long = "Lmax", default_value_t = 4)]
        lmax: u32,
    },
    /// Physicists' Hermite polynomial H_n, or all up to --Lmax
    RealHermite {
        n: Option<u32>,
        #[arg(long = "Lmax", default_value_t = 6)]
        lmax: u32,
    },
    /// Deformed polynomial H^g_{m,n}
    Deform {
        #[command(flatten)]
        group: GroupArgs,
        m: u32,
        n: u32,
    },
    /// Representation matrix M(g, L)
    Repmat {
        #[command(flatten)]
        group: GroupArgs,
        level: u32,
    },
    /// Dual family at level L, built from (g*)^-1
    Dual {
        #[command(flatten)]
        group: GroupArgs,
        level: u32,
    },
    /// Generating-function coefficients k! l! [u^k u~^l]
    Genfun {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 4)]
        order: u32,
        /// Product generating function of real Hermite polynomials
        #[arg(long, conflicts_with_all = ["alpha", "g"])]
        real: bool,
    },
    /// Run a verification suite; exit code 0 iff it passes
    Verify(VerifyArgs),
    /// Structure constants of the bilinear generators
    LieReport {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = LieBasis::Z)]
        basis: LieBasis,
        /// Formal table at theta = 1 (float)
        #[arg(long, conflicts_with = "alpha")]
        theta_one: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthonormal,
    Biorth,
    Repmat,
    Eigen,
    Intertwine,
    Ncqm,
    Lie,
    Qp,
    Routes,
    Genfun,
    DualScaling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LieBasis {
    /// Undeformed J1..J4
    Undeformed,
    /// J1^alpha..J4^alpha
    Alpha,
    /// X1, X2, X3, Y
    X,
    /// Rescaled Z1, Z2, Z3, Y
    Z,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long = "Lmax")]
    pub lmax: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Lie suite at the theta = 1 boundary (float)
    #[arg(long)]
    pub theta_one: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size thread pool: {e}");
        }
    }
    let backend = if cli.float { Backend::Float } else { cli.backend };

    let result = if cli.seed_manifest {
        Ok(manifest::battery())
    } else if let Some(cmd) = &cli.command {
        match backend {
            Backend::Exact => commands::run::<Coeff>(cmd, 0.0),
            Backend::Float => commands::run::<FloatCoeff>(cmd, cli.tol),
        }
    } else {
        eprintln!("error: a subcommand or --seed-manifest is required (see --help)");
        return ExitCode::from(2);
    };

    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match out.render(cli.format) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match out.status {
        None | Some(Status::Pass) => ExitCode::SUCCESS,
        Some(Status::Fail) => ExitCode::from(1),
        Some(Status::Error) => ExitCode::from(2),
    }
}
