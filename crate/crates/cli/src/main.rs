use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qg_cli::commands::{self, conclude, CmdError, Method, Options, Status};
use qg_core::tenscore::Tolerance;

#[derive(Parser)]
#[command(name = "qg", version, about = "Verify and analyse finite quantum groups")]
struct Cli {
    /// Tolerance for both the absolute and relative thresholds.
    #[arg(long, global = true, env = "QG_TOL")]
    tol: Option<f64>,
    /// Seed for the randomized numerical steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum HaarMethod {
    Solve,
    Cesaro,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom applicable to the spec.
    Verify { file: PathBuf },
    /// Compute the Haar state.
    Haar {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "solve")]
        method: HaarMethod,
        /// Maximum number of doubling steps for the Cesàro means.
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Decompose a corepresentation into irreducibles.
    Decompose {
        file: PathBuf,
        /// A corepresentation named in the file, `regular`, or `defining`
        /// for permutation groups.
        #[arg(long, default_value = "regular")]
        corep: String,
    },
    /// Build the dual discrete quantum group and its reports.
    Dual {
        file: Option<PathBuf>,
        /// Block data given only by Q matrices.
        #[arg(long, conflicts_with = "file")]
        truncated: Option<PathBuf>,
    },
    /// Normal forms and coproduct checks for a presentation.
    Rewrite {
        file: PathBuf,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        degree_cap: Option<usize>,
    },
    /// Validate a magic unitary and evaluate the quantum permutation relations.
    Magic { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Haar { .. } => "haar",
            Command::Decompose { .. } => "decompose",
            Command::Dual { .. } => "dual",
            Command::Rewrite { .. } => "rewrite",
            Command::Magic { .. } => "magic",
        }
    }
}

fn run(cli: &Cli, opts: Options) -> Result<(serde_json::Value, bool), CmdError> {
    match &cli.command {
        Command::Verify { file } => commands::verify(&commands::load(file)?, opts),
        Command::Haar { file, method, max_iter } => {
            let method = match method {
                HaarMethod::Solve => Method::Solve,
                HaarMethod::Cesaro => Method::Cesaro,
                HaarMethod::Both => Method::Both,
            };
            commands::haar(&commands::load(file)?, method, *max_iter, opts)
        }
        Command::Decompose { file, corep } => {
            commands::decompose_cmd(&commands::load(file)?, corep, opts)
        }
        Command::Dual { file, truncated } => {
            let path = truncated
                .as_ref()
                .or(file.as_ref())
                .ok_or_else(|| CmdError::Input("dual needs a file or --truncated".into()))?;
            let input = commands::load(path)?;
            if truncated.is_some() && input.kind != "irrdata" {
                return Err(CmdError::Input("--truncated expects an irrdata spec".into()));
            }
            commands::dual(&input, opts)
        }
        Command::Rewrite { file, expr, degree_cap } => {
            commands::rewrite(&commands::load(file)?, expr.as_deref(), *degree_cap, opts)
        }
        Command::Magic { file } => commands::magic(&commands::load(file)?, opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Input as u8 } else { 0 });
        }
    };
    let name = cli.command.name();
    let tol = match cli.tol.map(Tolerance::uniform).transpose() {
        Ok(t) => t.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Input as u8);
        }
    };
    let opts = Options { tol, seed: cli.seed };
    let (status, out, err) = conclude(run(&cli, opts), name);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(status as u8)
}
