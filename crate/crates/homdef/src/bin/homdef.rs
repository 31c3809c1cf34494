use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use homdef::commands::{
    cmd_cohomology, cmd_deform, cmd_rigidity, cmd_validate, CmdError, ReportDocument,
};

/// Exact calculator for twisted Lie-Rinehart structures: axioms,
/// multiderivation cohomology, and formal deformations.
#[derive(Parser)]
#[command(name = "homdef", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    /// Readable text on stdout; timing on stderr.
    Human,
    /// Canonical JSON: fixed field order, no timing, byte-stable.
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structure axioms (and any declared free-generator splitting)
    Validate {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
        /// Echoed into the report; no command draws randomness.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cohomology table of the deformation complex
    Cohomology {
        #[arg(long)]
        structure: PathBuf,
        /// Highest degree to compute (bounded by HOMDEF_DEGREE_CAP, default 4).
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a jet's deformation equations and optionally extend it
    Deform {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        jet: PathBuf,
        /// Extend the jet term by term up to this order while obstruction
        /// classes vanish.
        #[arg(long)]
        extend_to: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Second-degree rigidity evidence for a structure
    Rigidity {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cmd: &Cmd) -> Result<(ReportDocument, FormatArg), CmdError> {
    match cmd {
        Cmd::Validate { structure, format, seed } => {
            Ok((cmd_validate(structure, *seed)?, *format))
        }
        Cmd::Cohomology { structure, max_degree, format, seed } => {
            Ok((cmd_cohomology(structure, *max_degree, *seed)?, *format))
        }
        Cmd::Deform { structure, jet, extend_to, format, seed } => {
            Ok((cmd_deform(structure, jet, *extend_to, *seed)?, *format))
        }
        Cmd::Rigidity { structure, format, seed } => {
            Ok((cmd_rigidity(structure, *seed)?, *format))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli.command)));
    let code = match outcome {
        Err(_) => {
            eprintln!("error: internal failure");
            5
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Ok(Ok((doc, format))) => {
            match format {
                FormatArg::Machine => print!("{}", doc.machine()),
                FormatArg::Human => {
                    print!("{}", doc.human());
                    eprintln!("elapsed: {:?}", start.elapsed());
                }
            }
            if doc.passed() {
                0
            } else {
                3
            }
        }
    };
    std::process::exit(code);
}
