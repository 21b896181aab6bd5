//! Command-line front end. [`run`] never touches the process; `main` prints
//! the returned [`CommandOutcome`] and exits with its code.

mod commands;
mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A failure before or instead of an answer.
#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<bfshvs::Error> for Failure {
    fn from(e: bfshvs::Error) -> Self {
        use bfshvs::Error::*;
        let code = match e {
            Structure(_) | Domain(_) | SpaceMismatch | UnknownParameter(_) => EXIT_INPUT,
            Precondition(_)
            | Hypothesis(_)
            | Capacity { .. }
            | ConstructionStuck { .. }
            | DivisionHypothesis { .. }
            | Oracle(_) => EXIT_REFUSED,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bfshvs",
    version,
    about = "Finite hypervector spaces and bipolar fuzzy soft sets"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Iff1,
    Levels,
    Combo,
    Scalarsum,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Shift,
    Scale,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check H1..H5 and the srd, sld and invertible flags.
    Check {
        file: PathBuf,
        #[arg(long)]
        space: String,
    },
    /// Decide whether a bfs set is a bfs-hvs.
    CheckBfs {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
    },
    /// Print the (alpha, beta)-level cut of every parameter.
    Level {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Print the subhyperspace spanned by a set of vectors.
    Span {
        file: PathBuf,
        #[arg(long)]
        space: String,
        /// Comma-separated vector ids.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Sum of two bfs sets, as `.hvs` text.
    Sum {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long)]
        with: String,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Scalar product `b o G`, as `.hvs` text.
    Scale {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        /// Field element id.
        #[arg(long, allow_hyphen_values = true)]
        scalar: String,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Negation `-G`, as `.hvs` text.
    Negate {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Smallest bfs-hvs containing a bfs set, with its shell trace.
    Generate {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Normalize a bfs-hvs.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        bfs: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Shift the negative pole by `-1 + G⁻(0)` instead of `-1 - G⁻(0)`.
        #[arg(long)]
        literal: bool,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Run the seeded checker-equivalence and property suite.
    Verify {
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Comma-separated positive grade levels.
        #[arg(long, default_value = "0,1/2,1")]
        grid_pos: String,
        /// Comma-separated negative grade levels.
        #[arg(long, default_value = "-1,-1/2,0", allow_hyphen_values = true)]
        grid_neg: String,
    },
    /// List every subhyperspace.
    EnumerateShs {
        file: PathBuf,
        #[arg(long)]
        space: String,
    },
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutcome::ok(EXIT_OK, text)
            };
        }
    };
    match commands::dispatch(&cli.command, cli.json) {
        Ok(outcome) => outcome,
        Err(f) => CommandOutcome {
            code: f.code,
            stdout: if cli.json {
                render::error_json(f.code, &f.message)
            } else {
                String::new()
            },
            stderr: format!("error: {}\n", f.message),
        },
    }
}
