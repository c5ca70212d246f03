mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{ErrorInfo, Inputs, RunReport, Status};

/// Generation by conjugates from character tables, and cyclicity of
/// matrices over finite fields.
#[derive(Parser, Debug)]
#[command(name = "genconj", version)]
pub struct Cli {
    /// Data directory replacing the embedded corpus.
    #[arg(long, global = true, env = "GENCONJ_DATA")]
    pub data_dir: Option<PathBuf>,
    /// Largest tuple length tried by `alpha`.
    #[arg(long, global = true, default_value_t = genconj::structgen::DEFAULT_MAX_K)]
    pub max_k: usize,
    /// Cap on enumerated candidate tuples for `oracle`.
    #[arg(long, global = true, default_value_t = genconj::permoracle::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and check a character table, subgroup record or permutation fixture.
    Validate {
        path: PathBuf,
        /// Parent table (name or file) for a subgroup record.
        #[arg(long)]
        parent: Option<String>,
    },
    /// Structure constant Δ for a class tuple (the last class is the target).
    Delta {
        /// Group name in the corpus, or a table file.
        table: String,
        #[arg(required = true, num_args = 3..)]
        classes: Vec<String>,
    },
    /// Θ with maximal-subgroup corrections, and the resulting verdict.
    Theta {
        table: String,
        #[arg(required = true, num_args = 3..)]
        classes: Vec<String>,
        /// Directory of subgroup records (maximal ones are used).
        #[arg(long)]
        subgroups: Option<PathBuf>,
    },
    /// Bounds on the number of conjugates needed to generate the group.
    Alpha {
        table: String,
        class: String,
        #[arg(long)]
        subgroups: Option<PathBuf>,
    },
    /// Classify a matrix as scalar, cyclic, almost cyclic or neither.
    Classify {
        /// Matrix file.
        #[arg(required_unless_present_any = ["factors", "pair"], conflicts_with_all = ["factors", "pair"])]
        file: Option<PathBuf>,
        /// Invariant factors `p:f1,f2,...`; the block companion matrix is classified.
        #[arg(long, conflicts_with = "pair")]
        factors: Option<String>,
        /// Minimal and characteristic polynomial `p:m,c`.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Dimension screen over rows `group ell n class d m`.
    Screen {
        /// Bounds file; the embedded one by default.
        file: Option<PathBuf>,
    },
    /// Brute-force counts on a permutation fixture.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Restrictions of a character compatible with a constraint file.
    Restrict {
        /// Spec name in the corpus (e.g. H7), or a file.
        spec: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleOp {
    /// Conjugacy classes with labels, sizes and representatives.
    Classes { fixture: String },
    /// Δ by enumeration.
    Delta {
        fixture: String,
        #[arg(required = true, num_args = 3..)]
        classes: Vec<String>,
    },
    /// Δ* (generating tuples only) by enumeration.
    DeltaStar {
        fixture: String,
        #[arg(required = true, num_args = 3..)]
        classes: Vec<String>,
    },
    /// Conjugates of a fixture subgroup containing a class representative.
    H {
        fixture: String,
        subgroup: String,
        class: String,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let mut inputs = Inputs::new(&command);
    let outcome = commands::run(&cli, &mut inputs);
    let (status, result, error, code) = match outcome {
        Ok((v, true)) => (Status::Ok, v, None, 0),
        Ok((v, false)) => (Status::Indefinite, v, None, 4),
        Err(e) => {
            let info = ErrorInfo {
                kind: e.kind(),
                message: e.to_string(),
            };
            eprintln!("genconj: {e}");
            (Status::Error, serde_json::Value::Null, Some(info), e.exit_code())
        }
    };
    let report = RunReport {
        command,
        inputs_digest: inputs.digest(),
        status,
        result,
        error,
    };
    if cli.pretty || cli.format == Format::Text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
    }
    ExitCode::from(code as u8)
}
