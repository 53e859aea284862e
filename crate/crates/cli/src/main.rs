mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "gwcount",
    version,
    about = "Exact counts of rational lines and conics in projective space"
)]
struct Cli {
    /// Persistent memo cache file.
    #[arg(long, global = true, env = "GWCOUNT_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count curves through generic linear spaces.
    Count(CountArgs),
    /// List the floor diagrams behind a count.
    Enumerate(EnumerateArgs),
    /// Check a count against diagram totals and independent oracles.
    Verify(VerifyArgs),
    /// Print closed-form tables.
    Table(TableArgs),
    /// Count reducible conics through a node constraint.
    Reducible(ReducibleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct QueryArgs {
    /// Curve degree: 1 (lines) or 2 (conics).
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    /// Dimension of the ambient projective space.
    #[arg(long, allow_hyphen_values = true)]
    dim: i64,
    /// Comma-separated codimensions of the constraint spaces.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    codims: CodimList,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Split the count into one-floor and two-floor parts (conics).
    #[arg(long)]
    breakdown: bool,
    /// Cross-check the result; exit 2 on disagreement.
    #[arg(long)]
    self_check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupBy {
    Shape,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum)]
    group_by: Option<GroupBy>,
    /// Print only the first K diagrams in canonical order.
    #[arg(long, value_name = "K")]
    limit: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long, allow_hyphen_values = true)]
    dim: i64,
    /// Required unless --all is given.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true, required_unless_present = "all")]
    codims: Option<CodimList>,
    /// Check every countable constraint multiset of this degree and dimension.
    #[arg(long, conflicts_with = "codims")]
    all: bool,
    /// Compare line counts with Schubert calculus.
    #[arg(long)]
    oracle: bool,
    /// Compare line counts with the closed forms where they apply.
    #[arg(long)]
    closed_form: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Cnl,
    Catalan,
    Kl,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    kind: TableKind,
    #[arg(long)]
    max_n: u32,
    /// Recompute each entry with the recursion; exit 2 on disagreement.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Product,
    Tropical,
    Both,
}

#[derive(Args, Debug)]
pub struct ReducibleArgs {
    #[arg(long, allow_hyphen_values = true)]
    dim: i64,
    /// Codimension of the space through the node.
    #[arg(long, allow_hyphen_values = true)]
    l0: i64,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    list1: CodimList,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    list2: CodimList,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// Position of the node constraint among the first list (0 means on top).
    #[arg(long)]
    k0: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimList(pub Vec<i64>);

fn parse_list(text: &str) -> Result<CodimList, String> {
    if text.trim().is_empty() {
        return Ok(CodimList(Vec::new()));
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| format!("`{part}` is not an integer: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(CodimList)
}

/// Command failure, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<floorcount::QueryError> for Failure {
    fn from(e: floorcount::QueryError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let counter = floorcount::ExactCounter::new();
    if let Some(path) = &cli.cache {
        cache::load(path, &counter);
    }

    let result = match &cli.command {
        Command::Count(args) => commands::count(&counter, args),
        Command::Enumerate(args) => commands::enumerate(&counter, args),
        Command::Verify(args) => commands::verify(&counter, args),
        Command::Table(args) => commands::table(&counter, args),
        Command::Reducible(args) => commands::reducible(&counter, args),
    };

    if let Some(path) = &cli.cache {
        if let Err(e) = cache::save(path, &counter) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }

    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(text)) => {
            print!("{text}");
            eprintln!("error: consistency check failed");
            ExitCode::from(2)
        }
    }
}
