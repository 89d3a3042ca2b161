mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flagchern::chern::Oracle;
use flagchern::groebner::OrderKind;

use output::Format;

/// Chern numbers of invariant almost complex structures on flag manifolds.
#[derive(Parser, Debug)]
#[command(name = "flagchern", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Worker threads for Weyl sums.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Integration oracle: weyl, groebner, or both (asserting agreement).
    #[arg(long, global = true, default_value = "both")]
    pub oracle: Oracle,
    /// Include the long-running cases.
    #[arg(long, global = true)]
    pub slow: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the roots of a root system.
    Roots {
        /// A, B, C, D or G2.
        family: String,
        rank: usize,
    },
    /// Isotropy decomposition of a flag manifold.
    Decompose {
        /// Manifold name such as F(7;1,2,4), FD(3;1,2), G2-long.
        manifold: Option<String>,
        #[arg(long, requires = "rank", conflicts_with = "manifold")]
        family: Option<String>,
        #[arg(long, requires = "family")]
        rank: Option<usize>,
        /// Simple roots kept in K, 1-based: `keep=1,3`.
        #[arg(long, requires = "family")]
        theta: Option<String>,
    },
    /// Invariant almost complex structures.
    Acs {
        #[command(subcommand)]
        action: AcsAction,
    },
    /// Chern numbers and Todd genus of one structure.
    Chern {
        #[arg(long)]
        manifold: String,
        /// Sign vector such as `+,-,+`; defaults to all plus.
        #[arg(long)]
        acs: Option<String>,
        /// Comma separated monomials such as `c1^14,c2c6`.
        #[arg(long, conflicts_with = "all_partitions")]
        numbers: Option<String>,
        /// Every monomial of top weight (the default when --numbers is absent).
        #[arg(long)]
        all_partitions: bool,
        /// Also compute the Todd genus.
        #[arg(long)]
        todd: bool,
    },
    /// Published tables.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Groebner basis of a preset or file ideal.
    Groebner {
        /// `so6`, `borel:A3` (any family and rank), or a file with one polynomial per line.
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "lex")]
        order: OrderKind,
        /// Variable names for file ideals.
        #[arg(long, default_value = "x,y,z")]
        vars: String,
    },
    /// Explicit cohomology presentations.
    Cohomology {
        #[command(subcommand)]
        action: CohomologyAction,
    },
    /// Acceptance criteria.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// The universal Todd polynomial of a given degree.
    Todd { degree: usize },
}

#[derive(Subcommand, Debug)]
pub enum AcsAction {
    /// All structures, or one per conjugate pair.
    Enumerate {
        manifold: String,
        /// Keep both members of each conjugate pair.
        #[arg(long)]
        all: bool,
    },
    /// Equivalence classes under the summand symmetries.
    Classify { manifold: String },
}

#[derive(Subcommand, Debug)]
pub enum TableAction {
    /// Table identifiers.
    List,
    /// Recompute a table and diff it against the printed values.
    Reproduce {
        /// Table identifier, or `all`.
        id: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CohomologyAction {
    /// Check a presentation case, e.g. `a-full:4`, `so6-groebner`, `proj-tangent:2`, or `all`.
    Verify {
        #[arg(long, default_value = "all")]
        case: Vec<String>,
        #[arg(long, default_value = "grevlex")]
        order: OrderKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyAction {
    /// Run the acceptance suite.
    All {
        /// Restrict to these criteria.
        #[arg(long)]
        criterion: Vec<u8>,
        /// Print the supporting detail of each criterion.
        #[arg(long, short)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
