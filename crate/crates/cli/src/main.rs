//! Command-line front end: validation, representability, games, formulas,
//! axiom suites, generators and equations.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use partalg::counterexamples::DEFAULT_PERM_CAP;
use partalg::games::{DEFAULT_POSITION_CAP, DEFAULT_STRATEGY_LIMIT};
use partalg::meet::DEFAULT_FILTER_CAP;
use partalg::repsearch::{DEFAULT_COMPLETE_CAP, DEFAULT_NODE_CAP};

/// Exit status: 0 positive, 1 negative, 2 usage or input error, 3 inconclusive.
#[derive(Parser)]
#[command(name = "partalg", version, about = "Finite partial algebras of sets: representability, games, axioms and equations")]
struct Cli {
    /// Output style for verdicts and reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Forall,
    Exists,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Join,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document describes a partial algebra.
    Validate {
        /// Algebra file, or `-` for standard input.
        input: String,
        /// Accept signatures without join, minus or meet.
        #[arg(long)]
        allow_degenerate: bool,
    },
    /// Decide representability by sets.
    Repcheck {
        input: String,
        /// Node limit of the backtracking search.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
        /// Decision procedure: search, zero-reduction, exhaustive, game or birkhoff.
        #[arg(long, default_value = "search")]
        decider: String,
        /// Print the whole certificate rather than a summary.
        #[arg(long)]
        certificate: bool,
    },
    /// Build a representation document.
    Represent {
        input: String,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
        /// Emit a representation by partial functions instead of sets.
        #[arg(long)]
        partial_functions: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a representation or certificate against an algebra.
    Verify {
        /// Representation or certificate document, or `-`.
        input: String,
        /// The algebra it claims to represent.
        #[arg(long)]
        against: String,
        /// Also check that suprema of combinable subsets become unions.
        #[arg(long)]
        complete: bool,
        /// Largest subset size for the completeness check.
        #[arg(long, default_value_t = DEFAULT_COMPLETE_CAP)]
        complete_cap: usize,
        /// Operation defining combinability for the completeness check.
        #[arg(long, value_enum, default_value_t = Mode::Join)]
        mode: Mode,
    },
    /// Solve the representation game on the join reduct.
    Game {
        input: String,
        /// Number of rounds after the opening.
        #[arg(long, conflicts_with = "omega")]
        rounds: Option<usize>,
        /// The unbounded game (the default).
        #[arg(long)]
        omega: bool,
        /// Print the explored strategy of ∃.
        #[arg(long)]
        strategy: bool,
        #[arg(long, default_value_t = DEFAULT_STRATEGY_LIMIT)]
        strategy_limit: usize,
        /// Limit on solved positions.
        #[arg(long, default_value_t = DEFAULT_POSITION_CAP)]
        position_cap: usize,
    },
    /// Play the game against the engine.
    Play {
        input: String,
        /// The side you play.
        #[arg(long = "as", value_enum, default_value_t = Side::Forall)]
        side: Side,
        /// Number of rounds; defaults to one more than the size of the algebra.
        #[arg(long)]
        rounds: Option<usize>,
        /// Read moves from a file instead of the terminal.
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// Print the formula ρ_n, or μ_n(V, W) with --mu.
    Rho {
        n: usize,
        #[arg(long)]
        mu: bool,
        /// Variables of V for --mu, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "v")]
        v: Vec<String>,
        /// Variables of W for --mu, comma separated.
        #[arg(long, value_delimiter = ',')]
        w: Vec<String>,
        /// Evaluate the formula in this algebra instead of printing it.
        #[arg(long)]
        check: Option<String>,
        /// Print the number of nodes of the formula tree.
        #[arg(long)]
        size: bool,
    },
    /// Translate a quantifier-free formula over the totalised algebra into a relational one.
    Translate {
        formula: String,
        /// Evaluate both formulas in this algebra.
        #[arg(long)]
        check: Option<String>,
    },
    /// Check an axiom suite for signatures with meet.
    Axioms {
        input: String,
        /// AxJMeetZero, AxJMeet, AxKMeetZero or AxKMeet; inferred from the signature by default.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Build the prime-filter representation of a model of an axiom suite.
    Birkhoff {
        input: String,
        #[arg(long)]
        suite: Option<String>,
        /// Largest carrier for filter enumeration.
        #[arg(long, default_value_t = DEFAULT_FILTER_CAP)]
        filter_cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a named algebra family.
    Gen {
        /// Generator name; see --list.
        name: Option<String>,
        params: Vec<usize>,
        #[arg(long)]
        list: bool,
        /// For A with m = n, emit the permutation representation instead.
        #[arg(long)]
        representation: bool,
        /// Largest n for the permutation representation.
        #[arg(long, default_value_t = DEFAULT_PERM_CAP)]
        perm_cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether an equation of disjoint-union terms is valid.
    Equation {
        equation: String,
        /// Also search for a countermodel over a base of this size.
        #[arg(long)]
        countermodel: Option<usize>,
    },
    /// Search power sets for a falsifying assignment of an equation.
    Countermodel {
        equation: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("partalg: {f}");
            ExitCode::from(f.code)
        }
    }
}
