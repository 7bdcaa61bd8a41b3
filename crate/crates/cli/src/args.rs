use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "llsem", version, about = "Interpret linear logic proofs in relational and coherence-style semantics")]
pub struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsName {
    Rel,
    Bipartite,
    BipartiteUniform,
    Coh,
    CohUniform,
    CohUniformSet,
    Hyper,
    HyperUniform,
    HyperUniformSet,
    Multi,
    MultiUniform,
    MultiUniformSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Exponential {
    Cofree,
    Indexed,
}

/// Semantics selection shared by every command.
#[derive(Debug, Clone, Args)]
pub struct SemanticsArgs {
    /// Semantics family (default: rel for `interpret`, multi otherwise).
    #[arg(long, value_enum)]
    pub semantics: Option<SemanticsName>,

    /// Exponential of the non-uniform multiset semantics.
    #[arg(long, value_enum)]
    pub exponential: Option<Exponential>,

    /// Cardinalities: `pair`, `all` or `set:2,3`.
    #[arg(long = "K", value_name = "K")]
    pub k: Option<String>,

    /// Largest multiset cardinality examined by clique checks.
    #[arg(long, default_value_t = 6)]
    pub card_bound: usize,

    /// Step budget for decomposition searches (0 for none).
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
}

/// A space given as an inline formula, a `.llf` file or a `.tbs` table.
#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Formula text, `.llf` file, or `.tbs` table space.
    pub space: String,

    /// Wrap the space in `!`.
    #[arg(long)]
    pub of_course: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the interpretation of a proof.
    Interpret {
        proof: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Size bound for cut formulas (default: three times the bound).
        #[arg(long)]
        cut_bound: Option<usize>,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Verdict of a multiset in a space.
    Verdict {
        #[command(flatten)]
        space: SpaceArgs,
        /// A bag `(bag p1 p2 ...)`.
        bag: String,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Check that a set of points is a clique.
    Clique {
        #[command(flatten)]
        space: SpaceArgs,
        /// File of points, or inline points.
        points: String,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Whether a point is in the neutral web.
    Neutral {
        #[command(flatten)]
        space: SpaceArgs,
        point: String,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Neutral restriction of an interpretation file.
    Restrict {
        interp: PathBuf,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Interaction of two proofs of dual conclusions.
    Interact {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Run the structural law checks.
    Laws {
        #[arg(long, default_value_t = 5)]
        bound: usize,
        #[arg(long, default_value_t = 3)]
        law_card_bound: usize,
        /// Print passing checks too.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Tuples of a proof present in one semantics and absent in the other.
    Compare {
        proof: PathBuf,
        #[arg(value_enum)]
        left: SemanticsName,
        #[arg(value_enum)]
        right: SemanticsName,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
}
