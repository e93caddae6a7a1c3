use std::path::PathBuf;

use anarchy_core::{parse_rational, EquilibriumConcept, FormationRule, MovePolicy, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn concept(s: &str) -> Result<EquilibriumConcept, String> {
    s.parse().map_err(|e: anarchy_core::Error| e.to_string())
}

fn policy(s: &str) -> Result<MovePolicy, String> {
    s.parse().map_err(|e: anarchy_core::Error| e.to_string())
}

/// Explore network formation games in which an adversary destroys one link.
#[derive(Debug, Parser)]
#[command(name = "anarchy-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Costs, bridges, adversary and equilibrium verdicts for one graph or profile.
    Analyze(AnalyzeArgs),
    /// Decide one equilibrium concept, optionally against an expected answer.
    Check(CheckArgs),
    /// List every equilibrium on n players by exhaustive search.
    Enumerate(EnumerateArgs),
    /// Price of anarchy by exhaustive search, over an alpha grid, or for a fixed witness.
    Poa(PoaArgs),
    /// Run pairwise improvement dynamics from a starting graph.
    Dynamics(DynamicsArgs),
    /// Emit a named fixture.
    Construct(ConstructArgs),
    /// Compare fast and naive relevance on seeded random graphs.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdversaryArg {
    Simple,
    Smart,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Blf,
    Ulf,
}

impl From<RuleArg> for FormationRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Blf => FormationRule::Bilateral,
            RuleArg::Ulf => FormationRule::Unilateral,
        }
    }
}

/// Where the graph or profile comes from.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge-list file: `n <count>`, then one `v w` per line. Under ULF each line
    /// is a request by `v`.
    #[arg(long, conflicts_with = "fixture")]
    pub graph: Option<PathBuf>,
    /// Named fixture such as `cycle_with_path:16,4`.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Formation rule; inferred from the concept or fixture when omitted.
    #[arg(long, value_enum)]
    pub rule: Option<RuleArg>,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    /// Link cost, as `p/q` or an integer.
    #[arg(long, value_parser = rational)]
    pub alpha: Rational,
    #[arg(long, value_enum, default_value = "simple")]
    pub adversary: AdversaryArg,
    /// JSON table `{"v-w": "p/q"}` for `--adversary custom`.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of players.
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = concept, default_value = "ps")]
    pub concept: EquilibriumConcept,
    /// Keep one witness per isomorphism class.
    #[arg(long)]
    pub dedup: bool,
    /// Also visit disconnected graphs.
    #[arg(long)]
    pub all_graphs: bool,
    /// Run on the current thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub game: GameArgs,
    /// One of ne, maxne, pne, ps.
    #[arg(long, value_parser = concept)]
    pub concept: EquilibriumConcept,
    /// Exit with status 1 unless the verdict equals this.
    #[arg(long)]
    pub expect: Option<bool>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PoaArgs {
    /// Number of players for exhaustive search.
    #[arg(long, conflicts_with_all = ["graph", "fixture"])]
    pub n: Option<usize>,
    #[arg(long, value_parser = concept, default_value = "pne")]
    pub concept: EquilibriumConcept,
    /// Fixed witness graph instead of a search.
    #[arg(long, conflicts_with = "fixture")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub fixture: Option<String>,
    /// Link cost for a single run.
    #[arg(long, value_parser = rational, required_unless_present = "sweep")]
    pub alpha: Option<Rational>,
    /// Comma-separated alpha grid, one CSV row each.
    #[arg(long, value_delimiter = ',', value_parser = rational, conflicts_with = "alpha")]
    pub sweep: Option<Vec<Rational>>,
    #[arg(long, value_enum, default_value = "simple")]
    pub adversary: AdversaryArg,
    #[arg(long)]
    pub dedup: bool,
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Start from a seeded random connected graph on this many players.
    #[arg(long, conflicts_with_all = ["graph", "fixture"])]
    pub random_n: Option<usize>,
    #[command(flatten)]
    pub game: GameArgs,
    /// `lex` (smallest move first) or `random`.
    #[arg(long, value_parser = policy, default_value = "lex")]
    pub policy: MovePolicy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_steps: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub fixture: String,
    /// `text` is the edge-list format read by `--graph`.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 1000)]
    pub graphs: usize,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
