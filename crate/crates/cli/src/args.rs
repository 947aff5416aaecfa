use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperb_core::notation::IntRange;

#[derive(Debug, Parser)]
#[command(name = "hyperb", version, about = "b-chromatic bounds and verification for hypercube and Hamming graph powers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound table for Q_n^p over a grid of (n, p).
    Table(TableArgs),
    /// Check one of the library's statements by exhaustive or sampled sweep.
    Verify(VerifyArgs),
    /// Exact b-chromatic number of a small power graph.
    Solve(SolveArgs),
    /// Emit the coset coloring, or validate a coloring witness.
    Color(ColorArgs),
    /// Simplicial rank and unrank.
    Rank(RankArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Range of n, e.g. `5..12` (inclusive) or `7`.
    #[arg(long)]
    pub n: IntRange,
    /// Range of p; defaults to 1..n for each n.
    #[arg(long)]
    pub p: Option<IntRange>,
    /// Also report the Hamming lower bound q^(n-1) for this alphabet size.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// |C^p[A]| <= |C^p[I_|A|]|.
    Close,
    /// |C^p(A)| <= |C^p(I_|A|)| for pairwise p-close families.
    Open,
    /// C^p[I_a] is an initial segment.
    InitialSegment,
    /// Fully compressed families are initial segments or the exceptional form.
    Fixpoints,
    /// Compressions never shrink C^p[A].
    Compression,
    /// Closed-form |C^p(I_(r-s))| and the strict bound at r-s+1.
    ClosedForm,
    /// r >= 3s.
    R3s,
    /// Coset coloring is a b-coloring of H_{n,q}^p.
    Coset,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    #[arg(long)]
    pub n: Option<IntRange>,
    #[arg(long)]
    pub p: Option<IntRange>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Upper end of n for the r >= 3s sweep.
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Visit every family (n <= 4).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Number of seeded random families per (n, p).
    #[arg(long, requires = "seed")]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("graph").required(true).args(["hypercube", "hamming"])))]
pub struct SolveArgs {
    /// Q_n with this n.
    #[arg(long)]
    pub hypercube: Option<u32>,
    /// H_{n,q} written `n,q`.
    #[arg(long, value_parser = parse_pair)]
    pub hamming: Option<(u32, u32)>,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 500_000_000)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = 45.0)]
    pub max_seconds: f64,
    /// Start the search below the closed-form upper bounds where they apply.
    #[arg(long)]
    pub formula_bounds: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    /// Validate this witness file instead of emitting a coloring.
    #[arg(long, conflicts_with_all = ["n", "q", "hypercube"])]
    pub check: Option<PathBuf>,
    #[arg(long, required_unless_present = "check")]
    pub n: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Power recorded in the witness; defaults to n-1.
    #[arg(long)]
    pub p: Option<u32>,
    /// Index vertices as subsets in simplicial order (q = 2).
    #[arg(long)]
    pub hypercube: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["subset", "rank", "list"])))]
pub struct RankArgs {
    #[arg(long)]
    pub n: usize,
    /// A subset of [n] such as `{1,3}`.
    #[arg(long)]
    pub subset: Option<String>,
    #[arg(long)]
    pub rank: Option<u64>,
    /// Print every subset of [n] in simplicial order (n <= 20).
    #[arg(long)]
    pub list: bool,
}

fn parse_pair(text: &str) -> Result<(u32, u32), String> {
    let (a, b) = text.split_once(',').ok_or_else(|| format!("expected `n,q`, got {text:?}"))?;
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}
