//! Command-line front end for `leafcount`.
//!
//! [`run`] validates a parsed [`RunConfig`] completely before doing any work,
//! computes a [`Report`], and writes it as CSV, JSON lines or an aligned table.
//! Identical configurations produce byte-identical output.

mod commands;
pub mod report;
pub mod treespec;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{prepare, Job, Outcome};
pub use report::{emit_report, Format, Report};
pub use treespec::TreeSpec;

pub const EXIT_OK: i32 = 0;
/// A verification ran to completion and some check did not hold.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable naming the frontier cache directory.
pub const CACHE_ENV: &str = "LEAFCOUNT_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] leafcount::Error),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(leafcount::Error::Budget { .. }) => EXIT_BUDGET,
            CliError::Core(leafcount::Error::Io(_)) | CliError::Io { .. } => EXIT_IO,
            CliError::Core(_) | CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Parser)]
#[command(name = "leafcount", version, about = "Leaf-induced subtree counts, densities and extremal searches")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for frontier caches.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Number of copies of a pattern among the leaf-induced subtrees of a tree.
    Count(CountArgs),
    /// Density of a pattern in a tree.
    Density(CountArgs),
    /// All d-ary trees with n leaves, up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Exact limiting densities of caterpillars in complete d-ary trees.
    Limits(LimitsArgs),
    /// Minimum caterpillar density over d-ary trees, per leaf count.
    SearchMin(SearchArgs),
    /// Checks that even binary trees minimise caterpillar copies.
    Conjecture(ConjectureArgs),
    /// Checks that the minimum density is nondecreasing and below its limit.
    Monotone(MonotoneArgs),
    /// Bounds and extrema of F_{d,k} on the probability simplex.
    Simplex(SimplexArgs),
    /// Manages the Pareto frontier cache.
    Cache(CacheArgs),
}

#[derive(Debug, Clone, Args)]
#[command(group(
    ArgGroup::new("host")
        .required(true)
        .args(["tree", "tree_complete", "tree_caterpillar", "tree_even"])
))]
pub struct CountArgs {
    /// Pattern: a canonical code or complete:d,h / caterpillar:r,k / even:n.
    #[arg(long)]
    pub pattern: TreeSpec,

    /// Host tree, in the same notation as --pattern.
    #[arg(long)]
    pub tree: Option<TreeSpec>,

    /// Host is the complete d-ary tree of height h: "d,h".
    #[arg(long, value_parser = TreeSpec::complete, value_name = "D,H")]
    pub tree_complete: Option<TreeSpec>,

    /// Host is the caterpillar F^r_k: "r,k".
    #[arg(long, value_parser = TreeSpec::caterpillar, value_name = "R,K")]
    pub tree_caterpillar: Option<TreeSpec>,

    /// Host is the even binary tree with n leaves.
    #[arg(long, value_parser = TreeSpec::even, value_name = "N")]
    pub tree_even: Option<TreeSpec>,

    /// Count by enumerating leaf subsets instead of the branch recursion.
    #[arg(long)]
    pub brute: bool,

    /// Lift the subset cap of --brute.
    #[arg(long, requires = "brute")]
    pub allow_large: bool,
}

impl CountArgs {
    pub fn host(&self) -> &TreeSpec {
        self.tree
            .as_ref()
            .or(self.tree_complete.as_ref())
            .or(self.tree_caterpillar.as_ref())
            .or(self.tree_even.as_ref())
            .expect("clap enforces one host")
    }
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Only trees whose internal vertices all have exactly d children.
    #[arg(long)]
    pub strict: bool,
    /// Also report copies of the binary caterpillar with k leaves.
    #[arg(long)]
    pub k: Option<usize>,
    /// Refuse when more trees than this would be listed.
    #[arg(long, default_value_t = leafcount::extremal::DEFAULT_TREE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct LimitsArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
    /// Arity of the caterpillar.
    #[arg(long, default_value_t = 2)]
    pub r: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMethod {
    Exhaustive,
    Pareto,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    /// Smallest leaf count (default k).
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = SearchMethod::Exhaustive)]
    pub method: SearchMethod,
    /// Per-leaf-count tree budget of the exhaustive method.
    #[arg(long, default_value_t = leafcount::extremal::DEFAULT_TREE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Cross-check the Pareto minima by exhaustive search up to this leaf count.
    #[arg(long, default_value_t = 16)]
    pub validate_upto: usize,
    #[arg(long, default_value_t = leafcount::extremal::DEFAULT_TREE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct MonotoneArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = leafcount::extremal::DEFAULT_TREE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimplexMode {
    Min,
    Sup,
    BoundSample,
    Muirhead,
}

#[derive(Debug, Clone, Args)]
pub struct SimplexArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = SimplexMode::BoundSample)]
    pub mode: SimplexMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random points for bound-sample and muirhead.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Path points eps = 2^-1 .. 2^-steps for sup.
    #[arg(long, default_value_t = 20)]
    pub steps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    /// Extend the cached frontier to --n-max and store it.
    Build,
    /// Print the cache file.
    Show,
    /// Delete the cache file.
    Clear,
    /// Print the cache file's location.
    Path,
}

#[derive(Debug, Clone, Args)]
pub struct CacheArgs {
    #[arg(value_enum)]
    pub action: CacheAction,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
}

/// Validates, executes and emits one run; returns the process exit code.
pub fn run(config: &RunConfig) -> CliResult<i32> {
    let job = prepare(config)?;
    let outcome = job.execute()?;
    let io_err = |path: &str, source: io::Error| CliError::Io {
        path: path.to_string(),
        source,
    };
    match &config.output {
        Some(path) => {
            let shown = path.display().to_string();
            let file = File::create(path).map_err(|e| io_err(&shown, e))?;
            outcome.write(config.format, BufWriter::new(file)).map_err(|e| io_err(&shown, e))?;
        }
        None => {
            let stdout = io::stdout();
            outcome.write(config.format, stdout.lock()).map_err(|e| io_err("<stdout>", e))?;
        }
    }
    Ok(if outcome.all_hold() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs `config` and returns the emitted bytes instead of writing them.
pub fn run_to_bytes(config: &RunConfig) -> CliResult<(Vec<u8>, i32)> {
    let outcome = prepare(config)?.execute()?;
    let mut buf = Vec::new();
    outcome
        .write(config.format, &mut buf)
        .map_err(|source| CliError::Io {
            path: "<memory>".into(),
            source,
        })?;
    let code = if outcome.all_hold() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((buf, code))
}

impl Outcome {
    pub fn write<W: Write>(&self, format: Format, mut out: W) -> io::Result<()> {
        match self {
            Outcome::Table { report, .. } => emit_report(report, format, out),
            Outcome::Raw(bytes) => {
                out.write_all(bytes)?;
                out.flush()
            }
        }
    }
}
