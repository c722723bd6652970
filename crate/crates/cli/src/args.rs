use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "nslen",
    version,
    about = "Word maps, coset identities and nonsolvable length of finite groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Global {
    /// Worker threads for the parallel scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Budget on evaluated tuples for exhaustive scans.
    #[arg(long, global = true, default_value_t = nslen_core::wordmap::DEFAULT_TUPLE_BUDGET)]
    pub max_tuples: u64,
    /// Largest group order that is enumerated element by element.
    #[arg(long, global = true, default_value_t = nslen_core::structure::DEFAULT_LAMBDA_MAX_ORDER)]
    pub max_order: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, exponent and structure fingerprint of a group.
    Group(GroupArgs),
    /// Fiber sizes of a word map, exact or sampled.
    Fibers(FibersArgs),
    /// Does the group satisfy w = 1, or a probabilistic identity?
    Identity(IdentityArgs),
    /// Values of a word on a product of cosets of a simple group.
    Coset(CosetArgs),
    /// Search every outer tuple for a coset identity.
    Wmb(WmbArgs),
    /// Divisors of e witnessed bad by catalog cosets.
    BadScan(BadScanArgs),
    /// Fixed-point moments, support bounds and tail bounds.
    PermStats(PermStatsArgs),
    /// Nonsolvable length through the radical/socle series.
    Lambda(LambdaArgs),
    /// Solvable radical.
    Radical(GroupArgs),
    /// Socle and its simple factors.
    Socle(GroupArgs),
    /// Permutation part of a semisimple group.
    PermPart(GroupArgs),
    /// Run the acceptance checks.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct FibersArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub group: String,
    /// Exhaustive count (the default unless --samples is given).
    #[arg(long, conflicts_with = "samples")]
    pub exact: bool,
    /// Sample this many tuples instead of counting.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct IdentityArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub group: String,
    /// Threshold for the probabilistic identity, e.g. 1/2.
    #[arg(long)]
    pub rho: Option<String>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct CosetArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub simple: String,
    /// Outer classes "eps,t;eps,t;…", one per variable.
    #[arg(long)]
    pub outer: String,
    /// List the whole value set, up to this many values.
    #[arg(long)]
    pub full: Option<usize>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct WmbArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub simple: String,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct BadScanArgs {
    #[arg(long)]
    pub exponent: u64,
    /// Comma-separated simple groups.
    #[arg(long)]
    pub catalog: String,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct PermStatsArgs {
    #[arg(long)]
    pub group: String,
    /// Tail parameter in (0, 1).
    #[arg(long, default_value = "1/2")]
    pub eps: String,
    /// Support threshold C for the order bounds.
    #[arg(long, default_value_t = 2)]
    pub c: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct LambdaArgs {
    #[arg(long)]
    pub group: String,
    /// auto, enum or bsgs.
    #[arg(long, default_value = "auto")]
    pub engine: String,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Comma-separated substrings matched against check ids and anchors.
    #[arg(long)]
    pub filter: Option<String>,
    /// Include the long-running checks.
    #[arg(long)]
    pub slow: bool,
    /// Omit runtimes so reports are byte-stable.
    #[arg(long)]
    pub no_timing: bool,
}
