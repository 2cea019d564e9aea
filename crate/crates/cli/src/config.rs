//! Command-line arguments and the equivalent JSON run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use zerolab::cayley::DEFAULT_MEMORY_CAP;
use zerolab::DEFAULT_CHAIN_DEPTH;

#[derive(Debug, Parser)]
#[command(name = "zerolab", version, about = "Experiments on groups with an adjoined zero")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Seed for random partitions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Most elements a single enumeration may hold.
    #[arg(long, global = true, env = "ZEROLAB_MEMORY_CAP", default_value_t = DEFAULT_MEMORY_CAP)]
    pub memory_cap: usize,

    /// Number of chain levels for locally finite groups.
    #[arg(long, global = true, default_value_t = DEFAULT_CHAIN_DEPTH)]
    pub depth: usize,
}

/// A run read from a file by `zerolab run --config`; global settings are
/// optional and fall back to the command line.
#[derive(Clone, Debug, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub seed: Option<u64>,
    pub memory_cap: Option<usize>,
    pub depth: Option<usize>,
    pub output: Option<PathBuf>,
}

/// Settings every command shares, echoed into the report.
#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub seed: u64,
    pub memory_cap: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Count ends from annulus components of Cayley balls.
    Ends(EndsArgs),
    /// Symmetric-difference profiles and almost-stability class of a subset.
    Stability(StabilityArgs),
    /// Search for `I ⊆ A` and `x` with `I·x ⊆ B` (or `x·I ⊆ B`).
    Witness(WitnessArgs),
    /// Build a witness from an element of infinite order.
    WitnessCyclic(CyclicArgs),
    /// Build the stable partition of a locally finite group.
    Prop10(Prop10Args),
    /// Check a neighborhood base at zero.
    Topology(TopologyArgs),
    /// The four named topologies on the integers with zero.
    Census(CensusArgs),
    /// Cross-check witness searches against the flexibility label.
    Consistency(ConsistencyArgs),
    /// Run a command described by a JSON file.
    #[serde(skip)]
    Run(RunArgs),
}

fn twelve() -> usize {
    12
}

fn four() -> usize {
    4
}

fn twenty() -> usize {
    20
}

fn thirty() -> usize {
    30
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct EndsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = twelve())]
    #[serde(default = "twelve")]
    pub rmax: usize,
    #[arg(long, default_value_t = four())]
    #[serde(default = "four")]
    pub window: usize,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct StabilityArgs {
    #[arg(long)]
    pub group: String,
    /// Subset literal.
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a: String,
    /// Translate for a single profile.
    #[arg(long)]
    #[serde(default)]
    pub x: Option<String>,
    /// Largest radius; defaults to 12, or the chain top for locally finite groups.
    #[arg(long)]
    #[serde(default)]
    pub rmax: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Right,
    Left,
    #[default]
    Both,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a: String,
    /// Defaults to the complement of `A`.
    #[arg(long = "B")]
    #[serde(rename = "B", default)]
    pub b: Option<String>,
    #[arg(long)]
    #[serde(default)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    #[serde(default)]
    pub side: SideArg,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct CyclicArgs {
    #[arg(long)]
    pub group: String,
    /// Element of infinite order.
    #[arg(long)]
    pub z: String,
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a: String,
    #[arg(long = "B")]
    #[serde(rename = "B", default)]
    pub b: Option<String>,
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub r: usize,
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub m: usize,
}

fn direct_sum() -> String {
    "DirSumC2".into()
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct Prop10Args {
    #[arg(long, default_value_t = direct_sum())]
    #[serde(default = "direct_sum")]
    pub group: String,
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub m: usize,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct TopologyArgs {
    #[arg(long)]
    pub group: String,
    /// `discrete`, `cofinite`, `end:+`, `end:-` or `explicit:<file>`.
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = thirty())]
    #[serde(default = "thirty")]
    pub r: usize,
}

fn census_radii() -> Vec<usize> {
    vec![20, 50]
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct CensusArgs {
    /// Radii to run at; the summaries must agree.
    #[arg(long, value_delimiter = ',', default_values_t = census_radii())]
    #[serde(default = "census_radii")]
    pub radii: Vec<usize>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct ConsistencyArgs {
    #[arg(long)]
    pub group: String,
    /// Number of seeded partitions.
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub count: usize,
    /// Extra partitions `A ⊔ (G \ A)` given as subset literals.
    #[arg(long = "A")]
    #[serde(rename = "A", default)]
    pub partitions: Vec<String>,
    /// Include the stable partition of a locally finite group.
    #[arg(long)]
    #[serde(default)]
    pub prop10: bool,
    #[arg(long)]
    #[serde(default)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = twenty())]
    #[serde(default = "twenty")]
    pub m: usize,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
}
