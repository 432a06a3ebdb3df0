use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lgmirror", about = "Superpotentials of Gr(2,n) and OG(1,5): identities, atlases, critical points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Gr,
    Og15,
    Og14,
    /// The two-dimensional local model (atlas commands only).
    Local,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "gr")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    /// Pair set such as `1,2;3,4`; empty for the torus.
    #[arg(long)]
    pub pairs: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FacesArgs {
    #[arg(long, default_value_t = 4)]
    pub n: u32,
}

#[derive(Debug, Clone, Args)]
pub struct AtlasArgs {
    #[arg(long, value_enum, default_value = "gr")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    /// Corrupt the atlas first; the check then passes when it detects the fault.
    #[arg(long)]
    pub fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CoveringArgs {
    #[arg(long, default_value_t = 5)]
    pub n: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalArgs {
    #[arg(long, value_enum, default_value = "gr")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 2000)]
    pub starts: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ExpandArgs {
    #[arg(long, default_value = "v/((u*v - 1)*z0)")]
    pub expr: String,
    /// Valuations such as `u=1,v=0`; unlisted variables have valuation 0.
    #[arg(long, default_value = "u=1")]
    pub val: String,
    /// Truncation order, a rational.
    #[arg(long, default_value = "5")]
    pub order: String,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Chart potential equals the Rietsch potential under the Plucker bindings.
    Rietsch(ModelArgs),
    /// Composites of transitions agree with direct transitions.
    Cocycle(AtlasArgs),
    /// Chart potentials are carried into each other by the transitions.
    Transport(AtlasArgs),
    /// delta^2 = (W - lambda) id for the Koszul factorization at a center.
    Koszul(AtlasArgs),
    /// Immersed charts of maximal pair sets cover the complement of the divisor.
    Covering(CoveringArgs),
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible ladder diagrams and Lagrangian faces.
    Faces(FacesArgs),
    /// Pair sets, charts and polygon subdivisions.
    Charts(ModelArgs),
    /// Chart potential of a pair set.
    Potential(ModelArgs),
    /// Rietsch potential, its cluster form and chart restrictions.
    Rietsch(ModelArgs),
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Critical points by multi-start Newton over the atlas.
    Critical(CriticalArgs),
    /// Novikov series of an expression.
    Expand(ExpandArgs),
}
