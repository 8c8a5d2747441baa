use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use closure_cohomology::{FgAbGroup, Metric, Ring, DEFAULT_COVER_CAP, DEFAULT_LATTICE_CAP, DEFAULT_Q_MAX};

#[derive(Debug, Parser)]
#[command(name = "cech-closure", version, about = "Čech cohomology of finite closure spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Čech cohomology of a graph or point-cloud space.
    Cohomology(CohomologyArgs),
    /// Cohomology of a point cloud over a range of scales.
    Scan(ScanArgs),
    /// Nerve of the canonical cover as JSON, optionally also as DOT.
    Nerve(NerveArgs),
    /// Check both sheaf conditions over every i-cover in the lattice.
    CheckSheaf(SheafArgs),
    /// Check that every restriction from global sections is onto.
    CheckFlabby(PresheafArgs),
    /// Stalks of a presheaf at every point.
    Stalks(PresheafArgs),
    /// Randomized property suite for the closure and cover axioms.
    Axioms(AxiomArgs),
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false)]
pub struct InputArgs {
    /// Edge list: `u v` per line, `#` comments, optional `n=K` header.
    #[arg(long, group = "input")]
    pub graph: Option<PathBuf>,
    /// Point cloud: one comma-separated point per line.
    #[arg(long, group = "input", requires = "r")]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Two-column `label index` file; edge-list endpoints are then labels.
    #[arg(long, requires = "graph")]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value = "euclidean")]
    pub metric: Metric,
    /// Closure radius for point clouds: `c({y}) = {x : d(x,y) ≤ r}`.
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CoefficientArgs {
    /// Constant coefficient group, e.g. `Z`, `Z/2`, `Z^2 + Z/3`.
    #[arg(long, default_value = "Z", conflicts_with = "presheaf")]
    pub group: FgAbGroup,
    /// Presheaf JSON on the intersection lattice.
    #[arg(long)]
    pub presheaf: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_LATTICE_CAP, value_parser = positive)]
    pub lattice_cap: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    /// `Z`, `Q` or a prime field such as `F2`.
    #[arg(long, default_value = "Z")]
    pub ring: Ring,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, default_value = "euclidean")]
    pub metric: Metric,
    #[arg(long)]
    pub r_min: f64,
    #[arg(long)]
    pub r_max: f64,
    /// Number of radii, spaced linearly with both ends included.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub steps: u64,
    #[arg(long, default_value = "Z")]
    pub group: FgAbGroup,
    #[arg(long, default_value = "Z")]
    pub ring: Ring,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: usize,
    /// Also write the nerve in Graphviz DOT format to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PresheafArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SheafArgs {
    #[command(flatten)]
    pub presheaf: PresheafArgs,
    /// Candidate families examined per lattice element.
    #[arg(long, default_value_t = DEFAULT_COVER_CAP, value_parser = positive)]
    pub cover_cap: usize,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub spaces: usize,
    #[arg(long, default_value_t = 10, value_parser = small_size)]
    pub max_n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn small_size(s: &str) -> Result<usize, String> {
    positive(s).and_then(|v| if v <= 16 { Ok(v) } else { Err("at most 16 points".into()) })
}
