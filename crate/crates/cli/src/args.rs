use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "tdquad", version, about = "Tree-decorated quadrangulation simulator", args_override_self = true)]
pub struct Cli {
    /// worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// key=value file; flags given on the command line win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniform plane tree with k edges, written as balanced parentheses
    SampleTree {
        #[arg(long)]
        size: usize,
        #[arg(long, required = true)]
        seed: Option<u64>,
    },
    /// Quadrangulation with a simple boundary (windowed rejection sampler)
    SampleQuad {
        #[arg(long)]
        faces: usize,
        /// half-perimeter
        #[arg(long)]
        perimeter: usize,
        /// relative tolerance on the realized size
        #[arg(long, default_value_t = 0.1)]
        window: f64,
        #[arg(long, default_value_t = 10_000)]
        max_attempts: u64,
        #[arg(long, required = true)]
        seed: Option<u64>,
    },
    /// Glue a quadrangulation and a tree of matching size
    Glue {
        #[arg(long)]
        quad: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Cut a decorated quadrangulation back into a quadrangulation and a tree
    Cut {
        #[arg(long)]
        decorated: PathBuf,
    },
    /// Peel a host from spine segment [0, radius] to the spine tip
    Peel {
        #[arg(long)]
        faces: usize,
        #[arg(long, default_value_t = 3.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        radius: usize,
        #[arg(long, default_value_t = 10)]
        min_spine: usize,
        #[arg(long, default_value_t = 0.2)]
        window: f64,
        #[arg(long, required = true)]
        seed: Option<u64>,
    },
    /// Count quadrangulations by exhaustive enumeration
    Enumerate {
        #[arg(long)]
        faces: usize,
        /// half-perimeter
        #[arg(long)]
        perimeter: usize,
        /// count general boundaries instead of simple ones
        #[arg(long)]
        general: bool,
    },
    /// Run an experiment and write report.json plus CSV tables
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    Overshoot(OvershootArgs),
    Diameter(DiameterArgs),
    Subadditive(SubadditiveArgs),
    Rn(RnArgs),
    Donsker(DonskerArgs),
    PeelTail(PeelTailArgs),
    Claim(ClaimArgs),
}

#[derive(Debug, Args)]
pub struct OvershootArgs {
    #[arg(long, default_value_t = 100_000)]
    pub faces: usize,
    /// half-perimeter, default floor(3 sqrt(faces))
    #[arg(long)]
    pub perimeter: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 4)]
    pub positions: usize,
    #[arg(long, default_value_t = 0.25)]
    pub window: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DiameterArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1000, 10_000, 100_000])]
    pub f: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 50)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0.2)]
    pub window: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SubadditiveArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [5, 10, 20, 40])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 20_000)]
    pub faces: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 100)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0.2)]
    pub window: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RnArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [50, 100, 200])]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0.25)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct DonskerArgs {
    #[arg(long, default_value_t = 2000)]
    pub k_small: usize,
    #[arg(long, default_value_t = 8000)]
    pub k_large: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PeelTailArgs {
    #[arg(long, default_value_t = 100_000)]
    pub faces: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 10)]
    pub min_spine: usize,
    #[arg(long, default_value_t = 350)]
    pub hosts: usize,
    #[arg(long, default_value_t = 100)]
    pub max_a: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [100, 1000, 10_000])]
    pub cauchy_l: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    pub cauchy_samples: usize,
    #[arg(long, default_value_t = 0.2)]
    pub window: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ClaimArgs {
    #[arg(long, default_value_t = 1000)]
    pub max_a: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1.5)]
    pub exponent: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}
