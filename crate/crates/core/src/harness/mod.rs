//! Experiment plumbing: configuration files, parameter sweeps with Monte
//! Carlo averaging, heatmap emission and the command-line front end.

mod cli;
pub mod config;
mod heatmap;
mod sweep;

pub use cli::{cli, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};
pub use config::{DeploymentMode, ExperimentConfig, SEED_ENV_VAR};
pub use heatmap::{heatmap_stem, heatmaps, run_heatmap};
pub use sweep::{build_deployment, derive_seed, run_sweep, summarize, write_sweep, SweepOutput, SweepRecord, SweepSummary};
