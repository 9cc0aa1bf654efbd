use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::sweep::build_deployment;
use crate::coverage::{build_grid, write_heatmap, ConnectivityGrid, HeatmapMetadata};
use crate::error::{Error, Result};

/// Connectivity maps at every `sweep.altitudes_m`, for the configured
/// environment and threshold (realization 0 for random deployments).
pub fn heatmaps(cfg: &ExperimentConfig) -> Result<Vec<(ConnectivityGrid, HeatmapMetadata)>> {
    cfg.validate()?;
    let kind = cfg.deployment.environment;
    let (deployment, seed) = build_deployment(cfg, kind, cfg.deployment.density_per_km2(kind), 0)?;
    cfg.sweep
        .altitudes_m
        .iter()
        .map(|&h| {
            let grid = build_grid(&cfg.grid_spec(h), &deployment)?;
            let meta = HeatmapMetadata::describe(&grid, kind.as_str(), seed);
            Ok((grid, meta))
        })
        .collect()
}

/// File stem of the heatmap at altitude `h`.
pub fn heatmap_stem(h: f64) -> String {
    format!("heatmap_h{h}")
}

/// Writes one id CSV, SIR CSV and JSON sidecar per altitude into `dir`.
/// Returns the id CSV paths.
pub fn run_heatmap(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    if cfg.sweep.altitudes_m.is_empty() {
        return Err(Error::Config("no altitudes to map".into()));
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for (grid, meta) in heatmaps(cfg)? {
        let stem = heatmap_stem(meta.altitude_m);
        write_heatmap(dir, &stem, &grid, &meta)?;
        paths.push(dir.join(format!("{stem}.csv")));
    }
    Ok(paths)
}
