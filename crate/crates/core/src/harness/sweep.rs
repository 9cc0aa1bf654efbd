//! Parameter sweeps over environment, density, altitude, SIR threshold,
//! disconnectivity tolerance and Monte Carlo realization.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{DeploymentMode, ExperimentConfig};
use crate::channel::EnvironmentKind;
use crate::coverage::{build_grid, deploy_random, ConnectivityGrid, Deployment};
use crate::error::{Error, Result};
use crate::planner::{metrics, plan};

/// SplitMix64 mixing of `master` and stream index `k`. Realization `k`
/// always gets the same seed whatever other realizations exist.
pub fn derive_seed(master: u64, k: u64) -> u64 {
    let mut z = master.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deployment for one realization. Fixed layouts ignore the seed.
pub fn build_deployment(
    cfg: &ExperimentConfig,
    kind: EnvironmentKind,
    density_per_km2: f64,
    realization: usize,
) -> Result<(Deployment, Option<u64>)> {
    let env = cfg.environment(kind);
    let (mut dep, seed) = match cfg.deployment.mode {
        DeploymentMode::Fixed => {
            let pos: Vec<(f64, f64)> = cfg.deployment.stations.iter().map(|p| (p[0], p[1])).collect();
            (Deployment::from_positions(&pos, env), None)
        }
        DeploymentMode::Random => {
            let seed = derive_seed(cfg.scenario.seed, realization as u64);
            (deploy_random(&cfg.area(), density_per_km2, env, seed)?, Some(seed))
        }
    };
    dep.set_radio(
        &cfg.channel.antenna(),
        &cfg.channel.sector_boresights_deg,
        cfg.channel.tx_power_dbm,
    );
    dep.interference = cfg.channel.interference;
    dep.sir_threshold_db = cfg.coverage.sir_threshold_db;
    dep.validate()?;
    Ok((dep, seed))
}

/// One planned mission of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub environment: EnvironmentKind,
    pub density_per_km2: f64,
    pub altitude_m: f64,
    pub sir_threshold_db: f64,
    pub alpha_max: f64,
    pub realization: usize,
    pub seed: Option<u64>,
    pub num_bs: u32,
    pub hole_fraction: f64,
    pub feasible: bool,
    /// Why the mission failed, empty when feasible.
    pub status: String,
    pub energy_rate: f64,
    pub handoff_rate: f64,
    pub disconnectivity_rate: f64,
    pub total_distance_m: f64,
    pub objective: f64,
    pub iterations: usize,
}

/// Means over the feasible realizations of one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub environment: EnvironmentKind,
    pub density_per_km2: f64,
    pub altitude_m: f64,
    pub sir_threshold_db: f64,
    pub alpha_max: f64,
    pub runs: usize,
    /// Realizations entering the means.
    pub feasible_runs: usize,
    pub mean_energy_rate: f64,
    pub mean_handoff_rate: f64,
    pub mean_disconnectivity_rate: f64,
    pub mean_hole_fraction: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    /// Ordered by environment, density, altitude, threshold, alpha and
    /// realization, following the order of the configured axes.
    pub records: Vec<SweepRecord>,
    pub summary: Vec<SweepSummary>,
    /// Wall time per record, in the same order.
    pub wall_time_s: Vec<f64>,
}

impl SweepOutput {
    pub fn find(&self, kind: EnvironmentKind, h: f64, beta: f64, alpha: f64) -> Option<&SweepSummary> {
        self.summary.iter().find(|s| {
            s.environment == kind && s.altitude_m == h && s.sir_threshold_db == beta && s.alpha_max == alpha
        })
    }
}

fn densities(cfg: &ExperimentConfig, kind: EnvironmentKind) -> Vec<f64> {
    if cfg.deployment.mode == DeploymentMode::Fixed || cfg.sweep.densities_per_km2.is_empty() {
        vec![cfg.deployment.density_per_km2(kind)]
    } else {
        cfg.sweep.densities_per_km2.clone()
    }
}

fn realizations(cfg: &ExperimentConfig) -> usize {
    match cfg.deployment.mode {
        DeploymentMode::Fixed => 1,
        DeploymentMode::Random => cfg.scenario.monte_carlo_runs,
    }
}

type Key = (usize, usize, usize, usize, usize, usize);

/// Runs every sweep point. Missions without a feasible trajectory are
/// recorded with `feasible = false`; only configuration and geometry errors
/// abort the sweep.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let s = &cfg.sweep;
    let mut jobs = Vec::new();
    for (ei, &kind) in s.environments.iter().enumerate() {
        for (di, density) in densities(cfg, kind).into_iter().enumerate() {
            for k in 0..realizations(cfg) {
                jobs.push((ei, kind, di, density, k));
            }
        }
    }

    let per_job: Vec<Vec<(Key, SweepRecord, f64)>> = jobs
        .par_iter()
        .map(|&(ei, kind, di, density, k)| run_realization(cfg, (ei, kind), (di, density), k))
        .collect::<Result<_>>()?;

    let mut keyed: Vec<(Key, SweepRecord, f64)> = per_job.into_iter().flatten().collect();
    keyed.sort_by_key(|(key, _, _)| *key);
    let wall_time_s = keyed.iter().map(|(_, _, t)| *t).collect();
    let records: Vec<SweepRecord> = keyed.into_iter().map(|(_, r, _)| r).collect();
    let summary = summarize(&records, cfg.sweep.paired_alpha);
    Ok(SweepOutput { records, summary, wall_time_s })
}

fn run_realization(
    cfg: &ExperimentConfig,
    (ei, kind): (usize, EnvironmentKind),
    (di, density): (usize, f64),
    k: usize,
) -> Result<Vec<(Key, SweepRecord, f64)>> {
    let (deployment, seed) = build_deployment(cfg, kind, density, k)?;
    let params = cfg.energy.params();
    let s = &cfg.sweep;
    let mut out = Vec::new();
    for (hi, &h) in s.altitudes_m.iter().enumerate() {
        let spec = cfg.grid_spec(h);
        // SIR does not depend on the threshold: compute once, reclassify.
        let base = build_grid(&spec, &deployment)?;
        let budget = cfg.energy.budget(h);
        for (bi, &beta) in s.sir_threshold_db.iter().enumerate() {
            let grid = base.with_threshold(beta);
            for (ai, &alpha) in s.alpha_max.iter().enumerate() {
                let mission = cfg.mission(&spec, alpha);
                let t0 = Instant::now();
                let mut rec = SweepRecord {
                    environment: kind,
                    density_per_km2: density,
                    altitude_m: h,
                    sir_threshold_db: beta,
                    alpha_max: alpha,
                    realization: k,
                    seed,
                    num_bs: deployment.num_bs(),
                    hole_fraction: grid.hole_fraction(),
                    feasible: false,
                    status: String::new(),
                    energy_rate: f64::NAN,
                    handoff_rate: f64::NAN,
                    disconnectivity_rate: f64::NAN,
                    total_distance_m: f64::NAN,
                    objective: f64::NAN,
                    iterations: 0,
                };
                match solve(&grid, &mission, &budget, &params, cfg.mission.max_iter) {
                    Ok((r, m)) => {
                        rec.feasible = true;
                        rec.energy_rate = m.energy_rate;
                        rec.handoff_rate = m.handoff_rate;
                        rec.disconnectivity_rate = m.disconnectivity_rate;
                        rec.total_distance_m = r.total_distance_m;
                        rec.objective = r.objective;
                        rec.iterations = r.iterations_used;
                    }
                    Err(e @ (Error::InfeasibleMission(_) | Error::IterationBudgetExhausted { .. })) => {
                        rec.status = e.to_string();
                    }
                    Err(e) => return Err(e),
                }
                let dt = t0.elapsed().as_secs_f64();
                out.push(((ei, di, hi, bi, ai, k), rec, dt));
            }
        }
    }
    Ok(out)
}

fn solve(
    grid: &ConnectivityGrid,
    mission: &crate::planner::MissionSpec,
    budget: &crate::energy::BatteryBudget,
    params: &crate::energy::RotorcraftParams,
    max_iter: Option<usize>,
) -> Result<(crate::planner::PlanResult, crate::planner::MissionMetrics)> {
    let r = plan(grid, mission, budget, params, max_iter)?;
    let m = metrics(&r, budget, params)?;
    Ok((r, m))
}

/// Groups records by sweep point (all fields but the realization) and
/// averages the feasible ones, in order of first appearance. With `paired`,
/// a realization counts only where it is feasible at every `alpha_max` of
/// its (environment, density, altitude, threshold) point.
pub fn summarize(records: &[SweepRecord], paired: bool) -> Vec<SweepSummary> {
    fn point(r: &SweepRecord) -> [u64; 4] {
        [
            r.environment as u64,
            r.density_per_km2.to_bits(),
            r.altitude_m.to_bits(),
            r.sir_threshold_db.to_bits(),
        ]
    }
    let mut failed: BTreeMap<([u64; 4], usize), bool> = BTreeMap::new();
    for r in records {
        *failed.entry((point(r), r.realization)).or_default() |= !r.feasible;
    }
    let counts = |r: &SweepRecord| r.feasible && !(paired && failed[&(point(r), r.realization)]);

    let mut order: Vec<([u64; 4], u64)> = Vec::new();
    let mut groups: BTreeMap<([u64; 4], u64), Vec<&SweepRecord>> = BTreeMap::new();
    for r in records {
        let key = (point(r), r.alpha_max.to_bits());
        groups
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let ok: Vec<&SweepRecord> = rows.iter().copied().filter(|r| counts(r)).collect();
            let mean = |f: fn(&SweepRecord) -> f64| {
                if ok.is_empty() {
                    f64::NAN
                } else {
                    ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
                }
            };
            let first = rows[0];
            SweepSummary {
                environment: first.environment,
                density_per_km2: first.density_per_km2,
                altitude_m: first.altitude_m,
                sir_threshold_db: first.sir_threshold_db,
                alpha_max: first.alpha_max,
                runs: rows.len(),
                feasible_runs: ok.len(),
                mean_energy_rate: mean(|r| r.energy_rate),
                mean_handoff_rate: mean(|r| r.handoff_rate),
                mean_disconnectivity_rate: mean(|r| r.disconnectivity_rate),
                mean_hole_fraction: rows.iter().map(|r| r.hole_fraction).sum::<f64>() / rows.len() as f64,
            }
        })
        .collect()
}

fn fmt(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

/// Writes `sweep_raw.csv` and `sweep_summary.csv`, which depend only on
/// the configuration, plus `sweep_timing.csv` with wall times when
/// `timing` is set.
pub fn write_sweep(dir: &Path, out: &SweepOutput, timing: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let raw = dir.join("sweep_raw.csv");
    let mut w = csv::Writer::from_path(&raw).map_err(|e| Error::csv(&raw, e))?;
    w.write_record([
        "environment", "density_per_km2", "altitude_m", "sir_threshold_db", "alpha_max",
        "realization", "seed", "num_bs", "hole_fraction", "feasible", "status",
        "energy_rate", "handoff_rate", "disconnectivity_rate", "total_distance_m",
        "objective", "iterations",
    ])
    .map_err(|e| Error::csv(&raw, e))?;
    for r in &out.records {
        w.write_record([
            r.environment.to_string(),
            r.density_per_km2.to_string(),
            r.altitude_m.to_string(),
            r.sir_threshold_db.to_string(),
            r.alpha_max.to_string(),
            r.realization.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.num_bs.to_string(),
            r.hole_fraction.to_string(),
            r.feasible.to_string(),
            r.status.clone(),
            fmt(r.energy_rate),
            fmt(r.handoff_rate),
            fmt(r.disconnectivity_rate),
            fmt(r.total_distance_m),
            fmt(r.objective),
            r.iterations.to_string(),
        ])
        .map_err(|e| Error::csv(&raw, e))?;
    }
    w.flush().map_err(|e| Error::io(&raw, e))?;

    let sum = dir.join("sweep_summary.csv");
    let mut w = csv::Writer::from_path(&sum).map_err(|e| Error::csv(&sum, e))?;
    w.write_record([
        "environment", "density_per_km2", "altitude_m", "sir_threshold_db", "alpha_max",
        "runs", "feasible_runs", "mean_energy_rate", "mean_handoff_rate",
        "mean_disconnectivity_rate", "mean_hole_fraction",
    ])
    .map_err(|e| Error::csv(&sum, e))?;
    for s in &out.summary {
        w.write_record([
            s.environment.to_string(),
            s.density_per_km2.to_string(),
            s.altitude_m.to_string(),
            s.sir_threshold_db.to_string(),
            s.alpha_max.to_string(),
            s.runs.to_string(),
            s.feasible_runs.to_string(),
            fmt(s.mean_energy_rate),
            fmt(s.mean_handoff_rate),
            fmt(s.mean_disconnectivity_rate),
            fmt(s.mean_hole_fraction),
        ])
        .map_err(|e| Error::csv(&sum, e))?;
    }
    w.flush().map_err(|e| Error::io(&sum, e))?;

    if !timing {
        return Ok(vec![raw, sum]);
    }
    let path = dir.join("sweep_timing.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::csv(&path, e))?;
    w.write_record(["row", "wall_time_s"]).map_err(|e| Error::csv(&path, e))?;
    for (i, t) in out.wall_time_s.iter().enumerate() {
        w.write_record([i.to_string(), t.to_string()])
            .map_err(|e| Error::csv(&path, e))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(vec![raw, sum, path])
}
