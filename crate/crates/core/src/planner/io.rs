//! Plan output files: one row per waypoint plus a one-row summary.

use std::path::Path;

use super::{handoff_indicator, HandoffMode, MissionMetrics, PlanResult};
use crate::coverage::GridSpec;
use crate::energy::{flight_energy_j, RotorcraftParams};
use crate::error::{Error, Result};

pub const WAYPOINT_HEADER: [&str; 6] = [
    "cell_x_m",
    "cell_y_m",
    "serving_id",
    "cum_dist_m",
    "cum_energy_j",
    "handoff_flag",
];

pub const SUMMARY_HEADER: [&str; 6] = [
    "objective",
    "energy_rate",
    "handoff_rate",
    "disconnectivity_rate",
    "feasible",
    "iterations",
];

pub fn write_waypoints(
    path: &Path,
    result: &PlanResult,
    spec: &GridSpec,
    speed: f64,
    params: &RotorcraftParams,
    mode: HandoffMode,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    w.write_record(WAYPOINT_HEADER).map_err(|e| Error::csv(path, e))?;
    let mut cum = 0.0;
    let mut prev: Option<(f64, f64, u32)> = None;
    for (&cell, &id) in result.trajectory.iter().zip(&result.serving_ids) {
        let (x, y) = spec.center(cell);
        let mut flag = 0;
        if let Some((px, py, pid)) = prev {
            cum += (x - px).hypot(y - py);
            flag = handoff_indicator(pid, id, mode);
        }
        let energy = flight_energy_j(speed, cum, params)?;
        w.write_record([
            x.to_string(),
            y.to_string(),
            id.to_string(),
            cum.to_string(),
            energy.to_string(),
            flag.to_string(),
        ])
        .map_err(|e| Error::csv(path, e))?;
        prev = Some((x, y, id));
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_plan_summary(path: &Path, result: &PlanResult, metrics: &MissionMetrics) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    w.write_record(SUMMARY_HEADER).map_err(|e| Error::csv(path, e))?;
    w.write_record([
        result.objective.to_string(),
        metrics.energy_rate.to_string(),
        metrics.handoff_rate.to_string(),
        metrics.disconnectivity_rate.to_string(),
        result.feasible.to_string(),
        result.iterations_used.to_string(),
    ])
    .map_err(|e| Error::csv(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes `<stem>_waypoints.csv` and `<stem>_summary.csv` into `dir`.
#[allow(clippy::too_many_arguments)]
pub fn write_plan(
    dir: &Path,
    stem: &str,
    result: &PlanResult,
    metrics: &MissionMetrics,
    spec: &GridSpec,
    speed: f64,
    params: &RotorcraftParams,
    mode: HandoffMode,
) -> Result<()> {
    write_waypoints(&dir.join(format!("{stem}_waypoints.csv")), result, spec, speed, params, mode)?;
    write_plan_summary(&dir.join(format!("{stem}_summary.csv")), result, metrics)
}
