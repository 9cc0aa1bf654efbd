#![allow(dead_code)]

use std::path::PathBuf;

use aerotraj::coverage::{read_ids_csv, Cell, ConnectivityGrid, GridSpec};
use aerotraj::energy::{available_energy_j, flight_energy_j, BatteryBudget, RotorcraftParams};
use aerotraj::planner::{handoff_indicator, HandoffMode, MissionSpec, PlanResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

pub fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

pub fn load_grid(name: &str) -> ConnectivityGrid {
    let m = read_ids_csv(&repo_path(&format!("testdata/{name}"))).unwrap();
    ConnectivityGrid::from_ids(GridSpec::with_cells(m.nx, m.ny, 50.0, 100.0), m.ids).unwrap()
}

pub fn slack_budget(h: f64) -> BatteryBudget {
    BatteryBudget::new(2.5e6, 30.0, h)
}

/// Grid of `nx` by `ny` cells with roughly `hole_p` holes and `regions`
/// serving stations, from a fixed seed.
pub fn random_grid(seed: u64, nx: usize, ny: usize, regions: u32, hole_p: f64) -> ConnectivityGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids = (0..nx * ny)
        .map(|_| if rng.gen_bool(hole_p) { 0 } else { rng.gen_range(1..=regions) })
        .collect();
    ConnectivityGrid::from_ids(GridSpec::with_cells(nx, ny, 50.0, 100.0), ids).unwrap()
}

/// Independent check of a returned trajectory: re-walks it with plain
/// floating-point sums and checks every constraint of the mission.
pub fn rewalk(
    r: &PlanResult,
    grid: &ConnectivityGrid,
    m: &MissionSpec,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
) -> Result<(), String> {
    let t = &r.trajectory;
    if t.first() != Some(&m.start) || t.last() != Some(&m.end) {
        return Err("trajectory does not join START and END".into());
    }
    let spec = grid.spec();
    let (mut dist, mut disc, mut handoffs) = (0.0, 0.0, 0u32);
    for w in t.windows(2) {
        let (a, b): (Cell, Cell) = (w[0], w[1]);
        let dx = a.ix.abs_diff(b.ix);
        let dy = a.iy.abs_diff(b.iy);
        if dx > 1 || dy > 1 || dx + dy == 0 {
            return Err(format!("{a} -> {b} is not a single move"));
        }
        let d = spec.cell_size_m * ((dx * dx + dy * dy) as f64).sqrt();
        let holes = u8::from(grid.is_hole(a)) + u8::from(grid.is_hole(b));
        dist += d;
        disc += d * f64::from(holes) / 2.0;
        handoffs += handoff_indicator(grid.serving_id(a), grid.serving_id(b), m.handoff_mode);
    }
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(1.0);
    if !close(dist, r.total_distance_m) || !close(disc, r.disconnected_distance_m) {
        return Err(format!("distance {dist}/{disc} vs reported {}/{}", r.total_distance_m, r.disconnected_distance_m));
    }
    if handoffs != r.handoff_count {
        return Err(format!("{handoffs} handoffs vs reported {}", r.handoff_count));
    }
    let energy = flight_energy_j(budget.cruise_speed, dist, params).unwrap();
    if !close(energy, r.total_energy_j) {
        return Err(format!("energy {energy} vs reported {}", r.total_energy_j));
    }
    if disc > m.alpha_max * dist + 1e-9 {
        return Err(format!("disconnectivity {} above {}", disc / dist, m.alpha_max));
    }
    if energy > available_energy_j(budget, params).unwrap() * (1.0 + 1e-12) {
        return Err("battery budget exceeded".into());
    }
    let objective = m.w1 * energy + m.w2 * f64::from(handoffs);
    if !close(objective, r.objective) {
        return Err(format!("objective {objective} vs reported {}", r.objective));
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub alpha_grid: Vec<f64>,
    pub instance: Vec<Instance>,
}

#[derive(Debug, Deserialize)]
pub struct Instance {
    pub file: String,
    pub handoff_mode: HandoffMode,
    pub zero_gap: Vec<f64>,
}

pub fn manifest() -> Manifest {
    let text = std::fs::read_to_string(repo_path("testdata/instances.toml")).unwrap();
    toml::from_str(&text).unwrap()
}
