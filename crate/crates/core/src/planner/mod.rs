//! Energy- and handoff-aware trajectory planning on a connectivity grid.
//!
//! The UAV moves between centers of 8-connected cells at a fixed altitude
//! and speed. A trajectory is scored by `w1 * energy + w2 * handoffs` and
//! must respect the battery budget and a bound `alpha_max` on the fraction
//! of distance flown inside coverage holes.
//!
//! [`plan`] is the stage-wise dynamic program. [`oracle_plan`] solves the
//! same problem exactly, either by exhaustive enumeration on small grids or
//! by a label-setting search when the disconnectivity bound is vacuous.

mod cost;
mod dp;
mod io;
mod oracle;

pub use cost::{CellLabel, PathCounts};
pub use dp::{plan, plan_observed};
pub use io::{write_plan, write_plan_summary, write_waypoints};
pub use oracle::{oracle_plan, OracleMode, EXHAUSTIVE_CELL_LIMIT};

use serde::{Deserialize, Serialize};

use crate::coverage::{Cell, ConnectivityGrid, GridSpec};
use crate::energy::{flight_energy_j, BatteryBudget, RotorcraftParams};
use crate::error::{Error, Result};

/// Which serving-id transitions count as handoffs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HandoffMode {
    /// Any change of serving id, hole transitions included.
    #[default]
    Formal,
    /// Only changes between two covered cells (both ids non-zero).
    Prose,
}

impl std::str::FromStr for HandoffMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "formal" => Ok(Self::Formal),
            "prose" => Ok(Self::Prose),
            _ => Err(Error::Config(format!("unknown handoff mode {s:?}"))),
        }
    }
}

/// 1 when moving from serving id `prev` to `next` is a handoff, else 0.
pub fn handoff_indicator(prev: u32, next: u32, mode: HandoffMode) -> u32 {
    let changed = prev != next;
    let counted = match mode {
        HandoffMode::Formal => changed && !(prev == 0 && next == 0),
        HandoffMode::Prose => changed && prev != 0 && next != 0,
    };
    u32::from(counted)
}

/// Kind of a single grid move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Axis,
    Diagonal,
}

/// Neighbours of `cell` with their step kind and length, ordered by linear
/// cell index. Interior cells have 8, edge cells 5 and corners 3.
pub fn neighbors(cell: Cell, spec: &GridSpec) -> Vec<(Cell, Step, f64)> {
    let (nx, ny) = (spec.nx() as isize, spec.ny() as isize);
    let gamma = spec.cell_size_m;
    let mut out = Vec::with_capacity(8);
    for dy in -1isize..=1 {
        for dx in -1isize..=1 {
            if dx == 0 && dy == 0 {
                continue;
            }
            let (x, y) = (cell.ix as isize + dx, cell.iy as isize + dy);
            if x < 0 || y < 0 || x >= nx || y >= ny {
                continue;
            }
            let (step, d) = if dx != 0 && dy != 0 {
                (Step::Diagonal, gamma * std::f64::consts::SQRT_2)
            } else {
                (Step::Axis, gamma)
            };
            out.push((Cell::new(x as usize, y as usize), step, d));
        }
    }
    out
}

/// Mission definition on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionSpec {
    pub start: Cell,
    pub end: Cell,
    /// Tolerated fraction of distance flown inside coverage holes.
    pub alpha_max: f64,
    /// Weight of the propulsion energy (per joule).
    pub w1: f64,
    /// Weight of one handoff.
    pub w2: f64,
    pub handoff_mode: HandoffMode,
}

impl MissionSpec {
    pub fn new(start: Cell, end: Cell, alpha_max: f64) -> Self {
        Self {
            start,
            end,
            alpha_max,
            w1: 1.0,
            w2: 1.0,
            handoff_mode: HandoffMode::default(),
        }
    }

    /// Mission between the south-west and north-east corner cells.
    pub fn corner_to_corner(spec: &GridSpec, alpha_max: f64) -> Self {
        let (sw, ne) = spec.corners();
        Self::new(sw, ne, alpha_max)
    }

    pub fn validate(&self, spec: &GridSpec) -> Result<()> {
        if self.start == self.end {
            return Err(Error::Config("START and END cells must differ".into()));
        }
        for (name, c) in [("START", self.start), ("END", self.end)] {
            if !spec.contains(c) {
                return Err(Error::Config(format!(
                    "{name} cell {c} is outside the {}x{} grid",
                    spec.nx(),
                    spec.ny()
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.alpha_max) {
            return Err(Error::Config(format!(
                "alpha_max must lie in [0, 1], got {}",
                self.alpha_max
            )));
        }
        if !(self.w1 >= 0.0 && self.w2 >= 0.0 && self.w1.is_finite() && self.w2.is_finite()) {
            return Err(Error::Config("objective weights must be non-negative".into()));
        }
        Ok(())
    }
}

/// A planned trajectory and its cost breakdown.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanResult {
    pub trajectory: Vec<Cell>,
    pub serving_ids: Vec<u32>,
    pub total_distance_m: f64,
    pub disconnected_distance_m: f64,
    /// Horizontal propulsion energy between START and END (J).
    pub total_energy_j: f64,
    pub handoff_count: u32,
    pub disconnectivity_rate: f64,
    pub objective: f64,
    pub feasible: bool,
    pub iterations_used: usize,
    /// False when the stage budget ran out before the labels settled.
    pub converged: bool,
    /// END objective after each stage (infinite until END is reached).
    pub end_objective_trace: Vec<f64>,
}

/// Mission-level rates of a planned trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MissionMetrics {
    /// (takeoff + landing + horizontal energy) / mission energy.
    pub energy_rate: f64,
    /// Number of handoffs along the trajectory.
    pub handoff_rate: f64,
    /// Distance in holes / total horizontal distance.
    pub disconnectivity_rate: f64,
}

/// Computes the consumed-energy rate, handoff count and disconnectivity
/// rate of a trajectory.
pub fn metrics(
    result: &PlanResult,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
) -> Result<MissionMetrics> {
    let vertical = budget.vertical_energy_j(params)?;
    Ok(MissionMetrics {
        energy_rate: (vertical + result.total_energy_j) / budget.mission_energy_j,
        handoff_rate: f64::from(result.handoff_count),
        disconnectivity_rate: result.disconnectivity_rate,
    })
}

/// Shared problem data for one solve.
#[derive(Debug, Clone)]
pub(crate) struct Problem<'a> {
    pub grid: &'a ConnectivityGrid,
    pub mission: &'a MissionSpec,
    pub cost: cost::CostModel,
}

impl<'a> Problem<'a> {
    pub fn new(
        grid: &'a ConnectivityGrid,
        mission: &'a MissionSpec,
        budget: &BatteryBudget,
        params: &RotorcraftParams,
    ) -> Result<Self> {
        grid.spec().validate()?;
        mission.validate(grid.spec())?;
        params.validate()?;
        let d_max = crate::energy::max_distance_m(budget, params)?;
        let cost = cost::CostModel::new(
            grid.spec().cell_size_m,
            budget.cruise_speed,
            d_max,
            mission,
            params,
        )?;
        Ok(Self { grid, mission, cost })
    }

    /// Counts of one move from `from` to `to`.
    pub fn edge(&self, from: Cell, to: Cell, step: Step) -> PathCounts {
        let (a, b) = (self.grid.serving_id(from), self.grid.serving_id(to));
        PathCounts::edge(step, a == 0, b == 0, handoff_indicator(a, b, self.mission.handoff_mode))
    }

    /// Re-walks a cell sequence and assembles the public result.
    pub fn evaluate(&self, trajectory: Vec<Cell>, iterations_used: usize, converged: bool, trace: Vec<f64>) -> Result<PlanResult> {
        let mut counts = PathCounts::default();
        for pair in trajectory.windows(2) {
            let step = step_between(pair[0], pair[1]).ok_or_else(|| {
                Error::InfeasibleMission(format!("cells {} and {} are not adjacent", pair[0], pair[1]))
            })?;
            counts = counts.plus(&self.edge(pair[0], pair[1], step));
        }
        let dist = self.cost.distance_m(&counts);
        let disc = self.cost.disconnected_m(&counts);
        Ok(PlanResult {
            serving_ids: trajectory.iter().map(|&c| self.grid.serving_id(c)).collect(),
            trajectory,
            total_distance_m: dist,
            disconnected_distance_m: disc,
            total_energy_j: flight_energy_j(self.cost.speed, dist, &self.cost.params)?,
            handoff_count: counts.handoffs,
            disconnectivity_rate: if dist > 0.0 { disc / dist } else { 0.0 },
            objective: self.cost.objective(&counts),
            feasible: self.cost.is_feasible(&counts),
            iterations_used,
            converged,
            end_objective_trace: trace,
        })
    }
}

/// Step kind between two 8-adjacent cells, `None` if they are not adjacent.
pub fn step_between(a: Cell, b: Cell) -> Option<Step> {
    let dx = a.ix.abs_diff(b.ix);
    let dy = a.iy.abs_diff(b.iy);
    match (dx, dy) {
        (1, 1) => Some(Step::Diagonal),
        (1, 0) | (0, 1) => Some(Step::Axis),
        _ => None,
    }
}
