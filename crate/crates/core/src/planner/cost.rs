//! Integer path accounting. Every cost is a deterministic function of the
//! move counts, so two solvers that find the same counts report bit-equal
//! objectives.

use std::cmp::Ordering;

use serde::Serialize;

use super::{MissionSpec, Step};
use crate::energy::{flight_energy_j, propulsion_power_w, RotorcraftParams};
use crate::error::Result;

/// Move counts accumulated along a path.
///
/// A move with one endpoint in a hole charges half its length to the
/// disconnected distance, a move with both endpoints in holes all of it;
/// this is tracked in half-moves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PathCounts {
    pub axis: u32,
    pub diagonal: u32,
    pub hole_axis_halves: u32,
    pub hole_diagonal_halves: u32,
    pub handoffs: u32,
}

impl PathCounts {
    pub fn edge(step: Step, from_hole: bool, to_hole: bool, handoff: u32) -> Self {
        let halves = u32::from(from_hole) + u32::from(to_hole);
        match step {
            Step::Axis => Self {
                axis: 1,
                hole_axis_halves: halves,
                handoffs: handoff,
                ..Self::default()
            },
            Step::Diagonal => Self {
                diagonal: 1,
                hole_diagonal_halves: halves,
                handoffs: handoff,
                ..Self::default()
            },
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            axis: self.axis + other.axis,
            diagonal: self.diagonal + other.diagonal,
            hole_axis_halves: self.hole_axis_halves + other.hole_axis_halves,
            hole_diagonal_halves: self.hole_diagonal_halves + other.hole_diagonal_halves,
            handoffs: self.handoffs + other.handoffs,
        }
    }
}

/// Per-solve constants that turn counts into metres, joules and objective.
#[derive(Debug, Clone)]
pub(crate) struct CostModel {
    pub axis_m: f64,
    pub diagonal_m: f64,
    pub axis_energy_j: f64,
    pub diagonal_energy_j: f64,
    pub speed: f64,
    pub d_max: f64,
    pub alpha_max: f64,
    pub w1: f64,
    pub w2: f64,
    pub params: RotorcraftParams,
}

impl CostModel {
    pub fn new(
        cell_size_m: f64,
        speed: f64,
        d_max: f64,
        mission: &MissionSpec,
        params: &RotorcraftParams,
    ) -> Result<Self> {
        let axis_m = cell_size_m;
        let diagonal_m = cell_size_m * std::f64::consts::SQRT_2;
        Ok(Self {
            axis_m,
            diagonal_m,
            axis_energy_j: flight_energy_j(speed, axis_m, params)?,
            diagonal_energy_j: flight_energy_j(speed, diagonal_m, params)?,
            speed,
            d_max,
            alpha_max: mission.alpha_max,
            w1: mission.w1,
            w2: mission.w2,
            params: params.clone(),
        })
    }

    pub fn distance_m(&self, c: &PathCounts) -> f64 {
        f64::from(c.axis) * self.axis_m + f64::from(c.diagonal) * self.diagonal_m
    }

    pub fn disconnected_m(&self, c: &PathCounts) -> f64 {
        (f64::from(c.hole_axis_halves) * self.axis_m
            + f64::from(c.hole_diagonal_halves) * self.diagonal_m)
            / 2.0
    }

    pub fn energy_j(&self, c: &PathCounts) -> f64 {
        f64::from(c.axis) * self.axis_energy_j + f64::from(c.diagonal) * self.diagonal_energy_j
    }

    pub fn objective(&self, c: &PathCounts) -> f64 {
        self.w1 * self.energy_j(c) + self.w2 * f64::from(c.handoffs)
    }

    /// Battery and disconnectivity constraints on a (partial) path.
    pub fn is_feasible(&self, c: &PathCounts) -> bool {
        let dist = self.distance_m(c);
        dist <= self.d_max && self.disconnected_m(c) <= self.alpha_max * dist
    }

    /// Ranking used everywhere: objective, then handoffs, then distance.
    pub fn compare(&self, a: &PathCounts, b: &PathCounts) -> Ordering {
        self.objective(a)
            .total_cmp(&self.objective(b))
            .then(a.handoffs.cmp(&b.handoffs))
            .then(self.distance_m(a).total_cmp(&self.distance_m(b)))
    }

    pub fn label(&self, c: &PathCounts, predecessor: Option<usize>) -> CellLabel {
        let dist_m = self.distance_m(c);
        CellLabel {
            objective: self.objective(c),
            dist_m,
            disc_m: self.disconnected_m(c),
            energy_j: propulsion_power_w(self.speed, &self.params) * dist_m / self.speed,
            handoffs: c.handoffs,
            predecessor,
            counts: *c,
        }
    }
}

/// Best-known way to reach one cell at some DP stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellLabel {
    pub objective: f64,
    pub dist_m: f64,
    pub disc_m: f64,
    pub energy_j: f64,
    pub handoffs: u32,
    /// Linear index of the cell this label was extended from.
    pub predecessor: Option<usize>,
    pub counts: PathCounts,
}
