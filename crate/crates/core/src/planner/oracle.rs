//! Exact reference solvers used to validate the dynamic program.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::cost::PathCounts;
use super::{neighbors, MissionSpec, PlanResult, Problem, Step};
use crate::coverage::{Cell, ConnectivityGrid};
use crate::energy::{BatteryBudget, RotorcraftParams};
use crate::error::{Error, Result};

/// Largest grid the exhaustive oracle accepts.
pub const EXHAUSTIVE_CELL_LIMIT: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Branch-and-bound over every simple path; grids up to 6x6.
    Exhaustive,
    /// Label-setting shortest path on the weighted move graph; requires
    /// `alpha_max = 1` and a battery budget that does not bind.
    Relaxed,
}

pub fn oracle_plan(
    grid: &ConnectivityGrid,
    mission: &MissionSpec,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
    mode: OracleMode,
) -> Result<PlanResult> {
    let problem = Problem::new(grid, mission, budget, params)?;
    let (path, explored) = match mode {
        OracleMode::Exhaustive => exhaustive(&problem)?,
        OracleMode::Relaxed => relaxed(&problem)?,
    };
    let cells = path.into_iter().map(|i| grid.spec().cell(i)).collect();
    problem.evaluate(cells, explored, true, Vec::new())
}

fn octile_bound(from: Cell, to: Cell) -> PathCounts {
    let dx = from.ix.abs_diff(to.ix) as u32;
    let dy = from.iy.abs_diff(to.iy) as u32;
    PathCounts {
        axis: dx.max(dy) - dx.min(dy),
        diagonal: dx.min(dy),
        ..PathCounts::default()
    }
}

struct Search<'p, 'a> {
    problem: &'p Problem<'a>,
    adjacency: Vec<Vec<(usize, Step)>>,
    end: usize,
    end_cell: Cell,
    visited: u64,
    path: Vec<usize>,
    best: Option<(PathCounts, Vec<usize>)>,
    explored: usize,
}

impl Search<'_, '_> {
    fn dfs(&mut self, at: usize, counts: PathCounts) {
        self.explored += 1;
        let cost = &self.problem.cost;
        if at == self.end {
            if cost.is_feasible(&counts)
                && self
                    .best
                    .as_ref()
                    .is_none_or(|(b, _)| cost.compare(&counts, b) == Ordering::Less)
            {
                self.best = Some((counts, self.path.clone()));
            }
            return;
        }
        let spec = self.problem.grid.spec();
        let here = spec.cell(at);
        for k in 0..self.adjacency[at].len() {
            let (next, step) = self.adjacency[at][k];
            if self.visited & (1u64 << next) != 0 {
                continue;
            }
            let next_cell = spec.cell(next);
            let c = counts.plus(&self.problem.edge(here, next_cell, step));
            let bound = c.plus(&octile_bound(next_cell, self.end_cell));
            if cost.distance_m(&bound) > cost.d_max {
                continue;
            }
            // Disconnected distance never shrinks and total distance cannot
            // exceed the battery range.
            if cost.disconnected_m(&c) > cost.alpha_max * cost.d_max {
                continue;
            }
            if let Some((b, _)) = &self.best {
                if cost.compare(&bound, b) == Ordering::Greater {
                    continue;
                }
            }
            self.visited |= 1u64 << next;
            self.path.push(next);
            self.dfs(next, c);
            self.path.pop();
            self.visited &= !(1u64 << next);
        }
    }
}

fn exhaustive(problem: &Problem<'_>) -> Result<(Vec<usize>, usize)> {
    let spec = problem.grid.spec();
    let n = spec.len();
    if n > EXHAUSTIVE_CELL_LIMIT {
        return Err(Error::GridTooLarge {
            cells: n,
            limit: EXHAUSTIVE_CELL_LIMIT,
        });
    }
    let adjacency = (0..n)
        .map(|i| {
            neighbors(spec.cell(i), spec)
                .into_iter()
                .map(|(c, s, _)| (spec.index(c), s))
                .collect()
        })
        .collect();
    let start = spec.index(problem.mission.start);
    let mut search = Search {
        problem,
        adjacency,
        end: spec.index(problem.mission.end),
        end_cell: problem.mission.end,
        visited: 1u64 << start,
        path: vec![start],
        best: None,
        explored: 0,
    };
    search.dfs(start, PathCounts::default());
    match search.best {
        Some((_, path)) => Ok((path, search.explored)),
        None => Err(Error::InfeasibleMission(
            "no simple path satisfies the battery and disconnectivity limits".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    objective: f64,
    handoffs: u32,
    dist: f64,
    index: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.objective
            .total_cmp(&other.objective)
            .then(self.handoffs.cmp(&other.handoffs))
            .then(self.dist.total_cmp(&other.dist))
            .then(self.index.cmp(&other.index))
    }
}

fn relaxed(problem: &Problem<'_>) -> Result<(Vec<usize>, usize)> {
    let cost = &problem.cost;
    if cost.alpha_max < 1.0 {
        return Err(Error::Config(format!(
            "relaxed oracle needs alpha_max = 1, got {}",
            cost.alpha_max
        )));
    }
    let spec = problem.grid.spec();
    let n = spec.len();
    let start = spec.index(problem.mission.start);
    let end = spec.index(problem.mission.end);
    let mut best: Vec<Option<PathCounts>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    let entry = |c: &PathCounts, index| Entry {
        objective: cost.objective(c),
        handoffs: c.handoffs,
        dist: cost.distance_m(c),
        index,
    };
    best[start] = Some(PathCounts::default());
    heap.push(Reverse(entry(&PathCounts::default(), start)));
    let mut explored = 0;
    while let Some(Reverse(e)) = heap.pop() {
        let u = e.index;
        if settled[u] {
            continue;
        }
        settled[u] = true;
        explored += 1;
        if u == end {
            break;
        }
        let here = spec.cell(u);
        let counts = best[u].expect("queued cells carry a label");
        for (nb, step, _) in neighbors(here, spec) {
            let v = spec.index(nb);
            if settled[v] {
                continue;
            }
            let cand = counts.plus(&problem.edge(here, nb, step));
            if best[v].is_none_or(|b| cost.compare(&cand, &b) == Ordering::Less) {
                best[v] = Some(cand);
                pred[v] = Some(u);
                heap.push(Reverse(entry(&cand, v)));
            }
        }
    }
    let Some(found) = best[end] else {
        return Err(Error::InfeasibleMission("END is unreachable".into()));
    };
    if cost.distance_m(&found) > cost.d_max {
        return Err(Error::Config(
            "relaxed oracle needs a battery budget that does not bind".into(),
        ));
    }
    let mut path = vec![end];
    let mut at = end;
    while let Some(p) = pred[at] {
        path.push(p);
        at = p;
    }
    path.reverse();
    Ok((path, explored))
}
