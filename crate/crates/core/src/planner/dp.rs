//! Stage-wise dynamic program over 8-connected moves.
//!
//! Stage `t` reads the labels of stage `t - 1` and relaxes every cell over
//! its neighbours. A candidate replaces the stored label of a cell when it
//!
//! * keeps the path within the maximum travel distance,
//! * keeps the disconnected-distance ratio within `alpha_max`,
//! * has no more handoffs than the label the cell held at the start of the
//!   stage, and
//! * ranks strictly better (objective, then handoffs, then distance).
//!
//! The ratio constraint depends on the whole prefix, so a single label per
//! cell is exact only when that constraint is slack.

use std::cmp::Ordering;

use super::cost::{CellLabel, PathCounts};
use super::{neighbors, PlanResult, Problem, MissionSpec};
use crate::coverage::{Cell, ConnectivityGrid};
use crate::energy::{BatteryBudget, RotorcraftParams};
use crate::error::{Error, Result};

type Observer<'a> = &'a mut dyn FnMut(usize, &[Option<CellLabel>]);

#[derive(Debug, Clone, Copy)]
struct Label {
    counts: PathCounts,
    pred: Option<usize>,
}

/// Plans a trajectory. `max_iter` defaults to the number of grid cells.
pub fn plan(
    grid: &ConnectivityGrid,
    mission: &MissionSpec,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
    max_iter: Option<usize>,
) -> Result<PlanResult> {
    run(grid, mission, budget, params, max_iter, None)
}

/// [`plan`] with a callback receiving every stage's labels.
pub fn plan_observed(
    grid: &ConnectivityGrid,
    mission: &MissionSpec,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
    max_iter: Option<usize>,
    observer: &mut dyn FnMut(usize, &[Option<CellLabel>]),
) -> Result<PlanResult> {
    run(grid, mission, budget, params, max_iter, Some(observer))
}

fn run(
    grid: &ConnectivityGrid,
    mission: &MissionSpec,
    budget: &BatteryBudget,
    params: &RotorcraftParams,
    max_iter: Option<usize>,
    mut observer: Option<Observer<'_>>,
) -> Result<PlanResult> {
    let problem = Problem::new(grid, mission, budget, params)?;
    let spec = grid.spec();
    let n = spec.len();
    let max_iter = max_iter.unwrap_or(n).max(1);
    let start = spec.index(mission.start);
    let end = spec.index(mission.end);
    let cost = &problem.cost;

    let adjacency: Vec<Vec<(usize, PathCounts)>> = (0..n)
        .map(|j| {
            let cell = spec.cell(j);
            neighbors(cell, spec)
                .into_iter()
                .map(|(nb, step, _)| (spec.index(nb), problem.edge(nb, cell, step)))
                .collect()
        })
        .collect();

    let mut labels: Vec<Option<Label>> = vec![None; n];
    labels[start] = Some(Label {
        counts: PathCounts::default(),
        pred: None,
    });
    // Per cell: (stage, predecessor) for every accepted update.
    let mut history: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut trace = Vec::new();
    let mut stages = 0;
    let mut converged = false;

    if let Some(obs) = observer.as_deref_mut() {
        obs(0, &export(&labels, cost));
    }

    while stages < max_iter {
        stages += 1;
        let prev = labels.clone();
        let mut changed = false;
        for (j, adj) in adjacency.iter().enumerate() {
            let held = prev[j];
            let mut best = held;
            let mut updated = false;
            for &(i, edge) in adj {
                let Some(from) = prev[i] else { continue };
                let cand = from.counts.plus(&edge);
                if !cost.is_feasible(&cand) {
                    continue;
                }
                if held.is_some_and(|h| cand.handoffs > h.counts.handoffs) {
                    continue;
                }
                let better = best.is_none_or(|b| cost.compare(&cand, &b.counts) == Ordering::Less);
                if better {
                    best = Some(Label {
                        counts: cand,
                        pred: Some(i),
                    });
                    updated = true;
                }
            }
            if updated {
                labels[j] = best;
                history[j].push((stages, best.and_then(|b| b.pred).expect("updated label has a predecessor")));
                changed = true;
            }
        }
        trace.push(labels[end].map_or(f64::INFINITY, |l| cost.objective(&l.counts)));
        if let Some(obs) = observer.as_deref_mut() {
            obs(stages, &export(&labels, cost));
        }
        if !changed {
            converged = true;
            break;
        }
    }

    if labels[end].is_none() {
        return Err(if converged {
            Error::InfeasibleMission(format!(
                "no trajectory from {} to {} satisfies the battery and disconnectivity limits",
                mission.start, mission.end
            ))
        } else {
            Error::IterationBudgetExhausted { max_iter }
        });
    }

    let trajectory = extract_path(&history, start, end, stages, spec.len())
        .into_iter()
        .map(|i| spec.cell(i))
        .collect::<Vec<Cell>>();
    let result = problem.evaluate(trajectory, stages, converged, trace)?;
    debug_assert_eq!(
        result.objective.to_bits(),
        cost.objective(&labels[end].expect("END labelled").counts).to_bits()
    );
    Ok(result)
}

/// Follows predecessors backwards. The label a cell held at stage `s` was
/// built from its predecessor's label at stage `s - 1`, i.e. the last update
/// of that predecessor at or before `s - 1`.
fn extract_path(
    history: &[Vec<(usize, usize)>],
    start: usize,
    end: usize,
    last_stage: usize,
    n: usize,
) -> Vec<usize> {
    let mut path = vec![end];
    let mut cell = end;
    let mut limit = last_stage;
    while cell != start {
        let (stage, pred) = *history[cell]
            .iter()
            .rev()
            .find(|(s, _)| *s <= limit)
            .expect("every labelled cell except START has an update");
        path.push(pred);
        cell = pred;
        limit = stage - 1;
        debug_assert!(path.len() <= n * last_stage + 1);
    }
    path.reverse();
    path
}

fn export(labels: &[Option<Label>], cost: &super::cost::CostModel) -> Vec<Option<CellLabel>> {
    labels
        .iter()
        .map(|l| l.map(|l| cost.label(&l.counts, l.pred)))
        .collect()
}
