//! How far the stage-wise dynamic program lands from the exact optimum on
//! the small shipped instances, across disconnectivity tolerances.
//!
//!     cargo run --release --example oracle_gap

use std::path::Path;

use aerotraj::coverage::{read_ids_csv, ConnectivityGrid, GridSpec};
use aerotraj::energy::{BatteryBudget, RotorcraftParams};
use aerotraj::planner::{oracle_plan, plan, MissionSpec, OracleMode};

fn show(r: &aerotraj::Result<aerotraj::planner::PlanResult>) -> String {
    match r {
        Ok(p) => format!("{:.1}", p.objective),
        Err(_) => "infeasible".into(),
    }
}

fn main() -> aerotraj::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../testdata");
    let params = RotorcraftParams::default();
    let budget = BatteryBudget::new(2.5e6, 30.0, 100.0);

    for name in ["4x4.csv", "4x5_sealed.csv", "5x5_block.csv", "5x5_wall.csv", "5x5_mixed.csv"] {
        let m = read_ids_csv(&root.join(name))?;
        let grid = ConnectivityGrid::from_ids(GridSpec::with_cells(m.nx, m.ny, 50.0, 100.0), m.ids)?;
        println!("{name}");
        for alpha in [0.0, 0.1, 0.2, 0.3, 0.5, 1.0] {
            let mission = MissionSpec::corner_to_corner(grid.spec(), alpha);
            let dp = plan(&grid, &mission, &budget, &params, None);
            let exact = oracle_plan(&grid, &mission, &budget, &params, OracleMode::Exhaustive);
            let gap = match (&dp, &exact) {
                (Ok(d), Ok(o)) => format!("{:.1}", d.objective - o.objective),
                (Err(_), Ok(_)) => "dp missed a feasible path".into(),
                _ => "-".into(),
            };
            println!("  alpha {alpha:<4} dp {:>12} exact {:>12} gap {gap}", show(&dp), show(&exact));
        }
    }
    Ok(())
}
