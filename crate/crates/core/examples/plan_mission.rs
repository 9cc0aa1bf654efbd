//! Corner-to-corner delivery over the reference layout for several
//! disconnectivity tolerances. Prints the metrics and draws each path on
//! the connectivity map.
//!
//!     cargo run --release --example plan_mission [altitude_m]

use std::collections::HashSet;

use aerotraj::channel::{Environment, EnvironmentKind};
use aerotraj::coverage::{build_grid, layouts, Deployment, GridSpec};
use aerotraj::energy::{BatteryBudget, RotorcraftParams};
use aerotraj::planner::{metrics, plan, MissionSpec};

fn main() -> aerotraj::Result<()> {
    let h: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(120.0);
    let deployment = Deployment::from_positions(&layouts::FIG1_LAYOUT, Environment::preset(EnvironmentKind::UMa));
    let grid = build_grid(&GridSpec::square(layouts::FIG1_SIDE_M, 50.0, h), &deployment)?;
    let params = RotorcraftParams::default();
    let budget = BatteryBudget::new(2.5e6, 30.0, h);

    for alpha in [0.0, 0.1, 0.3] {
        let mission = MissionSpec::corner_to_corner(grid.spec(), alpha);
        let result = match plan(&grid, &mission, &budget, &params, None) {
            Ok(r) => r,
            Err(e) => {
                println!("alpha_max = {alpha}: {e}\n");
                continue;
            }
        };
        let m = metrics(&result, &budget, &params)?;
        println!(
            "alpha_max = {alpha}: {:.0} m, energy rate {:.4}, {} handoffs, {:.1}% disconnected, {} stages",
            result.total_distance_m,
            m.energy_rate,
            result.handoff_count,
            100.0 * m.disconnectivity_rate,
            result.iterations_used
        );

        let on_path: HashSet<_> = result.trajectory.iter().copied().collect();
        let spec = grid.spec();
        for iy in (0..spec.ny()).rev() {
            let line: String = (0..spec.nx())
                .map(|ix| {
                    let c = aerotraj::coverage::Cell::new(ix, iy);
                    match (on_path.contains(&c), grid.is_hole(c)) {
                        (true, true) => '!',
                        (true, false) => '*',
                        (false, true) => '.',
                        (false, false) => ' ',
                    }
                })
                .collect();
            println!("  |{line}|");
        }
        println!();
    }
    Ok(())
}
