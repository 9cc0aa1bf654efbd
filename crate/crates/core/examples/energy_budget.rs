//! Rotary-wing propulsion power against speed, and how far the battery
//! carries the UAV once takeoff and landing are paid for.
//!
//!     cargo run --example energy_budget

use aerotraj::energy::{available_energy_j, max_distance_m, propulsion_power_w, BatteryBudget, RotorcraftParams};

fn main() -> aerotraj::Result<()> {
    let p = RotorcraftParams::default();
    println!("{:>6} {:>10} {:>10}", "v_m_s", "power_w", "j_per_m");
    for v in [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 40.0, 50.0] {
        let w = propulsion_power_w(v, &p);
        let per_m = if v > 0.0 { format!("{:.2}", w / v) } else { "-".into() };
        println!("{v:>6} {w:>10.2} {per_m:>10}");
    }

    println!();
    println!("{:>6} {:>14} {:>12}", "h_m", "available_j", "d_max_km");
    for h in [100.0, 200.0, 300.0] {
        let budget = BatteryBudget::new(2.5e6, 30.0, h);
        let e = available_energy_j(&budget, &p)?;
        let d = max_distance_m(&budget, &p)?;
        println!("{h:>6} {e:>14.1} {:>12.2}", d / 1000.0);
    }
    Ok(())
}
