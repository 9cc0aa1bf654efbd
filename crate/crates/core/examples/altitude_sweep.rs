//! Energy and handoff rates against altitude on the reference layout,
//! driven by a mission config file (default `missions/fig3.cfg`).
//!
//!     cargo run --release --example altitude_sweep [config]

use std::path::PathBuf;

use aerotraj::harness::{run_sweep, ExperimentConfig};

fn main() -> aerotraj::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../missions/fig3.cfg"));
    let cfg = ExperimentConfig::load(&path, &[])?;
    let out = run_sweep(&cfg)?;

    println!("{:>6} {:>6} {:>12} {:>9} {:>9}", "h_m", "alpha", "energy_rate", "handoffs", "disc");
    for s in &out.summary {
        println!(
            "{:>6} {:>6} {:>12.5} {:>9.2} {:>9.3}",
            s.altitude_m, s.alpha_max, s.mean_energy_rate, s.mean_handoff_rate, s.mean_disconnectivity_rate
        );
    }
    let infeasible = out.records.iter().filter(|r| !r.feasible).count();
    if infeasible > 0 {
        println!("{infeasible} sweep points had no feasible trajectory");
    }
    Ok(())
}
