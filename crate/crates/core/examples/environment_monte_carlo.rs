//! Average consumed energy rate at 100 m for rural, urban-macro and
//! urban-micro deployments, over seeded random station layouts.
//!
//!     cargo run --release --example environment_monte_carlo [runs]

use std::path::PathBuf;

use aerotraj::channel::EnvironmentKind;
use aerotraj::harness::{run_sweep, ExperimentConfig};

fn main() -> aerotraj::Result<()> {
    let runs: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(50);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../missions/fig6.cfg");
    let cfg = ExperimentConfig::load(&path, &[("scenario.monte_carlo_runs".into(), runs.to_string())])?;
    let out = run_sweep(&cfg)?;

    print!("{:>6}", "alpha");
    for kind in EnvironmentKind::ALL {
        print!(" {:>10}", kind.as_str());
    }
    println!();
    for &alpha in &cfg.sweep.alpha_max {
        print!("{alpha:>6}");
        for kind in EnvironmentKind::ALL {
            let s = out.find(kind, 100.0, 0.0, alpha).expect("sweep point present");
            print!(" {:>10.5}", s.mean_energy_rate);
        }
        println!();
    }
    println!("({runs} realizations; means over deployments feasible at every alpha)");
    Ok(())
}
