//! Poisson deployments for the three environments and the share of the
//! airspace left without a usable link.
//!
//!     cargo run --release --example random_deployment [seed]

use aerotraj::channel::{Environment, EnvironmentKind};
use aerotraj::coverage::{build_grid, deploy_random, Area, GridSpec};
use aerotraj::harness::derive_seed;

fn main() -> aerotraj::Result<()> {
    let master: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let area = Area::square(2000.0);
    let densities = [(EnvironmentKind::RMa, 0.25), (EnvironmentKind::UMa, 1.0), (EnvironmentKind::UMi, 2.5)];
    let runs = 20;

    println!("{:>4} {:>10} {:>8} {:>12} {:>12}", "env", "per_km2", "mean_bs", "holes_100m", "holes_200m");
    for (kind, density) in densities {
        let env = Environment::preset(kind);
        let (mut bs, mut lo, mut hi) = (0.0, 0.0, 0.0);
        for k in 0..runs {
            let dep = deploy_random(&area, density, env, derive_seed(master, k))?;
            bs += f64::from(dep.num_bs());
            lo += build_grid(&GridSpec::square(2000.0, 100.0, 100.0), &dep)?.hole_fraction();
            hi += build_grid(&GridSpec::square(2000.0, 100.0, 200.0), &dep)?.hole_fraction();
        }
        let n = runs as f64;
        println!("{:>4} {density:>10} {:>8.2} {:>12.3} {:>12.3}", kind.as_str(), bs / n, lo / n, hi / n);
    }
    Ok(())
}
