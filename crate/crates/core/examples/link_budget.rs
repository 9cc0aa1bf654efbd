//! Received power from one three-sector station to a UAV flying away from
//! it, for each propagation environment.
//!
//!     cargo run --example link_budget [altitude_m]

use aerotraj::channel::{mean_pathloss_db, BaseStation, Environment, EnvironmentKind, LinkGeometry};

fn main() -> aerotraj::Result<()> {
    let h: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100.0);
    for kind in EnvironmentKind::ALL {
        let env = Environment::preset(kind);
        let bs = BaseStation::new(1, 0.0, 0.0, env.bs_height_m);
        println!("{kind} (station at {} m, UAV at {h} m)", env.bs_height_m);
        println!("{:>8} {:>8} {:>10} {:>8} {:>10}", "d2d_m", "p_los", "pathloss", "sector", "rx_dbm");
        for d in [50.0, 100.0, 250.0, 500.0, 1000.0, 2000.0] {
            // Along the first sector's boresight.
            let az = bs.sector_boresights_deg[0].to_radians();
            let uav = [d * az.cos(), d * az.sin(), h];
            let geom = LinkGeometry::between(&bs, uav)?;
            let p_los = env.los_probability(d, h)?;
            let pl = mean_pathloss_db(&geom, h, &env)?;
            let (rx, sector) = bs.received_power_dbm(uav, &env)?;
            println!("{d:>8} {p_los:>8.3} {pl:>10.2} {sector:>8} {rx:>10.2}");
        }
        println!();
    }
    Ok(())
}
