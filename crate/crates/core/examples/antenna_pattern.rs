//! Vertical cut of the sectorized base-station antenna: element pattern,
//! array factor and their sum, as seen by a UAV along the sector boresight.
//!
//!     cargo run --example antenna_pattern

use aerotraj::channel::{array_factor_db, element_gain_db, AntennaConfig};

fn main() {
    let cfg = AntennaConfig::default();
    println!(
        "{} elements, {} deg down-tilt, {} dB peak element gain",
        cfg.n_elements, cfg.downtilt_deg, cfg.g_max_db
    );
    println!("{:>8} {:>10} {:>10} {:>10}", "el_deg", "element", "array", "total");
    for el in (-90..=90).step_by(5) {
        let rad = f64::from(el).to_radians();
        let g = element_gain_db(0.0, rad, &cfg);
        let af = array_factor_db(rad, &cfg);
        println!("{el:>8} {g:>10.2} {af:>10.2} {:>10.2}", g + af);
    }
    // A UAV above the station sits at positive elevation, far outside the
    // down-tilted main lobe: it is served by side lobes.
}
