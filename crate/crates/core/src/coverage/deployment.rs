use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::channel::{AntennaConfig, BaseStation, Environment};
use crate::error::{Error, Result};

/// How interfering stations contribute to the SIR denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterferenceMode {
    /// Each interferer contributes its best-sector received power.
    #[default]
    BestSector,
    /// Each interferer contributes the sum over all of its sectors.
    AllSectors,
}

/// Rectangular area in the horizontal plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Area {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Area {
    pub fn square(side_m: f64) -> Self {
        Self {
            x_min: 0.0,
            y_min: 0.0,
            x_max: side_m,
            y_max: side_m,
        }
    }

    pub fn area_km2(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min) / 1e6
    }
}

/// A set of base stations in one propagation environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub stations: Vec<BaseStation>,
    pub env: Environment,
    pub sir_threshold_db: f64,
    pub interference: InterferenceMode,
}

impl Deployment {
    /// Stations at the given positions with ids `1..=M`, at the environment's
    /// base-station height and with default radio parameters.
    pub fn from_positions(positions: &[(f64, f64)], env: Environment) -> Self {
        let stations = positions
            .iter()
            .zip(1u32..)
            .map(|(&(x, y), id)| BaseStation::new(id, x, y, env.bs_height_m))
            .collect();
        Self {
            stations,
            env,
            sir_threshold_db: 0.0,
            interference: InterferenceMode::default(),
        }
    }

    pub fn with_threshold(mut self, sir_threshold_db: f64) -> Self {
        self.sir_threshold_db = sir_threshold_db;
        self
    }

    /// Applies one radio configuration to every station.
    pub fn set_radio(&mut self, antenna: &AntennaConfig, boresights_deg: &[f64], tx_power_dbm: f64) {
        for bs in &mut self.stations {
            bs.antenna = antenna.clone();
            bs.sector_boresights_deg = boresights_deg.to_vec();
            bs.tx_power_dbm = tx_power_dbm;
        }
    }

    pub fn num_bs(&self) -> u32 {
        self.stations.len() as u32
    }

    pub fn validate(&self) -> Result<()> {
        if self.stations.is_empty() {
            return Err(Error::EmptyDeployment);
        }
        self.env.validate()?;
        for (bs, expected) in self.stations.iter().zip(1u32..) {
            if bs.id != expected {
                return Err(Error::Config(format!(
                    "station ids must be 1..=M in order; found {} at position {}",
                    bs.id, expected
                )));
            }
            bs.validate()?;
        }
        Ok(())
    }
}

/// Draws a Poisson number of stations (mean `density_per_km2 * area`) placed
/// uniformly over `area`. A zero count is redrawn so that every deployment
/// has at least one station.
pub fn deploy_random(
    area: &Area,
    density_per_km2: f64,
    env: Environment,
    seed: u64,
) -> Result<Deployment> {
    if !(density_per_km2 > 0.0 && density_per_km2.is_finite()) {
        return Err(Error::Config(format!(
            "station density must be positive, got {density_per_km2}"
        )));
    }
    let mean = density_per_km2 * area.area_km2();
    let poisson = Poisson::new(mean)
        .map_err(|e| Error::Config(format!("invalid Poisson mean {mean}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = loop {
        let n = poisson.sample(&mut rng) as usize;
        if n > 0 {
            break n;
        }
    };
    let positions: Vec<(f64, f64)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(area.x_min..area.x_max),
                rng.gen_range(area.y_min..area.y_max),
            )
        })
        .collect();
    Ok(Deployment::from_positions(&positions, env))
}
