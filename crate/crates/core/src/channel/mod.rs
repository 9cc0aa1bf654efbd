//! Cellular-to-air link budget from one base station to one UAV position.

mod antenna;
mod propagation;

pub use antenna::{
    array_factor_db, azimuth_attenuation_db, element_gain_db, elevation_attenuation_db,
    wrap_angle, AntennaConfig, AF_SINGULAR_EPS,
};
pub use propagation::{
    free_space_pathloss_db, los_probability, Environment, EnvironmentKind, MAX_AERIAL_ALTITUDE_M,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default sector boresight azimuths (degrees, counter-clockwise from +x).
pub const DEFAULT_BORESIGHTS_DEG: [f64; 3] = [30.0, 150.0, 270.0];

/// Default transmit power per sector (dBm).
pub const DEFAULT_TX_POWER_DBM: f64 = 43.0;

/// A three-sector (by default) terrestrial base station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseStation {
    /// Station identifier, starting at 1. Id 0 marks coverage holes.
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub z_bs: f64,
    pub sector_boresights_deg: Vec<f64>,
    pub antenna: AntennaConfig,
    pub tx_power_dbm: f64,
}

impl BaseStation {
    /// Station with the default sectorization, antenna and transmit power.
    pub fn new(id: u32, x: f64, y: f64, z_bs: f64) -> Self {
        Self {
            id,
            x,
            y,
            z_bs,
            sector_boresights_deg: DEFAULT_BORESIGHTS_DEG.to_vec(),
            antenna: AntennaConfig::default(),
            tx_power_dbm: DEFAULT_TX_POWER_DBM,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.id == 0 {
            return Err(Error::Config("base station id 0 is reserved for holes".into()));
        }
        if !(self.z_bs > 0.0) || !self.x.is_finite() || !self.y.is_finite() {
            return Err(Error::Config(format!(
                "base station {} has an invalid position",
                self.id
            )));
        }
        if self.sector_boresights_deg.is_empty() {
            return Err(Error::Config(format!(
                "base station {} has no sectors",
                self.id
            )));
        }
        self.antenna.validate()
    }

    /// Antenna gain (element + array factor, dB) of every sector towards `geom`.
    pub fn sector_gains_db<'a>(&'a self, geom: &'a LinkGeometry) -> impl Iterator<Item = f64> + 'a {
        let af = array_factor_db(geom.elevation_rad, &self.antenna);
        self.sector_boresights_deg.iter().map(move |b| {
            let offset = geom.azimuth_rad - b.to_radians();
            element_gain_db(offset, geom.elevation_rad, &self.antenna) + af
        })
    }

    /// Highest sector gain towards `geom` and the index of that sector.
    /// Ties resolve to the lowest sector index.
    pub fn best_sector_gain_db(&self, geom: &LinkGeometry) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, g) in self.sector_gains_db(geom).enumerate() {
            if g > best.0 {
                best = (g, i);
            }
        }
        best
    }

    /// Received power (dBm) at `uav_xyz` through the best sector, and that
    /// sector's index.
    pub fn received_power_dbm(&self, uav_xyz: [f64; 3], env: &Environment) -> Result<(f64, usize)> {
        let geom = LinkGeometry::between(self, uav_xyz)?;
        let loss = mean_pathloss_db(&geom, uav_xyz[2], env)?;
        let (gain, sector) = self.best_sector_gain_db(&geom);
        Ok((self.tx_power_dbm + gain - loss, sector))
    }

    /// Received power summed over all sectors, in milliwatts.
    pub fn all_sectors_power_mw(&self, uav_xyz: [f64; 3], env: &Environment) -> Result<f64> {
        let geom = LinkGeometry::between(self, uav_xyz)?;
        let loss = mean_pathloss_db(&geom, uav_xyz[2], env)?;
        Ok(self
            .sector_gains_db(&geom)
            .map(|g| dbm_to_mw(self.tx_power_dbm + g - loss))
            .sum())
    }
}

/// Relative position of a UAV with respect to a base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub d_2d: f64,
    pub d_3d: f64,
    /// Angle above the base-station horizontal plane.
    pub elevation_rad: f64,
    /// Bearing from the station to the UAV in the (x, y) plane.
    pub azimuth_rad: f64,
}

impl LinkGeometry {
    pub fn between(bs: &BaseStation, uav_xyz: [f64; 3]) -> Result<Self> {
        let dx = uav_xyz[0] - bs.x;
        let dy = uav_xyz[1] - bs.y;
        let dz = uav_xyz[2] - bs.z_bs;
        let d_2d = dx.hypot(dy);
        let d_3d = d_2d.hypot(dz);
        if !(d_3d > 0.0) {
            return Err(Error::DegenerateGeometry { bs_id: bs.id });
        }
        Ok(Self {
            d_2d,
            d_3d,
            elevation_rad: dz.atan2(d_2d),
            azimuth_rad: dy.atan2(dx),
        })
    }
}

/// LoS-probability weighted average of the LoS and NLoS pathlosses (dB).
pub fn mean_pathloss_db(geom: &LinkGeometry, h_m: f64, env: &Environment) -> Result<f64> {
    let p_los = env.los_probability(geom.d_2d, h_m)?;
    let los = env.los_pathloss_db(geom.d_3d, h_m);
    if p_los >= 1.0 {
        return Ok(los);
    }
    let nlos = env.nlos_pathloss_db(geom.d_3d, h_m);
    Ok(p_los * los + (1.0 - p_los) * nlos)
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}
