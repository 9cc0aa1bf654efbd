//! Aerial-UE line-of-sight probability and pathloss for the RMa, UMa and UMi
//! deployment presets.
//!
//! The UMa LoS probability is the altitude-dependent expression for
//! 22.5 m < h <= 100 m (unit probability above 100 m). The LoS/NLoS pathloss
//! pairs are the aerial-vehicle rows of 3GPP TR 36.777 (Tables B-1/B-2).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest altitude covered by the aerial channel models (m).
pub const MAX_AERIAL_ALTITUDE_M: f64 = 300.0;

/// Deployment scenario preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnvironmentKind {
    RMa,
    UMa,
    UMi,
}

impl EnvironmentKind {
    pub const ALL: [EnvironmentKind; 3] = [Self::RMa, Self::UMa, Self::UMi];

    /// Default base-station height of the preset (m).
    pub fn default_bs_height_m(self) -> f64 {
        match self {
            Self::RMa => 35.0,
            Self::UMa => 25.0,
            Self::UMi => 10.0,
        }
    }

    /// Lowest altitude (exclusive) for which the aerial LoS model is defined.
    pub fn min_altitude_m(self) -> f64 {
        match self {
            Self::RMa => 10.0,
            Self::UMa | Self::UMi => 22.5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::RMa => "RMa",
            Self::UMa => "UMa",
            Self::UMi => "UMi",
        }
    }
}

impl std::fmt::Display for EnvironmentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EnvironmentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rma" => Ok(Self::RMa),
            "uma" => Ok(Self::UMa),
            "umi" => Ok(Self::UMi),
            _ => Err(Error::Config(format!("unknown environment {s:?}"))),
        }
    }
}

/// Propagation environment: scenario preset plus carrier frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub kind: EnvironmentKind,
    pub carrier_ghz: f64,
    pub bs_height_m: f64,
}

impl Environment {
    pub fn preset(kind: EnvironmentKind) -> Self {
        Self {
            kind,
            carrier_ghz: 2.0,
            bs_height_m: kind.default_bs_height_m(),
        }
    }

    pub fn with_carrier_ghz(mut self, carrier_ghz: f64) -> Self {
        self.carrier_ghz = carrier_ghz;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_ghz > 0.0 && self.carrier_ghz.is_finite()) {
            return Err(Error::Config(format!(
                "carrier frequency must be positive, got {} GHz",
                self.carrier_ghz
            )));
        }
        if !(self.bs_height_m > 0.0 && self.bs_height_m.is_finite()) {
            return Err(Error::Config(format!(
                "base-station height must be positive, got {} m",
                self.bs_height_m
            )));
        }
        Ok(())
    }

    /// LoS probability for this preset.
    pub fn los_probability(&self, d_2d_m: f64, h_m: f64) -> Result<f64> {
        check_altitude(h_m, self.kind.min_altitude_m())?;
        Ok(match self.kind {
            EnvironmentKind::UMa => uma_los(d_2d_m, h_m),
            EnvironmentKind::UMi => {
                let lg = h_m.log10();
                let p1 = 233.98 * lg - 0.95;
                let d1 = (294.05 * lg - 432.94).max(18.0);
                mixed_los(d_2d_m, d1, p1)
            }
            EnvironmentKind::RMa => {
                if h_m > 40.0 || d_2d_m <= 10.0 {
                    1.0
                } else {
                    (-(d_2d_m - 10.0) / 1000.0).exp()
                }
            }
        })
    }

    /// Pathloss of a fully line-of-sight link (dB).
    pub fn los_pathloss_db(&self, d_3d_m: f64, h_m: f64) -> f64 {
        let fc = self.carrier_ghz;
        let lg_d = d_3d_m.log10();
        match self.kind {
            EnvironmentKind::UMa => 28.0 + 22.0 * lg_d + 20.0 * fc.log10(),
            EnvironmentKind::UMi => {
                let fs = free_space_pathloss_db(d_3d_m, fc);
                let av = 30.9 + (22.25 - 0.5 * h_m.log10()) * lg_d + 20.0 * fc.log10();
                fs.max(av)
            }
            EnvironmentKind::RMa => {
                (23.9 - 1.8 * h_m.log10()).max(20.0) * lg_d + 20.0 * (40.0 * PI * fc / 3.0).log10()
            }
        }
    }

    /// Pathloss of a non-line-of-sight link (dB).
    pub fn nlos_pathloss_db(&self, d_3d_m: f64, h_m: f64) -> f64 {
        let fc = self.carrier_ghz;
        let lg_d = d_3d_m.log10();
        let lg_h = h_m.log10();
        match self.kind {
            EnvironmentKind::UMa => {
                -17.5 + (46.0 - 7.0 * lg_h) * lg_d + 20.0 * (40.0 * PI * fc / 3.0).log10()
            }
            EnvironmentKind::UMi => {
                let nlos = 32.4 + (43.2 - 7.6 * lg_h) * lg_d + 20.0 * fc.log10();
                nlos.max(self.los_pathloss_db(d_3d_m, h_m))
            }
            EnvironmentKind::RMa => {
                let nlos =
                    -12.0 + (35.0 - 5.3 * lg_h) * lg_d + 20.0 * (40.0 * PI * fc / 3.0).log10();
                nlos.max(self.los_pathloss_db(d_3d_m, h_m))
            }
        }
    }
}

fn check_altitude(h_m: f64, min_exclusive_m: f64) -> Result<()> {
    if h_m > min_exclusive_m && h_m <= MAX_AERIAL_ALTITUDE_M {
        Ok(())
    } else {
        Err(Error::AltitudeOutOfRange {
            altitude_m: h_m,
            min_exclusive_m,
        })
    }
}

fn mixed_los(d_2d_m: f64, d1: f64, p1: f64) -> f64 {
    if d_2d_m <= d1 {
        1.0
    } else {
        let r = d1 / d_2d_m;
        r + (-d_2d_m / p1).exp() * (1.0 - r)
    }
}

fn uma_los(d_2d_m: f64, h_m: f64) -> f64 {
    if h_m > 100.0 {
        return 1.0;
    }
    let lg = h_m.log10();
    let p1 = 4300.0 * lg - 3800.0;
    let d1 = (460.0 * lg - 700.0).max(18.0);
    mixed_los(d_2d_m, d1, p1)
}

/// UMa aerial LoS probability for altitudes in (22.5, 300] m.
pub fn los_probability(d_2d_m: f64, h_m: f64) -> Result<f64> {
    check_altitude(h_m, EnvironmentKind::UMa.min_altitude_m())?;
    Ok(uma_los(d_2d_m, h_m))
}

/// Free-space pathloss with distance in metres and frequency in GHz.
pub fn free_space_pathloss_db(d_3d_m: f64, carrier_ghz: f64) -> f64 {
    20.0 * d_3d_m.log10() + 20.0 * carrier_ghz.log10() + 32.45
}
