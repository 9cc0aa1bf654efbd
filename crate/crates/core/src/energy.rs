//! Rotary-wing propulsion power and the mission energy budget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotorcraft constants of the propulsion power curve.
///
/// Defaults are the typical rotary-wing values of Zeng, Xu & Zhang,
/// "Energy Minimization for Wireless Communication with Rotary-Wing UAV"
/// (IEEE TWC 2019), Table I.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RotorcraftParams {
    /// Blade profile power in hover (W).
    pub blade_profile_w: f64,
    /// Induced power in hover (W).
    pub induced_w: f64,
    /// Rotor blade tip speed (m/s).
    pub tip_speed: f64,
    /// Mean rotor induced velocity in hover (m/s).
    pub mean_induced_v0: f64,
    /// Fuselage drag ratio.
    pub fuselage_drag_ratio: f64,
    /// Air density (kg/m^3).
    pub air_density: f64,
    /// Rotor solidity.
    pub rotor_solidity: f64,
    /// Rotor disc area (m^2).
    pub rotor_disc_area: f64,
}

impl Default for RotorcraftParams {
    fn default() -> Self {
        Self {
            blade_profile_w: 79.86,
            induced_w: 88.63,
            tip_speed: 120.0,
            mean_induced_v0: 4.03,
            fuselage_drag_ratio: 0.6,
            air_density: 1.225,
            rotor_solidity: 0.05,
            rotor_disc_area: 0.503,
        }
    }
}

impl RotorcraftParams {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [
            self.blade_profile_w,
            self.induced_w,
            self.tip_speed,
            self.mean_induced_v0,
            self.fuselage_drag_ratio,
            self.air_density,
            self.rotor_solidity,
            self.rotor_disc_area,
        ]
        .iter()
        .all(|v| *v > 0.0 && v.is_finite());
        if all_positive {
            Ok(())
        } else {
            Err(Error::Config(
                "rotorcraft parameters must all be strictly positive".into(),
            ))
        }
    }

    /// Parasite power `0.5 d0 rho s A v^3`.
    pub fn parasite_power_w(&self, v: f64) -> f64 {
        0.5 * self.fuselage_drag_ratio
            * self.air_density
            * self.rotor_solidity
            * self.rotor_disc_area
            * v.powi(3)
    }

    /// Blade profile power `sigma_B (1 + 3 v^2 / U_tip^2)`.
    pub fn blade_power_w(&self, v: f64) -> f64 {
        self.blade_profile_w * (1.0 + 3.0 * v * v / (self.tip_speed * self.tip_speed))
    }

    /// Induced power `sigma_I (sqrt(1 + v^4 / 4v0^4) - v^2 / 2v0^2)^(1/2)`.
    pub fn induced_power_w(&self, v: f64) -> f64 {
        // x = v^2 / 2v0^2, so the bracket is sqrt(1 + x^2) - x, evaluated as
        // 1 / (sqrt(1 + x^2) + x) to avoid cancellation at cruise speeds.
        let x = v * v / (2.0 * self.mean_induced_v0 * self.mean_induced_v0);
        self.induced_w * (1.0 / (x.hypot(1.0) + x)).sqrt()
    }
}

/// Propulsion power (W) at horizontal speed `v`.
pub fn propulsion_power_w(v: f64, params: &RotorcraftParams) -> f64 {
    params.parasite_power_w(v) + params.blade_power_w(v) + params.induced_power_w(v)
}

/// Energy (J) to fly a distance `d` at speed `v`.
pub fn flight_energy_j(v: f64, d: f64, params: &RotorcraftParams) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::NonPositiveSpeed(v));
    }
    Ok(propulsion_power_w(v, params) * d / v)
}

/// Battery budget of a mission flown at constant speed and altitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryBudget {
    /// Capacity minus emergency reserve (J).
    pub mission_energy_j: f64,
    /// Cruise speed (m/s).
    pub cruise_speed: f64,
    /// Flight altitude (m); also the length of each vertical leg.
    pub altitude_m: f64,
}

impl BatteryBudget {
    pub fn new(mission_energy_j: f64, cruise_speed: f64, altitude_m: f64) -> Self {
        Self {
            mission_energy_j,
            cruise_speed,
            altitude_m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mission_energy_j > 0.0) {
            return Err(Error::Config("mission energy must be positive".into()));
        }
        if !(self.cruise_speed > 0.0) {
            return Err(Error::NonPositiveSpeed(self.cruise_speed));
        }
        if !(self.altitude_m >= 0.0) {
            return Err(Error::Config("altitude must be non-negative".into()));
        }
        Ok(())
    }

    /// Energy of the takeoff and landing legs, costed at cruise speed.
    pub fn vertical_energy_j(&self, params: &RotorcraftParams) -> Result<f64> {
        Ok(2.0 * flight_energy_j(self.cruise_speed, self.altitude_m, params)?)
    }
}

/// Energy left for the horizontal leg after takeoff and landing.
pub fn available_energy_j(budget: &BatteryBudget, params: &RotorcraftParams) -> Result<f64> {
    budget.validate()?;
    let available = budget.mission_energy_j - budget.vertical_energy_j(params)?;
    if available < 0.0 {
        return Err(Error::InfeasibleMission(format!(
            "takeoff and landing to {} m need more than the {} J budget",
            budget.altitude_m, budget.mission_energy_j
        )));
    }
    Ok(available)
}

/// Longest horizontal distance (m) the available energy can cover.
pub fn max_distance_m(budget: &BatteryBudget, params: &RotorcraftParams) -> Result<f64> {
    let available = available_energy_j(budget, params)?;
    Ok(budget.cruise_speed * available / propulsion_power_w(budget.cruise_speed, params))
}
