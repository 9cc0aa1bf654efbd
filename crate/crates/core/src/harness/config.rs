//! Experiment configuration: a TOML file whose keys are flat dotted paths
//! such as `channel.downtilt_deg = -10`. Every key is optional; missing
//! keys take the defaults below. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::{AntennaConfig, Environment, EnvironmentKind, DEFAULT_BORESIGHTS_DEG};
use crate::coverage::{layouts, Area, Cell, GridSpec, InterferenceMode};
use crate::energy::{BatteryBudget, RotorcraftParams};
use crate::error::{Error, Result};
use crate::planner::{HandoffMode, MissionSpec};

/// Environment variable overriding `scenario.seed`.
pub const SEED_ENV_VAR: &str = "AEROTRAJ_SEED";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioSection,
    pub grid: GridSection,
    pub channel: ChannelSection,
    pub coverage: CoverageSection,
    pub deployment: DeploymentSection,
    pub energy: EnergySection,
    pub mission: MissionSection,
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub name: String,
    pub output_dir: PathBuf,
    /// Master seed; per-realization seeds are derived from it.
    pub seed: u64,
    pub monte_carlo_runs: usize,
    /// Also write per-row wall times (`sweep_timing.csv`). Off by default
    /// so that reruns produce byte-identical output directories.
    pub record_timing: bool,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        Self {
            name: "default".into(),
            output_dir: PathBuf::from("out"),
            seed: 2021,
            monte_carlo_runs: 200,
            record_timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub cell_size_m: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            x_min: 0.0,
            y_min: 0.0,
            x_max: layouts::FIG1_SIDE_M,
            y_max: layouts::FIG1_SIDE_M,
            cell_size_m: 50.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub g_max_db: f64,
    pub phi_3db_deg: f64,
    pub theta_3db_deg: f64,
    pub a_m_db: f64,
    pub sla_db: f64,
    pub n_elements: u32,
    pub downtilt_deg: f64,
    pub tx_power_dbm: f64,
    pub carrier_ghz: f64,
    pub sector_boresights_deg: Vec<f64>,
    pub interference: InterferenceMode,
}

impl Default for ChannelSection {
    fn default() -> Self {
        let a = AntennaConfig::default();
        Self {
            g_max_db: a.g_max_db,
            phi_3db_deg: a.phi_3db_deg,
            theta_3db_deg: a.theta_3db_deg,
            a_m_db: a.a_m_db,
            sla_db: a.sla_db,
            n_elements: a.n_elements,
            downtilt_deg: a.downtilt_deg,
            tx_power_dbm: crate::channel::DEFAULT_TX_POWER_DBM,
            carrier_ghz: 2.0,
            sector_boresights_deg: DEFAULT_BORESIGHTS_DEG.to_vec(),
            interference: InterferenceMode::BestSector,
        }
    }
}

impl ChannelSection {
    pub fn antenna(&self) -> AntennaConfig {
        AntennaConfig {
            g_max_db: self.g_max_db,
            phi_3db_deg: self.phi_3db_deg,
            theta_3db_deg: self.theta_3db_deg,
            a_m_db: self.a_m_db,
            sla_db: self.sla_db,
            n_elements: self.n_elements,
            downtilt_deg: self.downtilt_deg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageSection {
    pub altitude_m: f64,
    pub sir_threshold_db: f64,
}

impl Default for CoverageSection {
    fn default() -> Self {
        Self {
            altitude_m: 100.0,
            sir_threshold_db: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeploymentMode {
    /// Stations at `deployment.stations`.
    #[default]
    Fixed,
    /// Poisson deployments drawn per realization.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeploymentSection {
    pub mode: DeploymentMode,
    pub environment: EnvironmentKind,
    pub stations: Vec<[f64; 2]>,
    /// Overrides the preset base-station height when set.
    pub bs_height_m: Option<f64>,
    // Station densities per km^2. The 1 : 4 : 10 stations per 4 km^2 ratio
    // follows the usual rural < urban macro < urban micro density ranking.
    pub density_rma_per_km2: f64,
    pub density_uma_per_km2: f64,
    pub density_umi_per_km2: f64,
}

impl Default for DeploymentSection {
    fn default() -> Self {
        Self {
            mode: DeploymentMode::Fixed,
            environment: EnvironmentKind::UMa,
            stations: layouts::FIG1_LAYOUT.iter().map(|&(x, y)| [x, y]).collect(),
            bs_height_m: None,
            density_rma_per_km2: 0.25,
            density_uma_per_km2: 1.0,
            density_umi_per_km2: 2.5,
        }
    }
}

impl DeploymentSection {
    pub fn density_per_km2(&self, kind: EnvironmentKind) -> f64 {
        match kind {
            EnvironmentKind::RMa => self.density_rma_per_km2,
            EnvironmentKind::UMa => self.density_uma_per_km2,
            EnvironmentKind::UMi => self.density_umi_per_km2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergySection {
    pub blade_profile_w: f64,
    pub induced_w: f64,
    pub tip_speed: f64,
    pub mean_induced_v0: f64,
    pub fuselage_drag_ratio: f64,
    pub air_density: f64,
    pub rotor_solidity: f64,
    pub rotor_disc_area: f64,
    pub mission_energy_j: f64,
    pub cruise_speed: f64,
}

impl Default for EnergySection {
    fn default() -> Self {
        let p = RotorcraftParams::default();
        Self {
            blade_profile_w: p.blade_profile_w,
            induced_w: p.induced_w,
            tip_speed: p.tip_speed,
            mean_induced_v0: p.mean_induced_v0,
            fuselage_drag_ratio: p.fuselage_drag_ratio,
            air_density: p.air_density,
            rotor_solidity: p.rotor_solidity,
            rotor_disc_area: p.rotor_disc_area,
            mission_energy_j: 2.5e6,
            cruise_speed: 30.0,
        }
    }
}

impl EnergySection {
    pub fn params(&self) -> RotorcraftParams {
        RotorcraftParams {
            blade_profile_w: self.blade_profile_w,
            induced_w: self.induced_w,
            tip_speed: self.tip_speed,
            mean_induced_v0: self.mean_induced_v0,
            fuselage_drag_ratio: self.fuselage_drag_ratio,
            air_density: self.air_density,
            rotor_solidity: self.rotor_solidity,
            rotor_disc_area: self.rotor_disc_area,
        }
    }

    pub fn budget(&self, altitude_m: f64) -> BatteryBudget {
        BatteryBudget::new(self.mission_energy_j, self.cruise_speed, altitude_m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MissionSection {
    /// `[ix, iy]`; defaults to the south-west corner cell.
    pub start_cell: Option<[usize; 2]>,
    /// `[ix, iy]`; defaults to the north-east corner cell.
    pub end_cell: Option<[usize; 2]>,
    pub alpha_max: f64,
    pub w1: f64,
    pub w2: f64,
    pub handoff_mode: HandoffMode,
    /// DP stage limit; defaults to the number of grid cells.
    pub max_iter: Option<usize>,
}

impl Default for MissionSection {
    fn default() -> Self {
        Self {
            start_cell: None,
            end_cell: None,
            alpha_max: 0.0,
            w1: 1.0,
            w2: 1.0,
            handoff_mode: HandoffMode::Formal,
            max_iter: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub altitudes_m: Vec<f64>,
    pub alpha_max: Vec<f64>,
    pub sir_threshold_db: Vec<f64>,
    pub environments: Vec<EnvironmentKind>,
    /// Station densities per km^2 for random deployments; empty means the
    /// per-environment default.
    pub densities_per_km2: Vec<f64>,
    /// Average a realization only if its mission is feasible at every
    /// `alpha_max` of the same point, so curves over `alpha_max` compare
    /// the same deployments.
    pub paired_alpha: bool,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            altitudes_m: vec![100.0, 110.0, 120.0, 130.0],
            alpha_max: vec![0.0, 0.05, 0.1],
            sir_threshold_db: vec![0.0],
            environments: vec![EnvironmentKind::UMa],
            densities_per_km2: Vec::new(),
            paired_alpha: false,
        }
    }
}

impl ExperimentConfig {
    /// Reads a config file and applies `key=value` overrides on top.
    pub fn load(path: &Path, overrides: &[(String, String)]) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_str_with(&text, overrides)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn from_str_with(text: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        for (key, value) in overrides {
            set_dotted(&mut table, key, parse_value(value))?;
        }
        let cfg: Self = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Every dotted key with its default value, one `key = value` per line.
    pub fn default_keys() -> Vec<String> {
        let value = toml::Value::try_from(Self::default()).expect("default config serializes");
        let mut out = Vec::new();
        flatten("", &value, &mut out);
        out
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        if s.altitudes_m.is_empty()
            || s.alpha_max.is_empty()
            || s.sir_threshold_db.is_empty()
            || s.environments.is_empty()
        {
            return Err(Error::Config("sweep axes must be non-empty".into()));
        }
        if self.scenario.monte_carlo_runs == 0 {
            return Err(Error::Config("scenario.monte_carlo_runs must be >= 1".into()));
        }
        if let Some(a) = s.alpha_max.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::Config(format!("sweep alpha_max {a} outside [0, 1]")));
        }
        if let Some(d) = s.densities_per_km2.iter().find(|d| !(**d > 0.0)) {
            return Err(Error::Config(format!("sweep density {d} must be positive")));
        }
        if self.deployment.mode == DeploymentMode::Fixed && self.deployment.stations.is_empty() {
            return Err(Error::Config("fixed deployment needs at least one station".into()));
        }
        self.channel.antenna().validate()?;
        self.energy.params().validate()?;
        self.environment(self.deployment.environment).validate()?;
        self.grid_spec(self.coverage.altitude_m).validate()?;
        Ok(())
    }

    pub fn environment(&self, kind: EnvironmentKind) -> Environment {
        let mut env = Environment::preset(kind).with_carrier_ghz(self.channel.carrier_ghz);
        if let Some(h) = self.deployment.bs_height_m {
            env.bs_height_m = h;
        }
        env
    }

    pub fn area(&self) -> Area {
        Area {
            x_min: self.grid.x_min,
            y_min: self.grid.y_min,
            x_max: self.grid.x_max,
            y_max: self.grid.y_max,
        }
    }

    pub fn grid_spec(&self, altitude_m: f64) -> GridSpec {
        GridSpec {
            x_min: self.grid.x_min,
            y_min: self.grid.y_min,
            x_max: self.grid.x_max,
            y_max: self.grid.y_max,
            cell_size_m: self.grid.cell_size_m,
            altitude_m,
        }
    }

    pub fn mission(&self, spec: &GridSpec, alpha_max: f64) -> MissionSpec {
        let (sw, ne) = spec.corners();
        let cell = |c: Option<[usize; 2]>, d: Cell| c.map_or(d, |[x, y]| Cell::new(x, y));
        MissionSpec {
            start: cell(self.mission.start_cell, sw),
            end: cell(self.mission.end_cell, ne),
            alpha_max,
            w1: self.mission.w1,
            w2: self.mission.w2,
            handoff_mode: self.mission.handoff_mode,
        }
    }
}

/// Parses an override value as a TOML value, falling back to a string.
fn parse_value(raw: &str) -> toml::Value {
    let probe = format!("v = {raw}");
    match probe.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("probe key present"),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

fn set_dotted(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<()> {
    let mut parts = key.split('.').peekable();
    let mut current = table;
    while let Some(part) = parts.next() {
        if part.is_empty() {
            return Err(Error::Config(format!("malformed key {key:?}")));
        }
        if parts.peek().is_none() {
            current.insert(part.to_string(), value);
            return Ok(());
        }
        let entry = current
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        current = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("{key:?}: {part} is not a section")))?;
    }
    Err(Error::Config(format!("malformed key {key:?}")))
}

fn flatten(prefix: &str, value: &toml::Value, out: &mut Vec<String>) {
    match value {
        toml::Value::Table(t) => {
            for (k, v) in t {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}
