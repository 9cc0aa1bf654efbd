use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::config::{ExperimentConfig, SEED_ENV_VAR};
use super::heatmap::run_heatmap;
use super::sweep::{build_deployment, run_sweep, write_sweep};
use crate::coverage::{build_grid, read_ids_csv, ConnectivityGrid, GridSpec};
use crate::error::{Error, Result};
use crate::planner::{metrics, oracle_plan, plan, write_plan, OracleMode, PlanResult, EXHAUSTIVE_CELL_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aerotraj", version, about = "Cellular-connected cargo-UAV coverage maps and trajectory planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write connectivity heatmaps for every sweep altitude.
    Heatmap(Common),
    /// Plan one mission and write its waypoints and summary.
    Plan(Common),
    /// Run the configured sweep and write raw and aggregated tables.
    Sweep(Common),
    /// Compare the dynamic program against an exact oracle.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        /// Serving-id matrix (north row first) to plan on instead of a
        /// computed heatmap.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// `exhaustive` or `relaxed`; picked from the grid size when absent.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Print every config key with its default value.
    ConfigKeys,
}

#[derive(Debug, Args)]
struct Common {
    /// Config file with flat dotted keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override any config key, e.g. `--set channel.downtilt_deg=-5`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Master seed (takes precedence over the environment variable).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    altitude: Option<f64>,
    /// SIR threshold in dB.
    #[arg(long, allow_negative_numbers = true)]
    beta_th: Option<f64>,
    /// RMa, UMa or UMi.
    #[arg(long)]
    environment: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    /// `formal` or `prose`.
    #[arg(long)]
    handoff_mode: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Result<Vec<(String, String)>> {
        let mut o = Vec::new();
        if let Ok(seed) = std::env::var(SEED_ENV_VAR) {
            let seed: u64 = seed
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{SEED_ENV_VAR}={seed:?} is not an unsigned integer")))?;
            o.push(("scenario.seed".into(), seed.to_string()));
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
            o.push((k.trim().to_string(), v.trim().to_string()));
        }
        let mut push = |k: &str, v: String| o.push((k.to_string(), v));
        if let Some(s) = self.seed {
            push("scenario.seed", s.to_string());
        }
        if let Some(a) = self.alpha_max {
            push("mission.alpha_max", a.to_string());
            push("sweep.alpha_max", format!("[{a}]"));
        }
        if let Some(h) = self.altitude {
            push("coverage.altitude_m", h.to_string());
            push("sweep.altitudes_m", format!("[{h}]"));
        }
        if let Some(b) = self.beta_th {
            push("coverage.sir_threshold_db", b.to_string());
            push("sweep.sir_threshold_db", format!("[{b}]"));
        }
        if let Some(e) = &self.environment {
            let kind: crate::channel::EnvironmentKind = e.parse()?;
            push("deployment.environment", format!("{:?}", kind.as_str()));
            push("sweep.environments", format!("[{:?}]", kind.as_str()));
        }
        if let Some(r) = self.runs {
            push("scenario.monte_carlo_runs", r.to_string());
        }
        if let Some(m) = &self.handoff_mode {
            push("mission.handoff_mode", format!("{m:?}"));
        }
        if let Some(d) = &self.out {
            push("scenario.output_dir", format!("{:?}", d.display().to_string()));
        }
        Ok(o)
    }

    fn load(&self) -> Result<ExperimentConfig> {
        let overrides = self.overrides()?;
        match &self.config {
            Some(p) => ExperimentConfig::load(p, &overrides),
            None => ExperimentConfig::from_str_with("", &overrides),
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the
/// process exit code: 0 success, 1 infeasible mission, 2 usage or
/// configuration error.
pub fn cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(parsed.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InfeasibleMission(_) | Error::IterationBudgetExhausted { .. } => EXIT_INFEASIBLE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Heatmap(c) => {
            let cfg = c.load()?;
            for p in run_heatmap(&cfg, &cfg.scenario.output_dir)? {
                println!("{}", p.display());
            }
            Ok(EXIT_OK)
        }
        Command::Plan(c) => cmd_plan(&c.load()?),
        Command::Sweep(c) => {
            let cfg = c.load()?;
            let out = run_sweep(&cfg)?;
            for p in write_sweep(&cfg.scenario.output_dir, &out, cfg.scenario.record_timing)? {
                println!("{}", p.display());
            }
            let infeasible = out.records.iter().filter(|r| !r.feasible).count();
            eprintln!("{} rows, {} infeasible", out.records.len(), infeasible);
            Ok(EXIT_OK)
        }
        Command::OracleCheck { common, grid, mode } => {
            let cfg = common.load()?;
            let mode = match mode.as_deref() {
                None => None,
                Some("exhaustive") => Some(OracleMode::Exhaustive),
                Some("relaxed") => Some(OracleMode::Relaxed),
                Some(other) => return Err(Error::Config(format!("unknown oracle mode {other:?}"))),
            };
            cmd_oracle(&cfg, grid.as_deref(), mode)
        }
        Command::ConfigKeys => {
            for k in ExperimentConfig::default_keys() {
                println!("{k}");
            }
            Ok(EXIT_OK)
        }
    }
}

fn configured_grid(cfg: &ExperimentConfig) -> Result<ConnectivityGrid> {
    let kind = cfg.deployment.environment;
    let (dep, _) = build_deployment(cfg, kind, cfg.deployment.density_per_km2(kind), 0)?;
    build_grid(&cfg.grid_spec(cfg.coverage.altitude_m), &dep)
}

fn cmd_plan(cfg: &ExperimentConfig) -> Result<i32> {
    let grid = configured_grid(cfg)?;
    let spec = grid.spec().clone();
    let mission = cfg.mission(&spec, cfg.mission.alpha_max);
    let budget = cfg.energy.budget(spec.altitude_m);
    let params = cfg.energy.params();
    let result = plan(&grid, &mission, &budget, &params, cfg.mission.max_iter)?;
    let m = metrics(&result, &budget, &params)?;
    let dir = &cfg.scenario.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_plan(dir, "plan", &result, &m, &spec, cfg.energy.cruise_speed, &params, mission.handoff_mode)?;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "objective,energy_rate,handoff_rate,disconnectivity_rate,feasible,iterations");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        result.objective, m.energy_rate, m.handoff_rate, m.disconnectivity_rate, result.feasible, result.iterations_used
    );
    Ok(EXIT_OK)
}

fn grid_from_file(path: &Path, cfg: &ExperimentConfig) -> Result<ConnectivityGrid> {
    let m = read_ids_csv(path)?;
    let spec = GridSpec::with_cells(m.nx, m.ny, cfg.grid.cell_size_m, cfg.coverage.altitude_m);
    ConnectivityGrid::from_ids(spec, m.ids)
}

fn cmd_oracle(cfg: &ExperimentConfig, grid_path: Option<&Path>, mode: Option<OracleMode>) -> Result<i32> {
    let grid = match grid_path {
        Some(p) => grid_from_file(p, cfg)?,
        None => configured_grid(cfg)?,
    };
    let spec = grid.spec().clone();
    let mission = cfg.mission(&spec, cfg.mission.alpha_max);
    let budget = cfg.energy.budget(spec.altitude_m);
    let params = cfg.energy.params();
    let mode = mode.unwrap_or(if spec.len() <= EXHAUSTIVE_CELL_LIMIT {
        OracleMode::Exhaustive
    } else {
        OracleMode::Relaxed
    });
    let dp = plan(&grid, &mission, &budget, &params, cfg.mission.max_iter);
    let oracle = oracle_plan(&grid, &mission, &budget, &params, mode);
    let report = GapReport::new(mode, &dp, &oracle)?;
    println!("{}", GapReport::HEADER);
    println!("{}", report.row());
    Ok(if report.oracle_feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

/// One line comparing the DP against an oracle on the same instance.
struct GapReport {
    mode: OracleMode,
    dp: Option<f64>,
    oracle: Option<f64>,
    oracle_feasible: bool,
}

impl GapReport {
    const HEADER: &'static str = "mode,dp_objective,oracle_objective,gap,relative_gap";

    fn new(mode: OracleMode, dp: &Result<PlanResult>, oracle: &Result<PlanResult>) -> Result<Self> {
        fn objective(r: &Result<PlanResult>) -> Result<Option<f64>> {
            match r {
                Ok(p) => Ok(Some(p.objective)),
                Err(Error::InfeasibleMission(_) | Error::IterationBudgetExhausted { .. }) => Ok(None),
                Err(e) => Err(Error::Config(e.to_string())),
            }
        }
        let oracle_obj = objective(oracle)?;
        Ok(Self {
            mode,
            dp: objective(dp)?,
            oracle: oracle_obj,
            oracle_feasible: oracle_obj.is_some(),
        })
    }

    fn row(&self) -> String {
        let f = |v: Option<f64>| v.map_or_else(|| "infeasible".to_string(), |x| x.to_string());
        let (gap, rel) = match (self.dp, self.oracle) {
            (Some(d), Some(o)) => ((d - o).to_string(), ((d - o) / o).to_string()),
            (None, Some(_)) => ("inf".into(), "inf".into()),
            _ => (String::new(), String::new()),
        };
        let mode = match self.mode {
            OracleMode::Exhaustive => "exhaustive",
            OracleMode::Relaxed => "relaxed",
        };
        format!("{mode},{},{},{gap},{rel}", f(self.dp), f(self.oracle))
    }
}
