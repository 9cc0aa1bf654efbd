//! Connectivity heatmaps: per-cell SIR and serving station at one altitude.

mod deployment;
mod grid;
mod io;
pub mod layouts;

pub use deployment::{deploy_random, Area, Deployment, InterferenceMode};
pub use grid::{Cell, ConnectivityGrid, GridSpec};
pub use io::{read_ids_csv, write_heatmap, write_ids_csv, write_sir_csv, HeatmapMetadata, IdMatrix};

use rayon::prelude::*;

use crate::channel::{dbm_to_mw, mw_to_dbm};
use crate::error::{Error, Result};

/// Best SIR (dB) over all stations at `point` and the id of that station.
///
/// A single-station deployment has no interference and returns `+inf`.
/// Ties go to the lowest id.
pub fn sir_db(point: [f64; 3], deployment: &Deployment) -> Result<(f64, u32)> {
    let stations = &deployment.stations;
    if stations.is_empty() {
        return Err(Error::EmptyDeployment);
    }
    let env = &deployment.env;
    let serving = stations
        .iter()
        .map(|bs| bs.received_power_dbm(point, env).map(|(p, _)| dbm_to_mw(p)))
        .collect::<Result<Vec<f64>>>()?;
    let interfering = match deployment.interference {
        InterferenceMode::BestSector => serving.clone(),
        InterferenceMode::AllSectors => stations
            .iter()
            .map(|bs| bs.all_sectors_power_mw(point, env))
            .collect::<Result<Vec<f64>>>()?,
    };
    if stations.len() == 1 {
        return Ok((f64::INFINITY, stations[0].id));
    }

    let mut best = (f64::NEG_INFINITY, stations[0].id);
    for (i, &p) in serving.iter().enumerate() {
        let interference: f64 = interfering
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &q)| q)
            .sum();
        let sir = if interference > 0.0 {
            mw_to_dbm(p / interference)
        } else if p > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        if sir > best.0 {
            best = (sir, stations[i].id);
        }
    }
    Ok(best)
}

/// Evaluates the SIR at every cell center and marks cells below the
/// deployment threshold as holes.
pub fn build_grid(spec: &GridSpec, deployment: &Deployment) -> Result<ConnectivityGrid> {
    spec.validate()?;
    deployment.validate()?;
    let cells: Vec<(f64, u32)> = (0..spec.len())
        .into_par_iter()
        .map(|i| sir_db(spec.center_xyz(spec.cell(i)), deployment))
        .collect::<Result<_>>()?;
    let (sir, ids): (Vec<f64>, Vec<u32>) = cells.into_iter().unzip();
    ConnectivityGrid::from_sir(
        spec.clone(),
        ids,
        sir,
        deployment.num_bs(),
        deployment.sir_threshold_db,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Environment, EnvironmentKind};

    fn uma() -> Environment {
        Environment::preset(EnvironmentKind::UMa)
    }

    #[test]
    fn single_station_has_infinite_sir() {
        let d = Deployment::from_positions(&[(0.0, 0.0)], uma());
        assert_eq!(sir_db([500.0, 300.0, 100.0], &d).unwrap(), (f64::INFINITY, 1));
    }

    #[test]
    fn empty_deployment_errors() {
        let mut d = Deployment::from_positions(&[(0.0, 0.0)], uma());
        d.stations.clear();
        assert!(matches!(
            sir_db([1.0, 1.0, 100.0], &d),
            Err(Error::EmptyDeployment)
        ));
    }

    #[test]
    fn symmetric_pair_gives_zero_db() {
        // Mirror images about x = 0 with mirrored boresights; the UAV sits on
        // the bisector, so both received powers coincide.
        let mut d = Deployment::from_positions(&[(-400.0, 0.0), (400.0, 0.0)], uma());
        d.stations[0].sector_boresights_deg = vec![0.0, 120.0, 240.0];
        d.stations[1].sector_boresights_deg = vec![180.0, 60.0, 300.0];
        let (sir, id) = sir_db([0.0, 250.0, 100.0], &d).unwrap();
        assert!(sir.abs() < 1e-9, "{sir}");
        assert_eq!(id, 1);
    }

    #[test]
    fn all_sectors_interference_is_never_weaker() {
        let mut d = Deployment::from_positions(&[(200.0, 300.0), (1500.0, 900.0), (800.0, 1800.0)], uma());
        let p = [1000.0, 1000.0, 150.0];
        let best = sir_db(p, &d).unwrap().0;
        d.interference = InterferenceMode::AllSectors;
        let all = sir_db(p, &d).unwrap().0;
        assert!(all <= best + 1e-12);
    }

    #[test]
    fn single_station_grid_has_no_holes() {
        let d = Deployment::from_positions(&[(1000.0, 1000.0)], uma()).with_threshold(20.0);
        let g = build_grid(&GridSpec::square(2000.0, 200.0, 100.0), &d).unwrap();
        assert_eq!(g.hole_count(), 0);
    }

    #[test]
    fn unbounded_threshold_has_no_holes() {
        let d = Deployment::from_positions(&layouts::FIG1_LAYOUT, uma())
            .with_threshold(f64::NEG_INFINITY);
        let g = build_grid(&GridSpec::square(2000.0, 200.0, 300.0), &d).unwrap();
        assert_eq!(g.hole_count(), 0);
    }

    #[test]
    fn build_grid_propagates_altitude_errors() {
        let d = Deployment::from_positions(&layouts::FIG1_LAYOUT, uma());
        assert!(matches!(
            build_grid(&GridSpec::square(2000.0, 500.0, 20.0), &d),
            Err(Error::AltitudeOutOfRange { .. })
        ));
    }
}
