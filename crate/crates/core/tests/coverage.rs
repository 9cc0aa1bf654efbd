use std::path::PathBuf;

use aerotraj::channel::{Environment, EnvironmentKind};
use aerotraj::coverage::{
    build_grid, deploy_random, layouts, read_ids_csv, sir_db, write_ids_csv, Area, Deployment, GridSpec,
};
use proptest::prelude::*;

fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../testdata").join(name)
}

fn fig1() -> Deployment {
    Deployment::from_positions(&layouts::FIG1_LAYOUT, Environment::preset(EnvironmentKind::UMa))
}

#[test]
fn reference_map_is_forty_by_forty() {
    let spec = GridSpec::square(layouts::FIG1_SIDE_M, 50.0, 100.0);
    assert_eq!((spec.nx(), spec.ny()), (40, 40));
    assert_eq!(spec.center(spec.corners().1), (1975.0, 1975.0));
}

#[test]
fn reference_heatmaps_match_the_frozen_copies() {
    // Cells whose SIR sits within rounding of the threshold may flip between
    // math libraries; allow a couple of them.
    let dep = fig1();
    for h in [100.0, 200.0, 300.0] {
        let grid = build_grid(&GridSpec::square(layouts::FIG1_SIDE_M, 50.0, h), &dep).unwrap();
        let golden = read_ids_csv(&testdata(&format!("golden/heatmap_h{h}.csv"))).unwrap();
        assert_eq!((golden.nx, golden.ny), (40, 40));
        let diff = golden.ids.iter().zip(grid.serving_ids()).filter(|(a, b)| a != b).count();
        assert!(diff <= 2, "h = {h}: {diff} cells differ from the frozen map");
    }
}

#[test]
fn holes_widen_with_altitude_on_the_reference_layout() {
    let dep = fig1();
    let frac = |h| {
        build_grid(&GridSpec::square(layouts::FIG1_SIDE_M, 50.0, h), &dep)
            .unwrap()
            .hole_fraction()
    };
    let (lo, mid, hi) = (frac(100.0), frac(200.0), frac(300.0));
    assert!(lo < mid && mid <= hi, "{lo} {mid} {hi}");
}

#[test]
fn ids_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let grid = build_grid(&GridSpec::square(layouts::FIG1_SIDE_M, 100.0, 120.0), &fig1()).unwrap();
    let path = dir.path().join("ids.csv");
    write_ids_csv(&path, &grid).unwrap();
    let back = read_ids_csv(&path).unwrap();
    assert_eq!(back.ids, grid.serving_ids());
}

#[test]
fn random_deployments_are_seeded() {
    let env = Environment::preset(EnvironmentKind::UMi);
    let area = Area::square(2000.0);
    let a = deploy_random(&area, 2.5, env, 11).unwrap();
    let b = deploy_random(&area, 2.5, env, 11).unwrap();
    let c = deploy_random(&area, 2.5, env, 12).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn random_deployment_counts_average_to_the_density() {
    let env = Environment::preset(EnvironmentKind::UMa);
    let area = Area::square(2000.0);
    let n = 400;
    let total: u32 = (0..n).map(|s| deploy_random(&area, 1.0, env, s).unwrap().num_bs()).sum();
    let mean = f64::from(total) / n as f64;
    // Poisson(4) redrawn at zero has mean 4 / (1 - e^-4) ~ 4.075.
    assert!((mean - 4.075).abs() < 0.3, "{mean}");
}

#[test]
fn quadrupling_the_density_quadruples_the_station_count() {
    let env = Environment::preset(EnvironmentKind::UMa);
    let area = Area::square(2000.0);
    let mean = |density: f64| {
        let total: u32 = (0..500).map(|s| deploy_random(&area, density, env, 10_000 + s).unwrap().num_bs()).sum();
        f64::from(total) / 500.0
    };
    let ratio = mean(4.0) / mean(1.0);
    assert!((ratio - 4.0).abs() < 0.4, "{ratio}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hole_sets_are_nested_in_the_threshold(seed in 0u64..1000, b1 in -10.0f64..10.0, db in 0.0f64..10.0) {
        let env = Environment::preset(EnvironmentKind::UMa);
        let dep = deploy_random(&Area::square(1000.0), 4.0, env, seed).unwrap();
        let base = build_grid(&GridSpec::square(1000.0, 100.0, 100.0), &dep).unwrap();
        let lo = base.with_threshold(b1);
        let hi = base.with_threshold(b1 + db);
        for (i, (&a, &b)) in lo.serving_ids().iter().zip(hi.serving_ids()).enumerate() {
            prop_assert!(a != 0 || b == 0, "cell {i} is a hole at {b1} dB only");
        }
    }

    #[test]
    fn sir_winner_is_a_deployed_station(seed in 0u64..1000, x in 0.0f64..1000.0, y in 0.0f64..1000.0, h in 30.0f64..300.0) {
        let env = Environment::preset(EnvironmentKind::UMa);
        let dep = deploy_random(&Area::square(1000.0), 5.0, env, seed).unwrap();
        let (sir, id) = sir_db([x, y, h], &dep).unwrap();
        prop_assert!(id >= 1 && id <= dep.num_bs());
        prop_assert!(!sir.is_nan());
    }
}
