use aerotraj::energy::{
    available_energy_j, flight_energy_j, max_distance_m, propulsion_power_w, BatteryBudget, RotorcraftParams,
};
use proptest::prelude::*;

#[test]
fn hover_power_is_blade_plus_induced() {
    let p = RotorcraftParams::default();
    assert_eq!(propulsion_power_w(0.0, &p), p.blade_profile_w + p.induced_w);
}

#[test]
fn zero_speed_flight_is_rejected() {
    assert!(flight_energy_j(0.0, 10.0, &RotorcraftParams::default()).is_err());
}

proptest! {
    #[test]
    fn flight_energy_is_linear_in_distance(v in 0.5f64..60.0, d in 0.0f64..1e5, k in 0.0f64..10.0) {
        let p = RotorcraftParams::default();
        let e = flight_energy_j(v, d, &p).unwrap();
        let ek = flight_energy_j(v, k * d, &p).unwrap();
        prop_assert!((ek - k * e).abs() <= 1e-9 * ek.abs().max(1.0));
    }

    #[test]
    fn max_distance_round_trips(v in 1.0f64..50.0, h in 10.0f64..300.0, e in 1e6f64..1e8) {
        let p = RotorcraftParams::default();
        let budget = BatteryBudget::new(e, v, h);
        let d = max_distance_m(&budget, &p).unwrap();
        let used = flight_energy_j(v, d, &p).unwrap();
        let avail = available_energy_j(&budget, &p).unwrap();
        prop_assert!(((used - avail) / avail).abs() <= 1e-12);
    }

    #[test]
    fn higher_altitude_leaves_less_energy(v in 1.0f64..50.0, h in 10.0f64..250.0, dh in 0.0f64..50.0) {
        let p = RotorcraftParams::default();
        let lo = available_energy_j(&BatteryBudget::new(5e6, v, h), &p).unwrap();
        let hi = available_energy_j(&BatteryBudget::new(5e6, v, h + dh), &p).unwrap();
        prop_assert!(hi <= lo);
    }

    #[test]
    fn power_is_positive(v in 0.0f64..80.0) {
        prop_assert!(propulsion_power_w(v, &RotorcraftParams::default()) > 0.0);
    }
}

#[test]
fn budget_smaller_than_the_vertical_legs_is_infeasible() {
    let p = RotorcraftParams::default();
    let r = available_energy_j(&BatteryBudget::new(1000.0, 30.0, 300.0), &p);
    assert!(matches!(r, Err(aerotraj::Error::InfeasibleMission(_))));
}
