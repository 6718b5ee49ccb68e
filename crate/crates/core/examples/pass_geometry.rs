//! Samples one satellite pass and prints the key geometric variables.
//!
//! Run with `cargo run --example pass_geometry`.

use leolink::geometry::{pass_geometry, EarthModel, PassScenario};

fn main() {
    let earth = EarthModel::default();
    let scenario = PassScenario::default(); // 600 km, overhead pass, 30 deg service limit
    let orbit = scenario.orbit;

    println!(
        "satellite speed {:.2} km/s, ground-relative {:.2} km/s, orbital period {:.0} s",
        orbit.satellite_speed_mps(&earth) / 1e3,
        orbit.relative_speed_mps(&earth) / 1e3,
        orbit.orbital_period_s(&earth)
    );

    let pass = pass_geometry(&scenario, &earth).unwrap();
    println!(
        "pass window: {:.0} s, {} samples, cross-track offset {:.1} km",
        pass.samples.last().unwrap().t_s - pass.samples[0].t_s,
        pass.samples.len(),
        earth.radius_m * pass.cross_track_angle_rad / 1e3,
    );

    println!("{:>8} {:>12} {:>12} {:>12}", "t [s]", "elev [deg]", "nadir [deg]", "range [km]");
    let step = pass.samples.len() / 10;
    for s in pass.samples.iter().step_by(step.max(1)) {
        println!(
            "{:>8.0} {:>12.2} {:>12.2} {:>12.1}",
            s.t_s,
            s.elevation_deg,
            s.nadir_angle_deg,
            s.slant_range_m / 1e3
        );
    }

    // The same orbit seen from lower peak elevations.
    for alpha_max in [62.4, 42.7, 30.0] {
        let sc = PassScenario { max_elevation_deg: alpha_max, ..scenario };
        let p = pass_geometry(&sc, &earth).unwrap();
        let edge = p.samples.last().unwrap();
        println!(
            "alpha_max {alpha_max:>5.1} deg -> offset {:>6.1} km, edge range {:>7.1} km",
            earth.radius_m * p.cross_track_angle_rad / 1e3,
            edge.slant_range_m / 1e3
        );
    }
}
