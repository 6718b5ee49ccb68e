//! Satellite antenna gain across the field of view and its effect on the
//! budget at the beam edge.
//!
//! Run with `cargo run --example antenna_pattern`.

use leolink::geometry::{pass_geometry, EarthModel, PassScenario};
use leolink::link_budget::{satellite_antenna_gain_db, AntennaPattern};

fn main() {
    let pattern = AntennaPattern::default();
    println!(
        "patch antenna: {:.2} dB peak, {:.1} deg full 3 dB width",
        pattern.peak_gain_db, pattern.beamwidth_3db_deg
    );

    println!("{:>12} {:>10}", "nadir [deg]", "gain [dB]");
    for beta in (0..=90).step_by(10) {
        println!(
            "{:>12} {:>10.2}",
            beta,
            satellite_antenna_gain_db(beta as f64, &pattern)
        );
    }

    // Nadir angles actually reached during passes at different peak
    // elevations, with the pattern loss they imply.
    let earth = EarthModel::default();
    println!("\n{:>15} {:>16} {:>18}", "alpha_max [deg]", "edge nadir [deg]", "pattern loss [dB]");
    for alpha_max in [90.0, 62.4, 42.7, 30.0] {
        let scenario = PassScenario { max_elevation_deg: alpha_max, ..PassScenario::default() };
        let pass = pass_geometry(&scenario, &earth).unwrap();
        let edge = pass.samples.last().unwrap();
        let loss = pattern.peak_gain_db - satellite_antenna_gain_db(edge.nadir_angle_deg, &pattern);
        println!("{:>15.1} {:>16.2} {:>18.2}", alpha_max, edge.nadir_angle_deg, loss);
    }
}
