//! Doppler offset/rate and propagation delay/delay-rate over a pass.
//!
//! Run with `cargo run --example doppler_delay`.

use leolink::doppler::{delay_profile, doppler_profile};
use leolink::geometry::{pass_geometry, EarthModel, PassScenario};

fn main() {
    let earth = EarthModel::default();
    // Serve down to 10 deg to show the feeder-link extremes too.
    let scenario = PassScenario { min_elevation_deg: 10.0, ..PassScenario::default() };
    let pass = pass_geometry(&scenario, &earth).unwrap();
    let doppler = doppler_profile(&pass, scenario.orbit.carrier_hz).unwrap();
    let delay = delay_profile(&pass).unwrap();

    let peak_offset = doppler.iter().map(|d| d.offset_hz.abs()).fold(0.0, f64::max);
    let peak_rate = doppler.iter().map(|d| d.rate_hz_per_s.abs()).fold(0.0, f64::max);
    let max_delay = delay.iter().map(|d| d.delay_s).fold(0.0, f64::max);
    let peak_delay_rate = delay.iter().map(|d| d.delay_rate.abs()).fold(0.0, f64::max);
    println!("peak |offset| {:.1} kHz, peak |rate| {:.0} Hz/s", peak_offset / 1e3, peak_rate);
    println!(
        "delay {:.2}..{:.2} ms, peak |delay rate| {:.1} us/s",
        delay.iter().map(|d| d.delay_s).fold(f64::INFINITY, f64::min) * 1e3,
        max_delay * 1e3,
        peak_delay_rate * 1e6
    );

    println!("{:>8} {:>14} {:>14} {:>10} {:>14}", "t [s]", "offset [kHz]", "rate [Hz/s]", "tau [ms]", "rate [us/s]");
    let step = doppler.len() / 12;
    for (d, tau) in doppler.iter().zip(&delay).step_by(step.max(1)) {
        println!(
            "{:>8.0} {:>14.2} {:>14.1} {:>10.3} {:>14.2}",
            d.t_s,
            d.offset_hz / 1e3,
            d.rate_hz_per_s,
            tau.delay_s * 1e3,
            tau.delay_rate * 1e6
        );
    }
}
