//! Ephemeris-based pre-compensation: how often a terminal must refresh its
//! frequency and timing advance to stay within the preamble limits.
//!
//! Run with `cargo run --example precompensation`.

use leolink::access::{
    precompensation_schedule, residual_error_check, PreambleFormat, RachLimits, TimingReference,
};
use leolink::doppler::{delay_profile, doppler_profile};
use leolink::geometry::{pass_geometry, EarthModel, PassScenario};

fn main() {
    let earth = EarthModel::default();
    let scenario = PassScenario { sample_step_s: 0.5, ..PassScenario::default() };
    let pass = pass_geometry(&scenario, &earth).unwrap();
    let doppler = doppler_profile(&pass, scenario.orbit.carrier_hz).unwrap();
    let delay = delay_profile(&pass).unwrap();
    let limits = RachLimits::for_format(PreambleFormat::Format0);

    println!(
        "profile extremes: |offset| up to {:.1} kHz, |rate| up to {:.0} Hz/s",
        doppler.iter().map(|d| d.offset_hz.abs()).fold(0.0, f64::max) / 1e3,
        doppler.iter().map(|d| d.rate_hz_per_s.abs()).fold(0.0, f64::max)
    );

    println!(
        "\n{:>10} {:>10} {:>16} {:>16} {:>10}",
        "hold [s]", "commands", "freq resid [Hz]", "time resid [us]", "compliant"
    );
    for period in [8.0, 4.0, 2.0, 1.0, 0.5] {
        let commands =
            precompensation_schedule(&doppler, &delay, period, TimingReference::RoundTrip)
                .unwrap();
        let report = residual_error_check(
            &commands,
            &doppler,
            &delay,
            &limits,
            TimingReference::RoundTrip,
        )
        .unwrap();
        println!(
            "{:>10.1} {:>10} {:>16.1} {:>16.2} {:>10}",
            period,
            commands.len(),
            report.max_freq_residual_hz,
            report.max_time_residual_s * 1e6,
            if report.compliant { "yes" } else { "no" }
        );
    }

    let commands =
        precompensation_schedule(&doppler, &delay, 1.0, TimingReference::RoundTrip).unwrap();
    let report =
        residual_error_check(&commands, &doppler, &delay, &limits, TimingReference::RoundTrip)
            .unwrap();
    println!(
        "\nthe profile slopes allow at most {:.2} s between frequency updates and {:.2} s",
        report.required_freq_period_s, report.required_time_period_s
    );
    println!("between timing updates for format-0 preambles (round-trip reference).");
}
