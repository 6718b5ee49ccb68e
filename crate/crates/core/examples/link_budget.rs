//! Downlink and uplink SNR over a pass, including the narrowband gain.
//!
//! Run with `cargo run --example link_budget`.

use leolink::geometry::{pass_geometry, EarthModel, PassScenario};
use leolink::link_budget::{
    link_budget_profile, noise_power_dbm, AntennaPattern, Bandwidth, LinkParams,
};

fn main() {
    let earth = EarthModel::default();
    let scenario = PassScenario::default();
    let params = LinkParams::default();
    let pattern = AntennaPattern::default();

    println!(
        "noise power at 290 K: {:.1} dBm in 180 kHz, {:.1} dBm in 3.75 kHz",
        noise_power_dbm(290.0, 180e3),
        noise_power_dbm(290.0, 3.75e3)
    );

    let pass = pass_geometry(&scenario, &earth).unwrap();
    let budget = link_budget_profile(&pass, &params, &pattern).unwrap();

    let mid = &budget[budget.len() / 2];
    println!(
        "zenith: DL {:.2} dB, UL(3.75 kHz) {:.2} dB, UL(180 kHz) {:.2} dB",
        mid.snr_dl_db,
        mid.snr_ul_db(Bandwidth::Khz3_75),
        mid.snr_ul_db(Bandwidth::Khz180)
    );
    println!(
        "narrowband gain {:.2} dB, UL-over-DL {:.2} dB (constant across the pass)",
        mid.snr_ul_db(Bandwidth::Khz3_75) - mid.snr_ul_db(Bandwidth::Khz180),
        mid.snr_ul_db(Bandwidth::Khz3_75) - mid.snr_dl_db
    );

    println!("{:>8} {:>10} {:>14} {:>14}", "t [s]", "DL [dB]", "UL 3.75k [dB]", "UL 180k [dB]");
    let step = budget.len() / 12;
    for s in budget.iter().step_by(step.max(1)) {
        println!(
            "{:>8.0} {:>10.2} {:>14.2} {:>14.2}",
            s.t_s,
            s.snr_dl_db,
            s.snr_ul_db(Bandwidth::Khz3_75),
            s.snr_ul_db(Bandwidth::Khz180)
        );
    }
}
