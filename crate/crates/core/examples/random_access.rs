//! Random-access feasibility: preamble repetition needs over the pass,
//! alignment limits, and protocol timer offsets.
//!
//! Run with `cargo run --example random_access`.

use leolink::access::{scheduling_offset_ms, PreambleFormat, RachLimits};
use leolink::geometry::{
    pass_geometry, slant_range_from_elevation_m, EarthModel, PassScenario,
};
use leolink::link_budget::{link_budget_profile, AntennaPattern, Bandwidth, LinkParams};
use leolink::phy::{rap_repetitions, RapChannel, RapTable};

fn main() {
    for format in [PreambleFormat::Format0, PreambleFormat::Format1] {
        let limits = RachLimits::for_format(format);
        println!(
            "{:?}: timing within +/-{:.2} us, frequency within +/-{:.0} Hz",
            format,
            limits.max_timing_error_s * 1e6,
            limits.max_freq_error_hz
        );
    }

    let earth = EarthModel::default();
    println!("\nscheduling offsets T_k (smallest ms strictly above the delay):");
    for elev in [90.0, 30.0, 10.0] {
        let d = slant_range_from_elevation_m(elev, 600e3, &earth);
        println!(
            "  elevation {elev:>4.0} deg -> range {:>7.1} km -> T_k = {} ms",
            d / 1e3,
            scheduling_offset_ms(d)
        );
    }

    let pass = pass_geometry(&PassScenario::default(), &earth).unwrap();
    let budget =
        link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
    let table = RapTable::default();

    println!("\npreamble repetitions on the 3.75 kHz uplink:");
    println!("{:>8} {:>10} {:>6} {:>6} {:>6}", "t [s]", "SNR [dB]", "awgn", "ncu", "ndh");
    let step = budget.len() / 10;
    for s in budget.iter().step_by(step.max(1)) {
        let snr = s.snr_ul_db(Bandwidth::Khz3_75);
        print!("{:>8.0} {:>10.2}", s.t_s, snr);
        for model in RapChannel::ALL {
            match rap_repetitions(snr, model, &table) {
                Some(cell) if cell.failure_pct > 0.0 => {
                    print!(" {:>4}*{:.0}%", cell.repetitions, cell.failure_pct)
                }
                Some(cell) => print!(" {:>6}", cell.repetitions),
                None => print!(" {:>6}", "-"),
            }
        }
        println!();
    }
}
