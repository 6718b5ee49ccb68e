//! Achievable downlink rate for a short payload over a pass, raw and after
//! the static anchor-carrier overhead.
//!
//! Run with `cargo run --example phy_rate`.

use leolink::geometry::{pass_geometry, EarthModel, PassScenario};
use leolink::link_budget::{link_budget_profile, AntennaPattern, LinkParams};
use leolink::phy::{
    effective_capacity_bps, phy_rate_profile, select_mcs, LinkDirection, McsTable, OverheadTable,
};

fn main() {
    let table = McsTable::default();
    let overhead = OverheadTable::default();
    let payload_bits = 100;

    for snr in [-15.0, -10.0, -5.0, 0.0, 7.0] {
        match select_mcs(snr, &table) {
            Some(sel) => println!(
                "select at {snr:>5.1} dB -> I_TBS {:>2}, {:>2} repetitions",
                sel.itbs, sel.repetitions
            ),
            None => println!("select at {snr:>5.1} dB -> infeasible"),
        }
    }

    let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
    let budget =
        link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
    let rates = phy_rate_profile(&budget, payload_bits, &table).unwrap();

    let peak = rates.iter().map(|r| r.rate_bps).fold(0.0, f64::max);
    println!(
        "\n{payload_bits}-bit payload: peak rate {:.1} kbps raw, {:.1} kbps after DL overhead",
        peak / 1e3,
        effective_capacity_bps(LinkDirection::Downlink, peak, &overhead) / 1e3
    );

    println!("{:>8} {:>7} {:>6} {:>12} {:>16}", "t [s]", "I_TBS", "reps", "rate [kbps]", "effective [kbps]");
    let step = rates.len() / 12;
    for r in rates.iter().step_by(step.max(1)) {
        let (itbs, reps) = r
            .selection
            .map(|s| (s.itbs.to_string(), s.repetitions.to_string()))
            .unwrap_or_else(|| ("-".into(), "-".into()));
        println!(
            "{:>8.0} {:>7} {:>6} {:>12.2} {:>16.2}",
            r.t_s,
            itbs,
            reps,
            r.rate_bps / 1e3,
            effective_capacity_bps(LinkDirection::Downlink, r.rate_bps, &overhead) / 1e3
        );
    }
}
