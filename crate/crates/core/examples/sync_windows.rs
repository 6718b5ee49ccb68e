//! Cell-search requirements and the synchronization windows they leave open
//! during a pass.
//!
//! Run with `cargo run --example sync_windows`.

use leolink::geometry::{pass_geometry, EarthModel, PassScenario};
use leolink::link_budget::{link_budget_profile, AntennaPattern, LinkParams};
use leolink::phy::{
    cell_search_frames, sync_windows, CellSearchChannel, CellSearchTable, DopplerCase,
};

fn main() {
    let table = CellSearchTable::default();

    println!("frames to cell-search success (worst residual Doppler):");
    for snr in [-10.0, -7.0, -4.0, 0.0, 5.0] {
        print!("  {snr:>5.1} dB:");
        for model in CellSearchChannel::ALL {
            let frames = cell_search_frames(snr, model, DopplerCase::HighOffset, &table).unwrap();
            print!(" {} {frames:>5}", model.label());
        }
        println!();
    }

    let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
    let budget =
        link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
    println!(
        "\npass covers t in [{:.0}, {:.0}] s; windows where a terminal can both have",
        budget[0].t_s,
        budget.last().unwrap().t_s
    );
    println!("synchronized already and still synchronize before losing the cell:");
    for model in CellSearchChannel::ALL {
        let windows = sync_windows(&budget, &table, model, DopplerCase::HighOffset, None);
        match windows.as_slice() {
            [] => println!("  {:>4}: none", model.label()),
            ws => {
                for w in ws {
                    println!(
                        "  {:>4}: [{:>7.1}, {:>7.1}] s ({:.1} s long)",
                        model.label(),
                        w.start_s,
                        w.end_s,
                        w.end_s - w.start_s
                    );
                }
            }
        }
    }
}
