//! Paging-mode plan for a single satellite: discontinuous reception during
//! passes, power-save mode across the revisit gaps.
//!
//! Run with `cargo run --example coverage_gaps`.

use leolink::access::{coverage_plan, PassInterval};
use leolink::geometry::{pass_geometry, EarthModel, PassScenario};

fn main() {
    let earth = EarthModel::default();
    let scenario = PassScenario::default();
    let pass = pass_geometry(&scenario, &earth).unwrap();
    let pass_len = pass.samples.last().unwrap().t_s - pass.samples[0].t_s;
    let period = scenario.orbit.orbital_period_s(&earth);

    let orbits = 4;
    let passes: Vec<PassInterval> = (0..orbits)
        .map(|k| {
            let centre = period / 2.0 + k as f64 * period;
            PassInterval { start_s: centre - pass_len / 2.0, end_s: centre + pass_len / 2.0 }
        })
        .collect();
    let plan = coverage_plan(&passes, 0.0, orbits as f64 * period).unwrap();

    println!(
        "orbital period {:.0} s, service window {:.0} s per pass ({} orbits planned)",
        period, pass_len, orbits
    );
    println!(
        "duty cycle {:.2}%, longest power-save stretch {:.0} s ({:.1} min)",
        plan.duty_cycle * 100.0,
        plan.max_gap_s,
        plan.max_gap_s / 60.0
    );

    println!("\n{:>5} {:>10} {:>10} {:>10} {:>6}", "#", "start [s]", "end [s]", "len [s]", "mode");
    for (i, seg) in plan.segments.iter().enumerate() {
        println!(
            "{:>5} {:>10.0} {:>10.0} {:>10.0} {:>6}",
            i,
            seg.start_s,
            seg.end_s,
            seg.end_s - seg.start_s,
            seg.mode.label()
        );
    }
}
