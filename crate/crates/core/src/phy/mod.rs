//! Selection and feasibility queries over the simulated-performance tables.
//!
//! Between table grid points every lookup is pessimistic: the requirement of
//! the next-lower SNR row applies, never an interpolation, so a reported
//! operating point is always achievable.

pub mod tables;

use crate::error::{Error, Result};
use crate::link_budget::{Bandwidth, LinkBudgetSample};
pub use tables::{
    CellSearchChannel, CellSearchTable, DopplerCase, McsTable, MibDecoderCurve, OverheadTable,
    PerformanceTables, RapCell, RapChannel, RapTable, CELL_SEARCH_SNR_GRID, MCS_REPETITIONS,
    RAP_SNR_GRID,
};

/// Transport-block sizes per (I_TBS, subframe count), bits. Standard ladder
/// for the narrowband downlink shared channel; the subframe counts follow
/// [`TBS_SUBFRAMES`].
const TBS_BITS: [[u32; 8]; tables::MCS_ROWS] = [
    [16, 32, 56, 88, 120, 152, 208, 256],
    [24, 56, 88, 144, 176, 208, 256, 344],
    [32, 72, 144, 176, 208, 256, 328, 424],
    [40, 104, 176, 208, 256, 328, 440, 568],
    [56, 120, 208, 256, 328, 408, 552, 680],
    [72, 144, 224, 328, 424, 504, 680, 872],
    [88, 176, 256, 392, 504, 600, 808, 1032],
    [104, 224, 328, 472, 584, 712, 968, 1224],
    [120, 256, 392, 536, 680, 808, 1096, 1352],
    [136, 296, 456, 616, 776, 936, 1256, 1544],
    [144, 328, 504, 680, 872, 1032, 1384, 1736],
    [176, 376, 584, 776, 1000, 1192, 1608, 2024],
    [208, 440, 680, 904, 1128, 1352, 1800, 2280],
    [224, 488, 744, 1032, 1256, 1544, 2024, 2536],
];

/// Subframe counts a transport block may occupy.
const TBS_SUBFRAMES: [u32; 8] = [1, 2, 3, 4, 5, 6, 8, 10];

/// Frame duration of the accumulation model, s.
const FRAME_S: f64 = 0.01;

/// A selected modulation-and-coding operating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McsSelection {
    pub itbs: u8,
    pub repetitions: u16,
}

/// Picks the feasible (I_TBS, repetitions) pair maximizing the throughput
/// proxy I_TBS/repetitions; ties prefer fewer repetitions, then higher
/// I_TBS. `None` when even the most protected point needs more SNR.
pub fn select_mcs(snr_db: f64, table: &McsTable) -> Option<McsSelection> {
    let mut best: Option<(f64, McsSelection)> = None;
    for (itbs, row) in table.cells.iter().enumerate() {
        for (rep_idx, required) in row.iter().enumerate() {
            if *required > snr_db {
                continue;
            }
            let reps = MCS_REPETITIONS[rep_idx];
            let proxy = itbs as f64 / reps as f64;
            let candidate = McsSelection { itbs: itbs as u8, repetitions: reps };
            let better = match &best {
                None => true,
                Some((p, cur)) => {
                    proxy > *p
                        || (proxy == *p
                            && (reps < cur.repetitions
                                || (reps == cur.repetitions && candidate.itbs > cur.itbs)))
                }
            };
            if better {
                best = Some((proxy, candidate));
            }
        }
    }
    best.map(|(_, sel)| sel)
}

/// Airtime to move `payload_bits` at an operating point: the smallest
/// transport block covering the payload, one subframe-millisecond per
/// subframe per repetition. Payloads beyond the largest block ship as full
/// maximum-size blocks plus a tail block.
pub fn airtime_s(selection: McsSelection, payload_bits: u32) -> f64 {
    let row = &TBS_BITS[selection.itbs as usize];
    let max_tbs = row[row.len() - 1];
    let mut remaining = payload_bits;
    let mut subframes: u64 = 0;
    while remaining > max_tbs {
        subframes += u64::from(TBS_SUBFRAMES[TBS_SUBFRAMES.len() - 1]);
        remaining -= max_tbs;
    }
    let idx = row.iter().position(|tbs| *tbs >= remaining).unwrap_or(row.len() - 1);
    subframes += u64::from(TBS_SUBFRAMES[idx]);
    subframes as f64 * selection.repetitions as f64 * 1e-3
}

/// Feasible operating point with the shortest airtime for the payload;
/// ties prefer fewer repetitions, then higher I_TBS.
///
/// The generic proxy of [`select_mcs`] can prefer a pair whose transport
/// block granularity wastes subframes on a small payload, which would break
/// rate monotonicity in SNR, so the rate profile optimizes the actual
/// airtime instead.
pub fn best_rate_selection(
    snr_db: f64,
    payload_bits: u32,
    table: &McsTable,
) -> Option<McsSelection> {
    let mut best: Option<(f64, McsSelection)> = None;
    for (itbs, row) in table.cells.iter().enumerate() {
        for (rep_idx, required) in row.iter().enumerate() {
            if *required > snr_db {
                continue;
            }
            let candidate =
                McsSelection { itbs: itbs as u8, repetitions: MCS_REPETITIONS[rep_idx] };
            let airtime = airtime_s(candidate, payload_bits);
            let better = match &best {
                None => true,
                Some((t, cur)) => {
                    airtime < *t
                        || (airtime == *t
                            && (candidate.repetitions < cur.repetitions
                                || (candidate.repetitions == cur.repetitions
                                    && candidate.itbs > cur.itbs)))
                }
            };
            if better {
                best = Some((airtime, candidate));
            }
        }
    }
    best.map(|(_, sel)| sel)
}

/// Achievable rate per budget sample for a payload of `payload_bits`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSample {
    pub t_s: f64,
    pub selection: Option<McsSelection>,
    /// Payload bits over airtime; zero where no operating point is feasible.
    pub rate_bps: f64,
}

pub fn phy_rate_profile(
    budget: &[LinkBudgetSample],
    payload_bits: u32,
    table: &McsTable,
) -> Result<Vec<RateSample>> {
    if payload_bits == 0 {
        return Err(Error::InvalidScenario("payload_bits must be positive".into()));
    }
    Ok(budget
        .iter()
        .map(|s| {
            let selection = best_rate_selection(s.snr_dl_db, payload_bits, table);
            let rate_bps = selection
                .map(|sel| payload_bits as f64 / airtime_s(sel, payload_bits))
                .unwrap_or(0.0);
            RateSample { t_s: s.t_s, selection, rate_bps }
        })
        .collect())
}

/// Grid lookup with the pessimistic between-grid policy. `None` below the
/// lowest grid point; above the highest the top row applies.
fn step_lookup<T: Copy>(snr_db: f64, grid: &[f64], value_at: impl Fn(usize) -> T) -> Option<T> {
    let mut found = None;
    for (i, g) in grid.iter().enumerate() {
        if snr_db >= *g - 1e-12 {
            found = Some(i);
        } else {
            break;
        }
    }
    found.map(value_at)
}

/// Frames (10 ms each) to cell-search success at an SNR. `None` when the
/// SNR is below the characterised range.
pub fn cell_search_frames(
    snr_db: f64,
    model: CellSearchChannel,
    case: DopplerCase,
    table: &CellSearchTable,
) -> Option<u32> {
    step_lookup(snr_db, &CELL_SEARCH_SNR_GRID, |i| table.frames_at_grid(model, i, case))
}

/// Preamble repetitions and residual failure rate at an SNR. `None` when the
/// SNR is below the characterised range.
pub fn rap_repetitions(snr_db: f64, model: RapChannel, table: &RapTable) -> Option<RapCell> {
    step_lookup(snr_db, &RAP_SNR_GRID, |i| table.cell_at_grid(i, model))
}

/// A closed interval of pass time, s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncWindow {
    pub start_s: f64,
    pub end_s: f64,
}

/// Synchronization windows over a pass.
///
/// A terminal searching from time `t` accumulates progress at rate
/// `1/(frames(snr(t)) * 10 ms)` and is synchronized once the accumulated
/// progress reaches one requirement. The returned window of each feasible
/// stretch runs from the earliest instant any search can have completed to
/// the latest instant a fresh search can still complete within the stretch;
/// between those bounds synchronization events keep occurring. Supplying a
/// MIB curve adds its repetitions to the per-sample requirement.
///
/// Accumulation does not carry across stretches where the table reports the
/// SNR as unavailable.
pub fn sync_windows(
    budget: &[LinkBudgetSample],
    table: &CellSearchTable,
    model: CellSearchChannel,
    case: DopplerCase,
    mib: Option<&MibDecoderCurve>,
) -> Vec<SyncWindow> {
    let requirement = |snr: f64| -> Option<f64> {
        let frames = cell_search_frames(snr, model, case, table)?;
        let extra = mib.map(|curve| curve.repetitions_at(snr)).unwrap_or(0);
        Some(f64::from(frames + extra) * FRAME_S)
    };

    let mut windows = Vec::new();
    let mut run: Vec<(f64, f64)> = Vec::new(); // (t, progress rate 1/s)
    for sample in budget {
        match requirement(sample.snr_dl_db) {
            Some(req) => run.push((sample.t_s, 1.0 / req)),
            None => {
                if let Some(w) = window_of_run(&run) {
                    windows.push(w);
                }
                run.clear();
            }
        }
    }
    if let Some(w) = window_of_run(&run) {
        windows.push(w);
    }
    windows
}

fn window_of_run(run: &[(f64, f64)]) -> Option<SyncWindow> {
    if run.len() < 2 {
        return None;
    }
    // Progress integral with the rate held over each inter-sample segment.
    let mut prefix = Vec::with_capacity(run.len());
    let mut acc = 0.0;
    prefix.push(0.0);
    for w in run.windows(2) {
        acc += w[0].1 * (w[1].0 - w[0].0);
        prefix.push(acc);
    }
    let total = acc;
    if total < 1.0 {
        return None;
    }
    // Earliest completion: first time the integral from the run start hits 1.
    let start = time_at_progress(run, &prefix, 1.0);
    // Latest viable search start: the remaining integral still reaches 1.
    let end = time_at_progress(run, &prefix, total - 1.0);
    if start <= end {
        Some(SyncWindow { start_s: start, end_s: end })
    } else {
        None
    }
}

fn time_at_progress(run: &[(f64, f64)], prefix: &[f64], target: f64) -> f64 {
    for i in 0..run.len() - 1 {
        if prefix[i + 1] >= target {
            return run[i].0 + (target - prefix[i]) / run[i].1;
        }
    }
    run[run.len() - 1].0
}

/// Traffic direction for the overhead scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkDirection {
    Downlink,
    Uplink,
}

/// Rate left after the static anchor-carrier overhead.
pub fn effective_capacity_bps(
    direction: LinkDirection,
    raw_rate_bps: f64,
    table: &OverheadTable,
) -> f64 {
    let total_pct = match direction {
        LinkDirection::Downlink => table.dl_total_pct,
        LinkDirection::Uplink => table.ul_total_pct,
    };
    raw_rate_bps * (1.0 - total_pct / 100.0)
}

/// Uplink width used for preamble transmission.
pub const RAP_BANDWIDTH: Bandwidth = Bandwidth::Khz3_75;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pass_geometry, EarthModel, PassScenario};
    use crate::link_budget::{link_budget_profile, AntennaPattern, LinkParams};

    fn constant_budget(snr_dl: f64, n: usize, step: f64) -> Vec<LinkBudgetSample> {
        // Budget samples with a flat downlink SNR; uplink values unused here.
        (0..n)
            .map(|i| LinkBudgetSample {
                t_s: i as f64 * step,
                snr_dl_db: snr_dl,
                snr_ul_db: [snr_dl; 5],
            })
            .collect()
    }

    #[test]
    fn select_mcs_boundary_cell_is_feasible() {
        let table = McsTable::default();
        // The most protected single-repetition point decodes right at its
        // own requirement.
        assert_eq!(table.required_snr_db(0, 1), Some(-5.8));
        let sel = select_mcs(-5.8, &table).unwrap();
        assert!(table.required_snr_db(sel.itbs, sel.repetitions).unwrap() <= -5.8);
        // The proxy prefers I_TBS 5 at 4 repetitions there.
        assert_eq!(sel, McsSelection { itbs: 5, repetitions: 4 });
    }

    #[test]
    fn select_mcs_below_table_minimum_is_infeasible() {
        assert_eq!(select_mcs(-15.0, &McsTable::default()), None);
        assert!(select_mcs(-14.7, &McsTable::default()).is_some());
    }

    #[test]
    fn select_mcs_top_of_table() {
        let sel = select_mcs(7.0, &McsTable::default()).unwrap();
        assert_eq!(sel, McsSelection { itbs: 13, repetitions: 1 });
    }

    #[test]
    fn selected_point_never_violates_its_requirement() {
        let table = McsTable::default();
        let mut snr = -16.0;
        while snr <= 8.0 {
            if let Some(sel) = select_mcs(snr, &table) {
                let req = table.required_snr_db(sel.itbs, sel.repetitions).unwrap();
                assert!(req <= snr, "requirement {req} above SNR {snr}");
            } else {
                assert!(snr < -14.7);
            }
            snr += 0.01;
        }
    }

    #[test]
    fn airtime_for_100_bit_payload() {
        // I_TBS 3 carries 104 bits in two subframes.
        assert_eq!(airtime_s(McsSelection { itbs: 3, repetitions: 1 }, 100), 2e-3);
        // I_TBS 7 carries 104 bits in one subframe.
        assert_eq!(airtime_s(McsSelection { itbs: 7, repetitions: 1 }, 100), 1e-3);
        // Repetitions scale the airtime linearly.
        assert_eq!(airtime_s(McsSelection { itbs: 3, repetitions: 4 }, 100), 8e-3);
        // Oversized payloads ship as full blocks plus a tail.
        let long = airtime_s(McsSelection { itbs: 13, repetitions: 1 }, 2536 + 224);
        assert_eq!(long, 11e-3);
    }

    #[test]
    fn rate_profile_is_zero_when_infeasible_everywhere() {
        let budget = constant_budget(-20.0, 8, 1.0);
        let rates = phy_rate_profile(&budget, 100, &McsTable::default()).unwrap();
        assert!(rates.iter().all(|r| r.rate_bps == 0.0 && r.selection.is_none()));
    }

    #[test]
    fn rate_is_monotone_in_snr_for_any_payload() {
        let table = McsTable::default();
        for payload in [16u32, 100, 504, 2536, 4000] {
            let mut last = 0.0;
            let mut snr = -16.0;
            while snr <= 8.0 {
                let rate = best_rate_selection(snr, payload, &table)
                    .map(|sel| payload as f64 / airtime_s(sel, payload))
                    .unwrap_or(0.0);
                assert!(
                    rate >= last,
                    "payload {payload}: rate dropped from {last} to {rate} at SNR {snr}"
                );
                last = rate;
                snr += 0.01;
            }
        }
    }

    #[test]
    fn default_scenario_rate_peaks_at_closest_approach() {
        let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
        let budget =
            link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
        let rates = phy_rate_profile(&budget, 100, &McsTable::default()).unwrap();
        let mid = rates.len() / 2;
        let peak = rates.iter().map(|r| r.rate_bps).fold(0.0, f64::max);
        assert_eq!(rates[mid].rate_bps, peak);
        // Frozen after the first evaluation: I_TBS 3 at one repetition moves
        // 100 bits in 2 ms at the zenith SNR of the default budget.
        assert_eq!(rates[mid].selection, Some(McsSelection { itbs: 3, repetitions: 1 }));
        assert_eq!(rates[mid].rate_bps, 50_000.0);
    }

    #[test]
    fn cell_search_lookup_matches_grid_and_policy() {
        let table = CellSearchTable::default();
        for case in DopplerCase::ALL {
            assert_eq!(cell_search_frames(-4.0, CellSearchChannel::Los, case, &table), Some(4));
        }
        assert_eq!(
            cell_search_frames(-10.0, CellSearchChannel::Ncu, DopplerCase::HighOffset, &table),
            Some(3110)
        );
        // Between grid points the next-lower row applies.
        assert_eq!(
            cell_search_frames(-5.0, CellSearchChannel::Los, DopplerCase::Static, &table),
            Some(28)
        );
        // Above the top of the grid the top row applies.
        assert_eq!(
            cell_search_frames(9.0, CellSearchChannel::Ndh, DopplerCase::Static, &table),
            Some(2)
        );
        assert_eq!(
            cell_search_frames(-10.01, CellSearchChannel::Los, DopplerCase::Static, &table),
            None
        );
    }

    #[test]
    fn lookup_policy_is_conservative() {
        let table = CellSearchTable::default();
        for model in CellSearchChannel::ALL {
            for case in DopplerCase::ALL {
                let mut snr = -10.0;
                while snr <= 6.0 {
                    let req = cell_search_frames(snr, model, case, &table).unwrap();
                    // Never below the requirement at the next-higher grid point.
                    if let Some(next) = CELL_SEARCH_SNR_GRID.iter().find(|g| **g > snr) {
                        let exact = cell_search_frames(*next, model, case, &table).unwrap();
                        assert!(req >= exact);
                    }
                    snr += 0.1;
                }
            }
        }
    }

    #[test]
    fn rap_lookup_matches_grid_and_policy() {
        let table = RapTable::default();
        let best = rap_repetitions(0.0, RapChannel::Ncu, &table).unwrap();
        assert_eq!((best.repetitions, best.failure_pct), (1, 0.0));
        let worst = rap_repetitions(-12.0, RapChannel::Ndh, &table).unwrap();
        assert_eq!((worst.repetitions, worst.failure_pct), (128, 13.0));
        let between = rap_repetitions(-6.0, RapChannel::Awgn, &table).unwrap();
        assert_eq!(between.repetitions, 32);
        assert_eq!(rap_repetitions(-12.5, RapChannel::Awgn, &table), None);
    }

    #[test]
    fn effective_capacity_reference_values() {
        let table = OverheadTable::default();
        let dl = effective_capacity_bps(LinkDirection::Downlink, 1000.0, &table);
        let ul = effective_capacity_bps(LinkDirection::Uplink, 1000.0, &table);
        assert!((dl - 405.8).abs() < 1e-9, "DL effective {dl}");
        assert!((ul - 617.1).abs() < 1e-9, "UL effective {ul}");
        assert_eq!(effective_capacity_bps(LinkDirection::Downlink, 0.0, &table), 0.0);
    }

    #[test]
    fn sync_window_opens_after_the_required_frames_at_constant_snr() {
        // 0 dB line-of-sight needs 2 frames = 20 ms.
        let budget = constant_budget(0.0, 200, 0.01);
        let windows = sync_windows(
            &budget,
            &CellSearchTable::default(),
            CellSearchChannel::Los,
            DopplerCase::Static,
            None,
        );
        assert_eq!(windows.len(), 1);
        let w = windows[0];
        assert!((w.start_s - (budget[0].t_s + 0.02)).abs() < 0.011, "start {}", w.start_s);
        assert!((w.end_s - (budget.last().unwrap().t_s - 0.02)).abs() < 0.011);
    }

    #[test]
    fn sync_windows_empty_when_snr_unavailable() {
        let budget = constant_budget(-11.0, 100, 1.0);
        let windows = sync_windows(
            &budget,
            &CellSearchTable::default(),
            CellSearchChannel::Los,
            DopplerCase::Static,
            None,
        );
        assert!(windows.is_empty());
    }

    #[test]
    fn default_pass_windows_are_symmetric_about_closest_approach() {
        let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
        let budget =
            link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
        let windows = sync_windows(
            &budget,
            &CellSearchTable::default(),
            CellSearchChannel::Ncu,
            DopplerCase::HighOffset,
            None,
        );
        assert_eq!(windows.len(), 1);
        let w = windows[0];
        assert!(
            (w.start_s + w.end_s).abs() <= pass.sample_step_s() + 1e-9,
            "window [{}, {}] off centre",
            w.start_s,
            w.end_s
        );
    }

    #[test]
    fn raising_the_budget_never_shrinks_a_window() {
        let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
        let budget =
            link_budget_profile(&pass, &LinkParams::default(), &AntennaPattern::default()).unwrap();
        let raised: Vec<LinkBudgetSample> = budget
            .iter()
            .map(|s| LinkBudgetSample { snr_dl_db: s.snr_dl_db + 1.0, ..*s })
            .collect();
        for model in CellSearchChannel::ALL {
            let base = sync_windows(
                &budget,
                &CellSearchTable::default(),
                model,
                DopplerCase::HighOffset,
                None,
            );
            let lifted = sync_windows(
                &raised,
                &CellSearchTable::default(),
                model,
                DopplerCase::HighOffset,
                None,
            );
            assert_eq!(base.len(), lifted.len());
            for (b, l) in base.iter().zip(&lifted) {
                assert!(l.start_s <= b.start_s + 1e-9);
                assert!(l.end_s >= b.end_s - 1e-9);
            }
        }
    }

    #[test]
    fn mib_curve_extends_the_requirement() {
        let budget = constant_budget(0.0, 400, 0.01);
        let table = CellSearchTable::default();
        let curve = MibDecoderCurve::new(vec![(-10.0, 64), (0.0, 8)]).unwrap();
        let plain =
            sync_windows(&budget, &table, CellSearchChannel::Los, DopplerCase::Static, None);
        let extended = sync_windows(
            &budget,
            &table,
            CellSearchChannel::Los,
            DopplerCase::Static,
            Some(&curve),
        );
        assert_eq!(plain.len(), 1);
        assert_eq!(extended.len(), 1);
        // 2 frames of search plus 8 MIB repetitions = 100 ms.
        assert!(extended[0].start_s > plain[0].start_s);
        assert!((extended[0].start_s - (budget[0].t_s + 0.10)).abs() < 0.011);
    }
}
