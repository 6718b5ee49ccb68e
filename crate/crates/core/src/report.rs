//! Subcommand runners: evaluate the models over the configured scenario and
//! write plot-ready CSV series plus a run manifest.
//!
//! Output rules: one CSV per series, a header row with a unit suffix on
//! every column, floats rendered with nine significant digits, and a
//! `run_manifest.txt` recording the resolved config, the seed, the library
//! version and every file written. Runs are byte-identical for identical
//! config and seed.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use crate::access::{
    coverage_plan, precompensation_schedule, residual_error_check, PassInterval, RachLimits,
};
use crate::config::ScenarioConfig;
use crate::doppler::{delay_profile, doppler_profile};
use crate::error::{Error, Result};
use crate::fading::{draw_ensemble, estimated_k_factor, mean_tap_powers, FadingModelSpec};
use crate::geometry::{pass_geometry, PassGeometry};
use crate::link_budget::{
    link_budget_profile, satellite_antenna_gain_db, Bandwidth, LinkBudgetSample,
};
use crate::phy::{
    effective_capacity_bps, phy_rate_profile, rap_repetitions, sync_windows, CellSearchChannel,
    DopplerCase, LinkDirection, PerformanceTables, RapChannel,
};

/// What `run` should produce. `Report` runs everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunCommand {
    Geometry,
    Doppler,
    Delay,
    AntennaMap,
    LinkBudget,
    PhyRate,
    SyncWindows,
    Rach,
    Compensation,
    Coverage,
    FadingStats,
    Report,
}

impl RunCommand {
    fn includes(self, other: RunCommand) -> bool {
        self == RunCommand::Report || self == other
    }

    fn needs_pass(self) -> bool {
        !matches!(self, RunCommand::AntennaMap | RunCommand::FadingStats)
    }
}

/// Nine-significant-digit float rendering for the CSV bodies.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

struct Output {
    name: String,
    content: String,
}

/// Runs one subcommand over the configured scenario, writes its outputs and
/// the manifest, and returns the paths written.
pub fn run(cmd: RunCommand, cfg: &ScenarioConfig) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let tables = match &cfg.tables_dir {
        Some(dir) => PerformanceTables::load_dir(dir)?,
        None => PerformanceTables::default(),
    };

    let mut outputs: Vec<Output> = Vec::new();

    if cmd.includes(RunCommand::AntennaMap) {
        outputs.push(antenna_map_csv(cfg));
    }
    if cmd.includes(RunCommand::FadingStats) {
        let (taps, k) = fading_csvs(cfg);
        outputs.push(taps);
        outputs.push(k);
    }

    if cmd.needs_pass() {
        for alpha in &cfg.max_elevation_deg {
            let pass = pass_geometry(&cfg.scenario_for(*alpha), &cfg.earth)?;
            let tag = format!("amax{alpha}");
            if cmd.includes(RunCommand::Geometry) {
                outputs.push(geometry_csv(&tag, &pass));
            }
            if cmd.includes(RunCommand::Doppler) {
                outputs.push(doppler_csv(&tag, &pass)?);
            }
            if cmd.includes(RunCommand::Delay) {
                outputs.push(delay_csv(&tag, &pass)?);
            }
            let needs_budget = [
                RunCommand::LinkBudget,
                RunCommand::PhyRate,
                RunCommand::SyncWindows,
                RunCommand::Rach,
            ]
            .iter()
            .any(|c| cmd.includes(*c));
            if needs_budget {
                let budget = link_budget_profile(&pass, &cfg.link, &cfg.antenna)?;
                if cmd.includes(RunCommand::LinkBudget) {
                    outputs.push(link_budget_csv(&tag, &budget));
                }
                if cmd.includes(RunCommand::PhyRate) {
                    outputs.push(phy_rate_csv(&tag, &budget, cfg, &tables)?);
                }
                if cmd.includes(RunCommand::SyncWindows) {
                    outputs.push(sync_windows_csv(&tag, &budget, &tables));
                }
                if cmd.includes(RunCommand::Rach) {
                    outputs.push(rach_csv(&tag, &budget, &tables));
                }
            }
            if cmd.includes(RunCommand::Compensation) {
                let (commands, report) = compensation_csvs(&tag, &pass, cfg)?;
                outputs.push(commands);
                outputs.push(report);
            }
            if cmd.includes(RunCommand::Coverage) {
                let (segments, summary) = coverage_csvs(&tag, &pass, cfg)?;
                outputs.push(segments);
                outputs.push(summary);
            }
        }
    }

    write_outputs(cfg, outputs)
}

fn write_outputs(cfg: &ScenarioConfig, mut outputs: Vec<Output>) -> Result<Vec<PathBuf>> {
    outputs.sort_by(|a, b| a.name.cmp(&b.name));

    let mut manifest = String::new();
    let _ = writeln!(manifest, "# run manifest");
    let _ = writeln!(manifest, "library = {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(manifest, "seed = {}", cfg.seed);
    manifest.push_str(&cfg.manifest_lines());
    for o in &outputs {
        let _ = writeln!(manifest, "file = {}", o.name);
    }
    outputs.push(Output { name: "run_manifest.txt".into(), content: manifest });

    fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| Error::io(cfg.out_dir.display().to_string(), e))?;
    let mut written = Vec::with_capacity(outputs.len());
    for o in &outputs {
        let path = cfg.out_dir.join(&o.name);
        fs::write(&path, &o.content).map_err(|e| Error::io(path.display().to_string(), e))?;
        written.push(path);
    }
    Ok(written)
}

fn geometry_csv(tag: &str, pass: &PassGeometry) -> Output {
    let mut content =
        String::from("t_s,central_angle_rad,elevation_deg,nadir_angle_deg,slant_range_m\n");
    for s in &pass.samples {
        let _ = writeln!(
            content,
            "{},{},{},{},{}",
            sig9(s.t_s),
            sig9(s.central_angle_rad),
            sig9(s.elevation_deg),
            sig9(s.nadir_angle_deg),
            sig9(s.slant_range_m)
        );
    }
    Output { name: format!("geometry_{tag}.csv"), content }
}

fn doppler_csv(tag: &str, pass: &PassGeometry) -> Result<Output> {
    let profile = doppler_profile(pass, pass.scenario.orbit.carrier_hz)?;
    let mut content = String::from("t_s,f_offset_hz,f_rate_hz_per_s\n");
    for d in &profile {
        let _ = writeln!(content, "{},{},{}", sig9(d.t_s), sig9(d.offset_hz), sig9(d.rate_hz_per_s));
    }
    Ok(Output { name: format!("doppler_{tag}.csv"), content })
}

fn delay_csv(tag: &str, pass: &PassGeometry) -> Result<Output> {
    let profile = delay_profile(pass)?;
    let mut content = String::from("t_s,tau_s,tau_rate_s_per_s\n");
    for d in &profile {
        let _ = writeln!(content, "{},{},{}", sig9(d.t_s), sig9(d.delay_s), sig9(d.delay_rate));
    }
    Ok(Output { name: format!("delay_{tag}.csv"), content })
}

fn antenna_map_csv(cfg: &ScenarioConfig) -> Output {
    let mut content = String::from("nadir_angle_deg,gain_db\n");
    let mut i = 0;
    loop {
        let beta = i as f64 * 0.1;
        if beta > 90.0 {
            break;
        }
        let _ = writeln!(
            content,
            "{},{}",
            sig9(beta),
            sig9(satellite_antenna_gain_db(beta, &cfg.antenna))
        );
        i += 1;
    }
    Output { name: "antenna_map.csv".into(), content }
}

fn link_budget_csv(tag: &str, budget: &[LinkBudgetSample]) -> Output {
    let mut content = String::from(
        "t_s,snr_dl_db,snr_ul_3750_db,snr_ul_15000_db,snr_ul_45000_db,snr_ul_90000_db,snr_ul_180000_db\n",
    );
    for s in budget {
        let ul: Vec<String> =
            Bandwidth::ALL.iter().map(|bw| sig9(s.snr_ul_db(*bw))).collect();
        let _ = writeln!(content, "{},{},{}", sig9(s.t_s), sig9(s.snr_dl_db), ul.join(","));
    }
    Output { name: format!("link_budget_{tag}.csv"), content }
}

fn phy_rate_csv(
    tag: &str,
    budget: &[LinkBudgetSample],
    cfg: &ScenarioConfig,
    tables: &PerformanceTables,
) -> Result<Output> {
    let rates = phy_rate_profile(budget, cfg.payload_bits, &tables.mcs)?;
    let mut content =
        String::from("t_s,itbs_index,repetitions_count,rate_bps,effective_rate_bps\n");
    for r in &rates {
        let (itbs, reps) = match r.selection {
            Some(sel) => (sel.itbs as i64, sel.repetitions as i64),
            None => (-1, -1),
        };
        let effective =
            effective_capacity_bps(LinkDirection::Downlink, r.rate_bps, &tables.overhead);
        let _ = writeln!(
            content,
            "{},{},{},{},{}",
            sig9(r.t_s),
            itbs,
            reps,
            sig9(r.rate_bps),
            sig9(effective)
        );
    }
    Ok(Output { name: format!("phy_rate_{tag}.csv"), content })
}

fn sync_windows_csv(tag: &str, budget: &[LinkBudgetSample], tables: &PerformanceTables) -> Output {
    // Windows under the worst residual-Doppler column of the table.
    let mut content = String::from("model_name,window_index,start_s,end_s\n");
    for model in CellSearchChannel::ALL {
        let windows = sync_windows(
            budget,
            &tables.cell_search,
            model,
            DopplerCase::HighOffset,
            tables.mib.as_ref(),
        );
        for (i, w) in windows.iter().enumerate() {
            let _ = writeln!(
                content,
                "{},{},{},{}",
                model.label(),
                i,
                sig9(w.start_s),
                sig9(w.end_s)
            );
        }
    }
    Output { name: format!("sync_windows_{tag}.csv"), content }
}

fn rach_csv(tag: &str, budget: &[LinkBudgetSample], tables: &PerformanceTables) -> Output {
    // Preamble requirements against the narrowband uplink budget;
    // -1 marks SNRs below the characterised range.
    let mut content = String::from(
        "t_s,snr_ul_3750_db,awgn_repetitions_count,awgn_failure_pct,ncu_repetitions_count,ncu_failure_pct,ndh_repetitions_count,ndh_failure_pct\n",
    );
    for s in budget {
        let snr = s.snr_ul_db(Bandwidth::Khz3_75);
        let mut row = format!("{},{}", sig9(s.t_s), sig9(snr));
        for model in RapChannel::ALL {
            match rap_repetitions(snr, model, &tables.rap) {
                Some(cell) => {
                    let _ = write!(row, ",{},{}", cell.repetitions, sig9(cell.failure_pct));
                }
                None => row.push_str(",-1,-1"),
            }
        }
        let _ = writeln!(content, "{row}");
    }
    Output { name: format!("rach_{tag}.csv"), content }
}

fn compensation_csvs(
    tag: &str,
    pass: &PassGeometry,
    cfg: &ScenarioConfig,
) -> Result<(Output, Output)> {
    let doppler = doppler_profile(pass, pass.scenario.orbit.carrier_hz)?;
    let delay = delay_profile(pass)?;
    let commands =
        precompensation_schedule(&doppler, &delay, cfg.update_period_s, cfg.timing_reference)?;
    let mut content = String::from("t_s,freq_advance_hz,time_advance_s\n");
    for c in &commands {
        let _ = writeln!(
            content,
            "{},{},{}",
            sig9(c.t_s),
            sig9(c.freq_advance_hz),
            sig9(c.time_advance_s)
        );
    }
    let commands_csv = Output { name: format!("compensation_commands_{tag}.csv"), content };

    let limits = RachLimits::for_format(cfg.preamble_format);
    let report = residual_error_check(&commands, &doppler, &delay, &limits, cfg.timing_reference)?;
    let mut content = String::from(
        "max_freq_residual_hz,max_time_residual_s,compliant_flag,required_freq_period_s,required_time_period_s\n",
    );
    let _ = writeln!(
        content,
        "{},{},{},{},{}",
        sig9(report.max_freq_residual_hz),
        sig9(report.max_time_residual_s),
        u8::from(report.compliant),
        sig9(report.required_freq_period_s),
        sig9(report.required_time_period_s)
    );
    let report_csv = Output { name: format!("compensation_report_{tag}.csv"), content };
    Ok((commands_csv, report_csv))
}

fn coverage_csvs(
    tag: &str,
    pass: &PassGeometry,
    cfg: &ScenarioConfig,
) -> Result<(Output, Output)> {
    let period = cfg.orbit.orbital_period_s(&cfg.earth);
    let first = pass.samples.first().expect("pass_geometry never returns empty");
    let last = pass.samples.last().unwrap();
    let pass_len = (last.t_s - first.t_s).max(cfg.sample_step_s);
    let horizon_end = cfg.coverage_orbit_count as f64 * period;
    let passes: Vec<PassInterval> = (0..cfg.coverage_orbit_count)
        .map(|k| {
            let centre = period / 2.0 + k as f64 * period;
            PassInterval { start_s: centre - pass_len / 2.0, end_s: centre + pass_len / 2.0 }
        })
        .collect();
    let plan = coverage_plan(&passes, 0.0, horizon_end)?;

    let mut content = String::from("segment_index,start_s,end_s,duration_s,mode_name\n");
    for (i, seg) in plan.segments.iter().enumerate() {
        let _ = writeln!(
            content,
            "{},{},{},{},{}",
            i,
            sig9(seg.start_s),
            sig9(seg.end_s),
            sig9(seg.end_s - seg.start_s),
            seg.mode.label()
        );
    }
    let segments_csv = Output { name: format!("coverage_{tag}.csv"), content };

    let mut content =
        String::from("max_gap_s,duty_cycle_ratio,orbital_period_s,pass_duration_s\n");
    let _ = writeln!(
        content,
        "{},{},{},{}",
        sig9(plan.max_gap_s),
        sig9(plan.duty_cycle),
        sig9(period),
        sig9(pass_len)
    );
    let summary_csv = Output { name: format!("coverage_summary_{tag}.csv"), content };
    Ok((segments_csv, summary_csv))
}

fn fading_csvs(cfg: &ScenarioConfig) -> (Output, Output) {
    let mut taps_csv = String::from(
        "model_name,tap_index,delay_ns,model_gain_db,estimated_power_db\n",
    );
    let mut k_csv = String::from("model_name,k_estimate_linear,k_std_error_linear,draw_count\n");
    for spec in [FadingModelSpec::ncu(), FadingModelSpec::ndh()] {
        let ensemble = draw_ensemble(&spec, cfg.seed, cfg.fading_draw_count as usize);
        let powers = mean_tap_powers(&ensemble);
        for (i, p) in powers.iter().enumerate() {
            let _ = writeln!(
                taps_csv,
                "{},{},{},{},{}",
                spec.id.label(),
                i,
                sig9(spec.tap_delays_ns[i]),
                sig9(spec.tap_gains_db[i]),
                sig9(10.0 * p.log10())
            );
        }
        let tap0: Vec<_> = ensemble.iter().map(|r| r.taps[0]).collect();
        let est = estimated_k_factor(&tap0).expect("draw count is validated to 1e4+");
        let _ = writeln!(
            k_csv,
            "{},{},{},{}",
            spec.id.label(),
            sig9(est.k_linear),
            sig9(est.std_error),
            ensemble.len()
        );
    }
    (
        Output { name: "fading_taps.csv".into(), content: taps_csv },
        Output { name: "fading_k.csv".into(), content: k_csv },
    )
}
