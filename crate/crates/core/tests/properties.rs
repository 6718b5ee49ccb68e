//! Randomized invariant checks over the physical parameter ranges the
//! simulator is meant for.

use proptest::prelude::*;

use leolink::access::{coverage_plan, scheduling_offset_ms, PagingMode, PassInterval};
use leolink::doppler::{delay_profile, doppler_profile};
use leolink::geometry::{
    pass_geometry, EarthModel, OrbitConfig, PassScenario, SPEED_OF_LIGHT_MPS,
};
use leolink::link_budget::{
    link_budget_profile, noise_power_dbm, AntennaPattern, Bandwidth, LinkParams,
};
use leolink::phy::{cell_search_frames, select_mcs, CellSearchChannel, CellSearchTable, DopplerCase, McsTable};

fn scenario_strategy() -> impl Strategy<Value = (PassScenario, EarthModel)> {
    (
        300e3..2000e3f64,         // altitude, m
        1e9..4e9f64,              // carrier, Hz
        any::<bool>(),            // retrograde
        5.0..60.0f64,             // min elevation, deg
        0.0..1.0f64,              // max elevation as a fraction of (min, 90]
        2.0..10.0f64,             // sample step, s
    )
        .prop_map(|(h0, carrier, retrograde, min_elev, frac, step)| {
            let max_elev = min_elev + (90.0 - min_elev) * frac.max(1e-6);
            let scenario = PassScenario {
                orbit: OrbitConfig { altitude_m: h0, retrograde, carrier_hz: carrier },
                max_elevation_deg: max_elev,
                min_elevation_deg: min_elev,
                sample_step_s: step,
            };
            (scenario, EarthModel::default())
        })
}

proptest! {
    #[test]
    fn geometry_identities_hold_everywhere((scenario, earth) in scenario_strategy()) {
        let pass = pass_geometry(&scenario, &earth).unwrap();
        let ratio = earth.radius_m / scenario.orbit.orbital_radius_m(&earth);
        let n = pass.samples.len();
        for (i, s) in pass.samples.iter().enumerate() {
            let sum = s.elevation_deg + s.nadir_angle_deg + s.central_angle_rad.to_degrees();
            prop_assert!((sum - 90.0).abs() < 1e-6);
            let residual =
                s.nadir_angle_deg.to_radians().sin() - ratio * s.elevation_deg.to_radians().cos();
            prop_assert!(residual.abs() < 1e-9);
            prop_assert!(s.slant_range_m >= scenario.orbit.altitude_m - 1e-6);
            prop_assert!(s.elevation_deg >= scenario.min_elevation_deg - 1e-9);
            // Mirror sample matches in range.
            let mirror = &pass.samples[n - 1 - i];
            prop_assert!((s.slant_range_m - mirror.slant_range_m).abs() <= 1e-9 * s.slant_range_m);
        }
    }

    #[test]
    fn doppler_antisymmetry_and_delay_consistency((scenario, earth) in scenario_strategy()) {
        let pass = pass_geometry(&scenario, &earth).unwrap();
        prop_assume!(pass.samples.len() >= 3);
        let carrier = scenario.orbit.carrier_hz;
        let doppler = doppler_profile(&pass, carrier).unwrap();
        let delay = delay_profile(&pass).unwrap();
        let peak = doppler.iter().map(|d| d.offset_hz.abs()).fold(0.0, f64::max);
        let bound = carrier * scenario.orbit.relative_speed_mps(&earth) / SPEED_OF_LIGHT_MPS;
        let n = doppler.len();
        for i in 0..n {
            prop_assert!(doppler[i].offset_hz.abs() <= bound);
            prop_assert!((doppler[i].offset_hz + doppler[n - 1 - i].offset_hz).abs() <= 1e-9 * peak.max(1.0));
            let via_delay = -carrier * delay[i].delay_rate;
            let scale = doppler[i].offset_hz.abs().max(1.0);
            prop_assert!((doppler[i].offset_hz - via_delay).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn budget_gaps_are_time_invariant(
        (scenario, earth) in scenario_strategy(),
        tx_dl in 30.0..50.0f64,
        tx_ul in 14.0..23.0f64,
        temperature in 150.0..600.0f64,
    ) {
        let pass = pass_geometry(&scenario, &earth).unwrap();
        let params = LinkParams {
            tx_power_dl_dbm: tx_dl,
            tx_power_ul_dbm: tx_ul,
            noise_temperature_k: temperature,
            ..LinkParams::default()
        };
        let budget = link_budget_profile(&pass, &params, &AntennaPattern::default()).unwrap();
        let narrowband = 10.0 * 48.0f64.log10();
        let gap0 = budget[0].snr_ul_db(Bandwidth::Khz3_75) - budget[0].snr_dl_db;
        for s in &budget {
            let nb = s.snr_ul_db(Bandwidth::Khz3_75) - s.snr_ul_db(Bandwidth::Khz180);
            prop_assert!((nb - narrowband).abs() < 1e-9);
            let gap = s.snr_ul_db(Bandwidth::Khz3_75) - s.snr_dl_db;
            prop_assert!((gap - gap0).abs() < 1e-9);
        }
        // The gap follows the power difference, noise-figure difference and
        // bandwidth ratio only.
        let expected = (tx_ul - tx_dl)
            + (params.noise_figure_sat_db - params.noise_figure_ue_db)
            + noise_power_dbm(temperature, 180_000.0)
            - noise_power_dbm(temperature, 3_750.0);
        prop_assert!((gap0 - expected).abs() < 1e-9);
    }

    #[test]
    fn selected_mcs_is_always_affordable(snr in -20.0..10.0f64) {
        let table = McsTable::default();
        match select_mcs(snr, &table) {
            Some(sel) => {
                let req = table.required_snr_db(sel.itbs, sel.repetitions).unwrap();
                prop_assert!(req <= snr);
            }
            None => prop_assert!(snr < table.min_required_snr_db()),
        }
    }

    #[test]
    fn cell_search_policy_is_pessimistic(snr in -10.0..8.0f64) {
        let table = CellSearchTable::default();
        for model in CellSearchChannel::ALL {
            for case in DopplerCase::ALL {
                let frames = cell_search_frames(snr, model, case, &table).unwrap();
                // A slightly better SNR never needs more frames.
                let better = cell_search_frames(snr + 0.5, model, case, &table).unwrap();
                prop_assert!(better <= frames);
            }
        }
    }

    #[test]
    fn scheduling_offset_brackets_the_delay(distance in 1.0..3e6f64) {
        let offset_ms = scheduling_offset_ms(distance) as f64;
        let delay_ms = distance / SPEED_OF_LIGHT_MPS * 1e3;
        prop_assert!(offset_ms > delay_ms);
        prop_assert!(offset_ms - 1.0 <= delay_ms);
    }

    #[test]
    fn coverage_segments_partition_any_horizon(
        starts in proptest::collection::vec(0.0..0.9f64, 1..8),
        lengths in proptest::collection::vec(0.01..0.1f64, 1..8),
    ) {
        let horizon = 10_000.0;
        let n = starts.len().min(lengths.len());
        let mut passes: Vec<PassInterval> = Vec::new();
        let mut cursor = 0.0f64;
        for i in 0..n {
            let start = (cursor + starts[i] * 500.0).min(horizon - 1.0);
            let end = (start + lengths[i] * 500.0).min(horizon);
            if end > start {
                passes.push(PassInterval { start_s: start, end_s: end });
                cursor = end;
            }
        }
        prop_assume!(!passes.is_empty());
        let plan = coverage_plan(&passes, 0.0, horizon).unwrap();
        let mut cursor = 0.0;
        let mut covered = 0.0;
        for (i, seg) in plan.segments.iter().enumerate() {
            prop_assert_eq!(seg.start_s, cursor);
            prop_assert!(seg.end_s > seg.start_s);
            if i > 0 {
                prop_assert_ne!(seg.mode, plan.segments[i - 1].mode);
            }
            if seg.mode == PagingMode::Idrx {
                covered += seg.end_s - seg.start_s;
            }
            cursor = seg.end_s;
        }
        prop_assert_eq!(cursor, horizon);
        prop_assert!((plan.duty_cycle - covered / horizon).abs() < 1e-12);
    }
}
