//! Run configuration: baseline defaults, a flat key-value file format with
//! dotted section keys, and strict parsing. Unknown keys are errors so that
//! a misspelled physics parameter can never silently fall back to its
//! default.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::access::{PreambleFormat, TimingReference};
use crate::error::{Error, Result};
use crate::geometry::{EarthModel, OrbitConfig, PassScenario};
use crate::link_budget::{AntennaPattern, LinkParams, PathLossModel};

/// Everything a run needs. Defaults are the baseline plan: 600 km retrograde
/// orbit, 2 GHz carrier, the fixed-loss table, the 8.48 dB / 73.4 deg patch
/// antenna, and an overhead pass served down to 30 deg.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub earth: EarthModel,
    pub orbit: OrbitConfig,
    /// Peak pass elevations to run, deg. Sweeps write one file set per value.
    pub max_elevation_deg: Vec<f64>,
    pub min_elevation_deg: f64,
    pub sample_step_s: f64,
    pub link: LinkParams,
    pub antenna: AntennaPattern,
    /// Payload size for the rate profile, bits.
    pub payload_bits: u32,
    /// Hold time between pre-compensation commands, s.
    pub update_period_s: f64,
    pub timing_reference: TimingReference,
    pub preamble_format: PreambleFormat,
    /// Orbits covered by the paging plan.
    pub coverage_orbit_count: u32,
    /// Ensemble size of the fading statistics.
    pub fading_draw_count: u32,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Directory with table override CSVs.
    pub tables_dir: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            earth: EarthModel::default(),
            orbit: OrbitConfig::default(),
            max_elevation_deg: vec![90.0],
            min_elevation_deg: 30.0,
            sample_step_s: 1.0,
            link: LinkParams::default(),
            antenna: AntennaPattern::default(),
            payload_bits: 100,
            update_period_s: 2.0,
            timing_reference: TimingReference::RoundTrip,
            preamble_format: PreambleFormat::Format0,
            coverage_orbit_count: 3,
            fading_draw_count: 100_000,
            seed: 1,
            out_dir: PathBuf::from("out"),
            tables_dir: None,
        }
    }
}

impl ScenarioConfig {
    /// Scenario for one sweep point.
    pub fn scenario_for(&self, max_elevation_deg: f64) -> PassScenario {
        PassScenario {
            orbit: self.orbit,
            max_elevation_deg,
            min_elevation_deg: self.min_elevation_deg,
            sample_step_s: self.sample_step_s,
        }
    }

    /// Applies a config file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        cfg.apply_str(text)?;
        Ok(cfg)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        let mut assignments = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`, got {raw:?}", lineno + 1))
            })?;
            self.apply(key.trim(), value.trim())?;
            assignments += 1;
        }
        if assignments == 0 {
            return Err(Error::Config("config file contains no settings".into()));
        }
        Ok(())
    }

    /// Sets one dotted key. Unknown keys are errors.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        fn f64_of(key: &str, value: &str) -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: expected a number, got {value:?}")))
        }
        fn u32_of(key: &str, value: &str) -> Result<u32> {
            value
                .parse::<u32>()
                .map_err(|_| Error::Config(format!("{key}: expected an integer, got {value:?}")))
        }
        fn bool_of(key: &str, value: &str) -> Result<bool> {
            match value.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(Error::Config(format!("{key}: expected true/false, got {value:?}"))),
            }
        }

        match key {
            "earth.radius_m" => self.earth.radius_m = f64_of(key, value)?,
            "earth.surface_speed_mps" => self.earth.surface_speed_mps = f64_of(key, value)?,
            "earth.mass_kg" => self.earth.mass_kg = f64_of(key, value)?,
            "earth.gravitational_constant" => {
                self.earth.gravitational_constant = f64_of(key, value)?
            }
            "earth.speed_of_light_mps" => self.earth.speed_of_light_mps = f64_of(key, value)?,
            "orbit.altitude_m" => self.orbit.altitude_m = f64_of(key, value)?,
            "orbit.carrier_hz" => self.orbit.carrier_hz = f64_of(key, value)?,
            "orbit.retrograde" => self.orbit.retrograde = bool_of(key, value)?,
            "pass.max_elevation_deg" => {
                self.max_elevation_deg = parse_f64_list(value)
                    .ok_or_else(|| Error::Config(format!("{key}: expected a number list")))?
            }
            "pass.min_elevation_deg" => self.min_elevation_deg = f64_of(key, value)?,
            "pass.sample_step_s" => self.sample_step_s = f64_of(key, value)?,
            "link.tx_power_dl_dbm" => self.link.tx_power_dl_dbm = f64_of(key, value)?,
            "link.tx_power_ul_dbm" => self.link.tx_power_ul_dbm = f64_of(key, value)?,
            "link.noise_figure_ue_db" => self.link.noise_figure_ue_db = f64_of(key, value)?,
            "link.noise_figure_sat_db" => self.link.noise_figure_sat_db = f64_of(key, value)?,
            "link.shadow_gain_db" => self.link.shadow_gain_db = f64_of(key, value)?,
            "link.polarization_gain_db" => self.link.polarization_gain_db = f64_of(key, value)?,
            "link.absorption_gain_db" => self.link.absorption_gain_db = f64_of(key, value)?,
            "link.scintillation_gain_db" => {
                self.link.scintillation_gain_db = f64_of(key, value)?
            }
            "link.noise_temperature_k" => self.link.noise_temperature_k = f64_of(key, value)?,
            "link.ue_antenna_gain_db" => self.link.ue_antenna_gain_db = f64_of(key, value)?,
            "link.pathloss_exponent" => self.link.pathloss_exponent = f64_of(key, value)?,
            "link.pathloss_model" => {
                self.link.pathloss_model = parse_pathloss(value)
                    .ok_or_else(|| Error::Config(format!(
                        "{key}: expected free_space or paper_exponent, got {value:?}"
                    )))?
            }
            "antenna.peak_gain_db" => self.antenna.peak_gain_db = f64_of(key, value)?,
            "antenna.beamwidth_3db_deg" => self.antenna.beamwidth_3db_deg = f64_of(key, value)?,
            "phy.payload_bits" => self.payload_bits = u32_of(key, value)?,
            "compensation.update_period_s" => self.update_period_s = f64_of(key, value)?,
            "compensation.timing_reference" => {
                self.timing_reference = match value.to_ascii_lowercase().as_str() {
                    "round_trip" => TimingReference::RoundTrip,
                    "one_way" => TimingReference::OneWay,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: expected round_trip or one_way, got {value:?}"
                        )))
                    }
                }
            }
            "rach.preamble_format" => {
                self.preamble_format = match value {
                    "0" => PreambleFormat::Format0,
                    "1" => PreambleFormat::Format1,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: expected 0 or 1, got {value:?}"
                        )))
                    }
                }
            }
            "coverage.orbit_count" => self.coverage_orbit_count = u32_of(key, value)?,
            "fading.draw_count" => self.fading_draw_count = u32_of(key, value)?,
            "run.seed" => {
                self.seed = value.parse::<u64>().map_err(|_| {
                    Error::Config(format!("{key}: expected an integer, got {value:?}"))
                })?
            }
            "run.out_dir" => self.out_dir = PathBuf::from(value),
            "run.tables_dir" => self.tables_dir = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.earth.validate()?;
        self.orbit.validate()?;
        if self.max_elevation_deg.is_empty() {
            return Err(Error::Config("pass.max_elevation_deg list is empty".into()));
        }
        for alpha in &self.max_elevation_deg {
            self.scenario_for(*alpha).validate()?;
        }
        if self.payload_bits == 0 {
            return Err(Error::Config("phy.payload_bits must be positive".into()));
        }
        if !self.link.noise_temperature_k.is_finite() || self.link.noise_temperature_k <= 0.0 {
            return Err(Error::Config("link.noise_temperature_k must be strictly positive".into()));
        }
        if !self.update_period_s.is_finite() || self.update_period_s < self.sample_step_s {
            return Err(Error::Config(
                "compensation.update_period_s must be at least pass.sample_step_s".into(),
            ));
        }
        if self.coverage_orbit_count == 0 {
            return Err(Error::Config("coverage.orbit_count must be positive".into()));
        }
        if self.fading_draw_count < 10_000 {
            return Err(Error::Config("fading.draw_count must be at least 10000".into()));
        }
        Ok(())
    }

    /// Canonical `key = value` listing of the resolved settings, for the run
    /// manifest. Fixed order, so identical configs render identically.
    pub fn manifest_lines(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("earth.radius_m", format!("{}", self.earth.radius_m));
        kv("earth.surface_speed_mps", format!("{}", self.earth.surface_speed_mps));
        kv("earth.mass_kg", format!("{:e}", self.earth.mass_kg));
        kv("earth.gravitational_constant", format!("{:e}", self.earth.gravitational_constant));
        kv("earth.speed_of_light_mps", format!("{}", self.earth.speed_of_light_mps));
        kv("orbit.altitude_m", format!("{}", self.orbit.altitude_m));
        kv("orbit.carrier_hz", format!("{:e}", self.orbit.carrier_hz));
        kv("orbit.retrograde", format!("{}", self.orbit.retrograde));
        kv(
            "pass.max_elevation_deg",
            self.max_elevation_deg
                .iter()
                .map(|a| format!("{a}"))
                .collect::<Vec<_>>()
                .join(","),
        );
        kv("pass.min_elevation_deg", format!("{}", self.min_elevation_deg));
        kv("pass.sample_step_s", format!("{}", self.sample_step_s));
        kv("link.tx_power_dl_dbm", format!("{}", self.link.tx_power_dl_dbm));
        kv("link.tx_power_ul_dbm", format!("{}", self.link.tx_power_ul_dbm));
        kv("link.noise_figure_ue_db", format!("{}", self.link.noise_figure_ue_db));
        kv("link.noise_figure_sat_db", format!("{}", self.link.noise_figure_sat_db));
        kv("link.shadow_gain_db", format!("{}", self.link.shadow_gain_db));
        kv("link.polarization_gain_db", format!("{}", self.link.polarization_gain_db));
        kv("link.absorption_gain_db", format!("{}", self.link.absorption_gain_db));
        kv("link.scintillation_gain_db", format!("{}", self.link.scintillation_gain_db));
        kv("link.noise_temperature_k", format!("{}", self.link.noise_temperature_k));
        kv("link.ue_antenna_gain_db", format!("{}", self.link.ue_antenna_gain_db));
        kv("link.pathloss_exponent", format!("{}", self.link.pathloss_exponent));
        kv("link.pathloss_model", pathloss_label(self.link.pathloss_model).to_string());
        kv("antenna.peak_gain_db", format!("{}", self.antenna.peak_gain_db));
        kv("antenna.beamwidth_3db_deg", format!("{}", self.antenna.beamwidth_3db_deg));
        kv("phy.payload_bits", format!("{}", self.payload_bits));
        kv("compensation.update_period_s", format!("{}", self.update_period_s));
        kv(
            "compensation.timing_reference",
            match self.timing_reference {
                TimingReference::RoundTrip => "round_trip".to_string(),
                TimingReference::OneWay => "one_way".to_string(),
            },
        );
        kv(
            "rach.preamble_format",
            match self.preamble_format {
                PreambleFormat::Format0 => "0".to_string(),
                PreambleFormat::Format1 => "1".to_string(),
            },
        );
        kv("coverage.orbit_count", format!("{}", self.coverage_orbit_count));
        kv("fading.draw_count", format!("{}", self.fading_draw_count));
        kv("run.seed", format!("{}", self.seed));
        kv("run.out_dir", self.out_dir.display().to_string());
        if let Some(dir) = &self.tables_dir {
            kv("run.tables_dir", dir.display().to_string());
        }
        s
    }
}

pub fn parse_pathloss(value: &str) -> Option<PathLossModel> {
    match value.to_ascii_lowercase().as_str() {
        "free_space" => Some(PathLossModel::FreeSpace),
        "paper_exponent" => Some(PathLossModel::ExponentOnly),
        _ => None,
    }
}

pub fn pathloss_label(model: PathLossModel) -> &'static str {
    match model {
        PathLossModel::FreeSpace => "free_space",
        PathLossModel::ExponentOnly => "paper_exponent",
    }
}

fn parse_f64_list(value: &str) -> Option<Vec<f64>> {
    let items: Option<Vec<f64>> =
        value.split(',').map(|v| v.trim().parse::<f64>().ok()).collect();
    items.filter(|v| !v.is_empty())
}
