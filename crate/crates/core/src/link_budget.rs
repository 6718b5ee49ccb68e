//! Received-SNR evaluation over a pass for the downlink and every uplink
//! allocation width.
//!
//! The budget is a signed sum in dB: transmit power, path loss, satellite
//! antenna gain, terminal antenna gain, receiver noise figure and the fixed
//! shadowing/polarization/absorption/scintillation terms, minus the thermal
//! noise power in the allocation bandwidth. Fixed loss terms are entered as
//! negative gains.

use crate::error::{Error, Result};
use crate::geometry::PassGeometry;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Path-loss law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathLossModel {
    /// Standard free-space loss at the carrier frequency.
    #[default]
    FreeSpace,
    /// Bare power-law `10*n*log10(d)` with d in metres and no frequency
    /// term. Kept as a comparison mode; it does not reproduce plausible
    /// absolute SNR levels at S-band.
    ExponentOnly,
}

/// All fixed terms of the budget. Defaults carry the baseline plan: 8 W per
/// downlink carrier, a power-class-3 terminal, and the fixed loss set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    /// Satellite per-carrier transmit power, dBm.
    pub tx_power_dl_dbm: f64,
    /// Terminal transmit power, dBm.
    pub tx_power_ul_dbm: f64,
    /// Terminal receiver noise figure, dB (negative gain).
    pub noise_figure_ue_db: f64,
    /// Satellite receiver noise figure, dB (negative gain).
    pub noise_figure_sat_db: f64,
    /// Shadowing loss, dB (negative gain).
    pub shadow_gain_db: f64,
    /// Polarization mismatch loss, dB (negative gain).
    pub polarization_gain_db: f64,
    /// Atmospheric absorption loss, dB (negative gain).
    pub absorption_gain_db: f64,
    /// Scintillation loss, dB (negative gain).
    pub scintillation_gain_db: f64,
    /// Receiver noise temperature, K.
    pub noise_temperature_k: f64,
    /// Terminal antenna gain inside the service window, dB.
    pub ue_antenna_gain_db: f64,
    /// Exponent n of the bare power-law mode.
    pub pathloss_exponent: f64,
    pub pathloss_model: PathLossModel,
}

impl Default for LinkParams {
    fn default() -> Self {
        LinkParams {
            tx_power_dl_dbm: 39.0,
            tx_power_ul_dbm: 23.0,
            noise_figure_ue_db: -9.0,
            noise_figure_sat_db: -3.0,
            shadow_gain_db: -3.0,
            polarization_gain_db: -3.0,
            absorption_gain_db: -0.1,
            scintillation_gain_db: -2.2,
            noise_temperature_k: 290.0,
            ue_antenna_gain_db: 0.0,
            pathloss_exponent: 2.0,
            pathloss_model: PathLossModel::FreeSpace,
        }
    }
}

/// Main-lobe pattern of the satellite patch antenna: quadratic in dB with
/// exactly -3 dB at half the 3 dB width, floored 30 dB below the peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    pub peak_gain_db: f64,
    /// Full 3 dB angular width, deg.
    pub beamwidth_3db_deg: f64,
}

impl Default for AntennaPattern {
    fn default() -> Self {
        AntennaPattern { peak_gain_db: 8.48, beamwidth_3db_deg: 73.4 }
    }
}

/// Uplink allocation widths; the downlink always occupies the full carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bandwidth {
    Khz3_75,
    Khz15,
    Khz45,
    Khz90,
    Khz180,
}

impl Bandwidth {
    pub const ALL: [Bandwidth; 5] =
        [Bandwidth::Khz3_75, Bandwidth::Khz15, Bandwidth::Khz45, Bandwidth::Khz90, Bandwidth::Khz180];

    pub fn hz(self) -> f64 {
        match self {
            Bandwidth::Khz3_75 => 3_750.0,
            Bandwidth::Khz15 => 15_000.0,
            Bandwidth::Khz45 => 45_000.0,
            Bandwidth::Khz90 => 90_000.0,
            Bandwidth::Khz180 => 180_000.0,
        }
    }

    pub fn from_hz(hz: u32) -> Option<Bandwidth> {
        Bandwidth::ALL.into_iter().find(|b| b.hz() as u32 == hz)
    }

    fn index(self) -> usize {
        Bandwidth::ALL.iter().position(|b| *b == self).unwrap()
    }
}

/// SNR at one pass sample: the 180 kHz downlink plus every uplink width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetSample {
    pub t_s: f64,
    pub snr_dl_db: f64,
    /// Uplink SNR per allocation width, ordered as [`Bandwidth::ALL`].
    pub snr_ul_db: [f64; 5],
}

impl LinkBudgetSample {
    pub fn snr_ul_db(&self, bw: Bandwidth) -> f64 {
        self.snr_ul_db[bw.index()]
    }
}

/// Thermal noise power `10*log10(k_B*T*bw) + 30`, dBm.
pub fn noise_power_dbm(temperature_k: f64, bandwidth_hz: f64) -> f64 {
    10.0 * (BOLTZMANN * temperature_k * bandwidth_hz).log10() + 30.0
}

/// Path loss as a negative gain, dB.
pub fn path_loss_db(distance_m: f64, carrier_hz: f64, params: &LinkParams) -> f64 {
    match params.pathloss_model {
        PathLossModel::FreeSpace => {
            let c = crate::geometry::SPEED_OF_LIGHT_MPS;
            -(20.0 * distance_m.log10()
                + 20.0 * carrier_hz.log10()
                + 20.0 * (4.0 * std::f64::consts::PI / c).log10())
        }
        PathLossModel::ExponentOnly => -10.0 * params.pathloss_exponent * distance_m.log10(),
    }
}

/// Satellite antenna gain towards a nadir angle, dB.
pub fn satellite_antenna_gain_db(nadir_angle_deg: f64, pattern: &AntennaPattern) -> f64 {
    let half_width = pattern.beamwidth_3db_deg / 2.0;
    let rolloff = 3.0 * (nadir_angle_deg / half_width).powi(2);
    pattern.peak_gain_db - rolloff.min(30.0)
}

/// Evaluates the budget at every pass sample.
pub fn link_budget_profile(
    pass: &PassGeometry,
    params: &LinkParams,
    pattern: &AntennaPattern,
) -> Result<Vec<LinkBudgetSample>> {
    if pass.samples.is_empty() {
        return Err(Error::InvalidScenario("link budget needs a non-empty pass".into()));
    }
    let carrier = pass.scenario.orbit.carrier_hz;
    let noise_dl = noise_power_dbm(params.noise_temperature_k, Bandwidth::Khz180.hz());
    let noise_ul: Vec<f64> = Bandwidth::ALL
        .iter()
        .map(|bw| noise_power_dbm(params.noise_temperature_k, bw.hz()))
        .collect();

    Ok(pass
        .samples
        .iter()
        .map(|s| {
            // Terminal gain only counts inside the service window.
            let ue_gain = if s.elevation_deg >= pass.scenario.min_elevation_deg {
                params.ue_antenna_gain_db
            } else {
                0.0
            };
            let shared = path_loss_db(s.slant_range_m, carrier, params)
                + satellite_antenna_gain_db(s.nadir_angle_deg, pattern)
                + ue_gain
                + params.shadow_gain_db
                + params.polarization_gain_db
                + params.absorption_gain_db
                + params.scintillation_gain_db;
            let snr_dl = params.tx_power_dl_dbm + shared + params.noise_figure_ue_db - noise_dl;
            let mut snr_ul = [0.0; 5];
            for (i, n) in noise_ul.iter().enumerate() {
                snr_ul[i] = params.tx_power_ul_dbm + shared + params.noise_figure_sat_db - n;
            }
            LinkBudgetSample { t_s: s.t_s, snr_dl_db: snr_dl, snr_ul_db: snr_ul }
        })
        .collect())
}
