//! Terminal-side adaptation procedures: ephemeris-based pre-compensation of
//! Doppler and delay, preamble timing/frequency limits, scheduling offsets,
//! and paging-mode planning across coverage gaps.

use crate::doppler::{DelaySample, DopplerSample};
use crate::error::{Error, Result};
use crate::geometry::SPEED_OF_LIGHT_MPS;

/// Transmit-side correction applied from time `t_s` until the next command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompensationCommand {
    pub t_s: f64,
    /// Added to the uplink carrier; the negative of the predicted offset.
    pub freq_advance_hz: f64,
    /// Transmit-early amount, s.
    pub time_advance_s: f64,
}

/// Reference plane of the timing advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimingReference {
    /// Advance by twice the one-way delay: the terminal observes downlink
    /// timing that is already one delay late, so the round trip must be
    /// covered for uplink arrivals to align at the base station.
    #[default]
    RoundTrip,
    /// Advance by the one-way delay (base-station-referenced timing).
    OneWay,
}

impl TimingReference {
    fn factor(self) -> f64 {
        match self {
            TimingReference::RoundTrip => 2.0,
            TimingReference::OneWay => 1.0,
        }
    }
}

/// Preamble format with its cyclic-prefix-derived timing limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreambleFormat {
    Format0,
    Format1,
}

/// Random-access alignment limits at preamble transmission time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RachLimits {
    pub format: PreambleFormat,
    /// Maximum tolerated timing misalignment (a quarter cyclic prefix), s.
    pub max_timing_error_s: f64,
    /// Maximum tolerated carrier offset, Hz.
    pub max_freq_error_hz: f64,
}

impl RachLimits {
    pub fn for_format(format: PreambleFormat) -> Self {
        let max_timing_error_s = match format {
            PreambleFormat::Format0 => 16.75e-6,
            PreambleFormat::Format1 => 66.75e-6,
        };
        RachLimits { format, max_timing_error_s, max_freq_error_hz: 200.0 }
    }
}

/// Emits one command per `update_period_s`, starting at the first profile
/// sample, each carrying the profile value at the command time (linear
/// interpolation between samples). The terminal holds the last command until
/// the next one.
pub fn precompensation_schedule(
    doppler: &[DopplerSample],
    delay: &[DelaySample],
    update_period_s: f64,
    reference: TimingReference,
) -> Result<Vec<CompensationCommand>> {
    if doppler.len() < 2 || doppler.len() != delay.len() {
        return Err(Error::TooFewSamples { min: 2, got: doppler.len().min(delay.len()) });
    }
    let step = doppler[1].t_s - doppler[0].t_s;
    if !update_period_s.is_finite() || update_period_s < step {
        return Err(Error::InvalidScenario(format!(
            "update period {update_period_s} s must be finite and at least the sample step {step} s"
        )));
    }
    let t_start = doppler[0].t_s;
    let t_end = doppler[doppler.len() - 1].t_s;
    let mut commands = Vec::new();
    let mut k = 0u64;
    loop {
        let t = t_start + k as f64 * update_period_s;
        if t > t_end + 1e-12 {
            break;
        }
        commands.push(CompensationCommand {
            t_s: t,
            freq_advance_hz: -interpolate(doppler, t, |d| d.offset_hz),
            time_advance_s: reference.factor() * interpolate(delay, t, |d| d.delay_s),
        });
        k += 1;
    }
    Ok(commands)
}

fn interpolate<T>(samples: &[T], t: f64, value: impl Fn(&T) -> f64) -> f64
where
    T: HasTime,
{
    let n = samples.len();
    let t0 = samples[0].t_s();
    let step = samples[1].t_s() - t0;
    let pos = ((t - t0) / step).clamp(0.0, (n - 1) as f64);
    let i = (pos.floor() as usize).min(n - 2);
    let frac = pos - i as f64;
    value(&samples[i]) * (1.0 - frac) + value(&samples[i + 1]) * frac
}

trait HasTime {
    fn t_s(&self) -> f64;
}

impl HasTime for DopplerSample {
    fn t_s(&self) -> f64 {
        self.t_s
    }
}

impl HasTime for DelaySample {
    fn t_s(&self) -> f64 {
        self.t_s
    }
}

/// Outcome of replaying held commands against the continuous profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Worst leftover carrier offset after compensation, Hz.
    pub max_freq_residual_hz: f64,
    /// Worst leftover timing error after compensation, s.
    pub max_time_residual_s: f64,
    /// Residuals within the preamble limits everywhere.
    pub compliant: bool,
    /// Longest hold time that would keep the frequency residual within the
    /// limit, given the steepest advance slope seen in the profile, s.
    pub required_freq_period_s: f64,
    /// Same for the timing residual, s.
    pub required_time_period_s: f64,
}

/// Replays a zero-order-hold command schedule against the profiles and
/// reports the worst residuals plus the update periods the limits imply.
pub fn residual_error_check(
    commands: &[CompensationCommand],
    doppler: &[DopplerSample],
    delay: &[DelaySample],
    limits: &RachLimits,
    reference: TimingReference,
) -> Result<ResidualReport> {
    if commands.is_empty() {
        return Err(Error::InvalidScenario("command schedule is empty".into()));
    }
    if doppler.len() != delay.len() || doppler.len() < 2 {
        return Err(Error::TooFewSamples { min: 2, got: doppler.len().min(delay.len()) });
    }

    let factor = reference.factor();
    let mut max_freq = 0.0_f64;
    let mut max_time = 0.0_f64;
    let mut cmd_idx = 0usize;
    for (d, tau) in doppler.iter().zip(delay) {
        while cmd_idx + 1 < commands.len() && commands[cmd_idx + 1].t_s <= d.t_s + 1e-12 {
            cmd_idx += 1;
        }
        let held = &commands[cmd_idx];
        max_freq = max_freq.max((-d.offset_hz - held.freq_advance_hz).abs());
        max_time = max_time.max((factor * tau.delay_s - held.time_advance_s).abs());
    }

    // Steepest slopes of the advance targets over the profile.
    let mut freq_slope = 0.0_f64;
    let mut time_slope = 0.0_f64;
    for i in 1..doppler.len() {
        let dt = doppler[i].t_s - doppler[i - 1].t_s;
        freq_slope =
            freq_slope.max(((doppler[i].offset_hz - doppler[i - 1].offset_hz) / dt).abs());
        time_slope =
            time_slope.max((factor * (delay[i].delay_s - delay[i - 1].delay_s) / dt).abs());
    }
    let required_freq_period_s =
        if freq_slope > 0.0 { limits.max_freq_error_hz / freq_slope } else { f64::INFINITY };
    let required_time_period_s =
        if time_slope > 0.0 { limits.max_timing_error_s / time_slope } else { f64::INFINITY };

    Ok(ResidualReport {
        max_freq_residual_hz: max_freq,
        max_time_residual_s: max_time,
        compliant: max_freq <= limits.max_freq_error_hz && max_time <= limits.max_timing_error_s,
        required_freq_period_s,
        required_time_period_s,
    })
}

/// Smallest integer millisecond count strictly greater than the one-way
/// propagation delay, for offsetting protocol timers.
pub fn scheduling_offset_ms(distance_m: f64) -> u64 {
    let delay_ms = distance_m / SPEED_OF_LIGHT_MPS * 1e3;
    delay_ms.floor() as u64 + 1
}

/// Paging regime of one plan segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PagingMode {
    /// Idle discontinuous reception, used while a satellite is overhead.
    Idrx,
    /// Power-save mode, used across coverage gaps.
    Psm,
}

impl PagingMode {
    pub fn label(self) -> &'static str {
        match self {
            PagingMode::Idrx => "idrx",
            PagingMode::Psm => "psm",
        }
    }
}

/// One service window of a pass over the planning horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassInterval {
    pub start_s: f64,
    pub end_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageSegment {
    pub start_s: f64,
    pub end_s: f64,
    pub mode: PagingMode,
}

/// Alternating paging plan over a horizon, plus its headline numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveragePlan {
    pub segments: Vec<CoverageSegment>,
    /// Longest stretch spent in power-save mode, s.
    pub max_gap_s: f64,
    /// Fraction of the horizon with coverage.
    pub duty_cycle: f64,
}

/// Builds the paging plan: discontinuous reception exactly on the service
/// windows, power-save mode on the gaps. The segments partition the horizon.
pub fn coverage_plan(
    passes: &[PassInterval],
    horizon_start_s: f64,
    horizon_end_s: f64,
) -> Result<CoveragePlan> {
    if passes.is_empty() {
        return Err(Error::InvalidScenario("coverage plan needs at least one pass".into()));
    }
    if horizon_end_s <= horizon_start_s {
        return Err(Error::InvalidScenario("horizon must have positive length".into()));
    }
    for (i, p) in passes.iter().enumerate() {
        if p.end_s <= p.start_s {
            return Err(Error::InvalidScenario(format!("pass {i} has non-positive length")));
        }
        if p.start_s < horizon_start_s || p.end_s > horizon_end_s {
            return Err(Error::InvalidScenario(format!("pass {i} leaves the horizon")));
        }
        if i > 0 && p.start_s < passes[i - 1].end_s {
            return Err(Error::InvalidScenario(format!("pass {i} overlaps its predecessor")));
        }
    }

    let mut segments: Vec<CoverageSegment> = Vec::new();
    let mut cursor = horizon_start_s;
    for p in passes {
        if p.start_s > cursor {
            segments.push(CoverageSegment { start_s: cursor, end_s: p.start_s, mode: PagingMode::Psm });
        }
        // Passes that touch exactly form one continuous coverage segment.
        match segments.last_mut() {
            Some(last) if last.mode == PagingMode::Idrx && last.end_s == p.start_s => {
                last.end_s = p.end_s;
            }
            _ => segments.push(CoverageSegment {
                start_s: p.start_s,
                end_s: p.end_s,
                mode: PagingMode::Idrx,
            }),
        }
        cursor = p.end_s;
    }
    if cursor < horizon_end_s {
        segments.push(CoverageSegment { start_s: cursor, end_s: horizon_end_s, mode: PagingMode::Psm });
    }

    let covered: f64 =
        segments.iter().filter(|s| s.mode == PagingMode::Idrx).map(|s| s.end_s - s.start_s).sum();
    let max_gap_s = segments
        .iter()
        .filter(|s| s.mode == PagingMode::Psm)
        .map(|s| s.end_s - s.start_s)
        .fold(0.0, f64::max);
    Ok(CoveragePlan {
        segments,
        max_gap_s,
        duty_cycle: covered / (horizon_end_s - horizon_start_s),
    })
}
