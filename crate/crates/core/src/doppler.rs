//! Doppler offset/rate and propagation delay/delay-rate series for a pass.
//!
//! The primary path is analytic: the slant-range derivative follows from the
//! chain rule through the in-track angle, so the reported rates carry no
//! step-size artifacts. [`finite_difference`] provides the numerical
//! cross-check used by the tests.
//!
//! Sign convention: the offset is positive while the satellite approaches
//! (range shrinking), and `offset = -carrier * delay_rate` at every sample.

use crate::error::{Error, Result};
use crate::geometry::PassGeometry;

/// Doppler state at one pass sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerSample {
    pub t_s: f64,
    /// Carrier offset, Hz. Positive while approaching.
    pub offset_hz: f64,
    /// Offset rate of change, Hz/s.
    pub rate_hz_per_s: f64,
}

/// Propagation delay state at one pass sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySample {
    pub t_s: f64,
    /// One-way propagation delay, s.
    pub delay_s: f64,
    /// Delay rate of change, s/s (dimensionless).
    pub delay_rate: f64,
}

/// Range rate d'(t), m/s. Positive while receding.
///
/// With gamma(t) from cos(gamma) = cos(omega*t)*cos(cross) the derivative of
/// the law-of-cosines range collapses to
/// `d' = r_e*r_s*omega*cos(cross)*sin(omega*t) / d`, which is regular at the
/// closest approach.
fn range_rate_mps(pass: &PassGeometry, t_s: f64, slant_range_m: f64) -> f64 {
    let r_e = pass.earth.radius_m;
    let r_s = pass.scenario.orbit.orbital_radius_m(&pass.earth);
    let omega = pass.angular_rate_rad_per_s;
    r_e * r_s * omega * pass.cross_track_angle_rad.cos() * (omega * t_s).sin() / slant_range_m
}

/// Range acceleration d''(t), m/s^2.
fn range_accel_mps2(pass: &PassGeometry, t_s: f64, slant_range_m: f64) -> f64 {
    let r_e = pass.earth.radius_m;
    let r_s = pass.scenario.orbit.orbital_radius_m(&pass.earth);
    let omega = pass.angular_rate_rad_per_s;
    let d = slant_range_m;
    let dp = range_rate_mps(pass, t_s, d);
    r_e * r_s
        * omega
        * pass.cross_track_angle_rad.cos()
        * (omega * (omega * t_s).cos() * d - (omega * t_s).sin() * dp)
        / (d * d)
}

fn check_samples(pass: &PassGeometry) -> Result<()> {
    if pass.samples.len() < 3 {
        return Err(Error::TooFewSamples { min: 3, got: pass.samples.len() });
    }
    Ok(())
}

/// Doppler offset and rate over the pass for a given carrier.
pub fn doppler_profile(pass: &PassGeometry, carrier_hz: f64) -> Result<Vec<DopplerSample>> {
    check_samples(pass)?;
    let c = pass.earth.speed_of_light_mps;
    Ok(pass
        .samples
        .iter()
        .map(|s| DopplerSample {
            t_s: s.t_s,
            offset_hz: -(carrier_hz / c) * range_rate_mps(pass, s.t_s, s.slant_range_m),
            rate_hz_per_s: -(carrier_hz / c) * range_accel_mps2(pass, s.t_s, s.slant_range_m),
        })
        .collect())
}

/// Propagation delay and delay rate over the pass.
pub fn delay_profile(pass: &PassGeometry) -> Result<Vec<DelaySample>> {
    check_samples(pass)?;
    let c = pass.earth.speed_of_light_mps;
    Ok(pass
        .samples
        .iter()
        .map(|s| DelaySample {
            t_s: s.t_s,
            delay_s: s.slant_range_m / c,
            delay_rate: range_rate_mps(pass, s.t_s, s.slant_range_m) / c,
        })
        .collect())
}

/// Second-order finite differences of `values` over `ts`: central in the
/// interior, one-sided three-point stencils at the ends. Numerical oracle for
/// the analytic rates.
pub fn finite_difference(ts: &[f64], values: &[f64]) -> Vec<f64> {
    assert_eq!(ts.len(), values.len());
    let n = ts.len();
    assert!(n >= 3, "finite differences need at least 3 samples");
    let mut out = Vec::with_capacity(n);
    let h = ts[1] - ts[0];
    out.push((-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h));
    for i in 1..n - 1 {
        out.push((values[i + 1] - values[i - 1]) / (ts[i + 1] - ts[i - 1]));
    }
    let h = ts[n - 1] - ts[n - 2];
    out.push((3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h));
    out
}
