//! Pass geometry for a circular LEO orbit over a fixed ground terminal.
//!
//! The earth is a sphere and the satellite flies a circular orbit; the
//! terminal sits at a fixed cross-track offset chosen so that the peak
//! elevation of the pass equals the requested maximum elevation. Everything
//! downstream (Doppler, delay, link budget) consumes the sample series
//! produced here.
//!
//! Angle conventions: the elevation angle is measured at the terminal from
//! the local horizon, the nadir angle at the satellite from the sub-satellite
//! direction, and the central angle at the earth centre between the two. For
//! every sample `elevation + nadir + central = 90 deg` and
//! `sin(nadir) = (r_e/r_s) * cos(elevation)`.

use crate::error::{Error, Result};

/// CODATA value of the gravitational constant, m^3/(kg*s^2).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.6743e-11;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_MPS: f64 = 299_792_458.0;

/// Spherical earth with a surface rotation speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    /// Earth radius, m.
    pub radius_m: f64,
    /// Surface rotation speed at the equator, m/s.
    pub surface_speed_mps: f64,
    /// Earth mass, kg.
    pub mass_kg: f64,
    /// Gravitational constant, m^3/(kg*s^2).
    pub gravitational_constant: f64,
    /// Speed of light, m/s.
    pub speed_of_light_mps: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        EarthModel {
            radius_m: 6_357_000.0,
            surface_speed_mps: 460.0,
            mass_kg: 5.972e24,
            gravitational_constant: GRAVITATIONAL_CONSTANT,
            speed_of_light_mps: SPEED_OF_LIGHT_MPS,
        }
    }
}

impl EarthModel {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("earth.radius_m", self.radius_m),
            ("earth.surface_speed_mps", self.surface_speed_mps),
            ("earth.mass_kg", self.mass_kg),
            ("earth.gravitational_constant", self.gravitational_constant),
            ("earth.speed_of_light_mps", self.speed_of_light_mps),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidScenario(format!("{name} must be strictly positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Circular orbit and carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    /// Altitude above the surface, m.
    pub altitude_m: f64,
    /// Orbit opposes the earth spin, so the surface speed adds to the
    /// ground-track speed (worst-case Doppler).
    pub retrograde: bool,
    /// Carrier frequency, Hz.
    pub carrier_hz: f64,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig { altitude_m: 600_000.0, retrograde: true, carrier_hz: 2.0e9 }
    }
}

impl OrbitConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.altitude_m.is_finite() || self.altitude_m <= 0.0 {
            return Err(Error::InvalidScenario(format!(
                "orbit.altitude_m must be strictly positive, got {}",
                self.altitude_m
            )));
        }
        if !self.carrier_hz.is_finite() || self.carrier_hz <= 0.0 {
            return Err(Error::InvalidScenario(format!(
                "orbit.carrier_hz must be strictly positive, got {}",
                self.carrier_hz
            )));
        }
        Ok(())
    }

    /// Orbit radius measured from the earth centre, m.
    pub fn orbital_radius_m(&self, earth: &EarthModel) -> f64 {
        earth.radius_m + self.altitude_m
    }

    /// Circular Kepler speed `sqrt(G*M/(r_e+h))`, m/s.
    pub fn satellite_speed_mps(&self, earth: &EarthModel) -> f64 {
        (earth.gravitational_constant * earth.mass_kg / self.orbital_radius_m(earth)).sqrt()
    }

    /// Ground-relative speed used for the pass kinematics. For a retrograde
    /// orbit the earth surface speed adds co-planarly to the satellite speed.
    pub fn relative_speed_mps(&self, earth: &EarthModel) -> f64 {
        let v = self.satellite_speed_mps(earth);
        if self.retrograde {
            v + earth.surface_speed_mps
        } else {
            v
        }
    }

    /// Angular rate of the sub-satellite point relative to the terminal, rad/s.
    pub fn angular_rate_rad_per_s(&self, earth: &EarthModel) -> f64 {
        self.relative_speed_mps(earth) / self.orbital_radius_m(earth)
    }

    /// Orbital period of the circular orbit, s.
    pub fn orbital_period_s(&self, earth: &EarthModel) -> f64 {
        2.0 * std::f64::consts::PI * self.orbital_radius_m(earth) / self.satellite_speed_mps(earth)
    }
}

/// One satellite pass over a fixed terminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassScenario {
    pub orbit: OrbitConfig,
    /// Peak elevation of the pass, deg. Fixes the cross-track offset of the
    /// terminal relative to the ground track.
    pub max_elevation_deg: f64,
    /// Minimum service elevation, deg. Samples below it are not part of the
    /// pass.
    pub min_elevation_deg: f64,
    /// Time resolution of the sample series, s.
    pub sample_step_s: f64,
}

impl Default for PassScenario {
    fn default() -> Self {
        PassScenario {
            orbit: OrbitConfig::default(),
            max_elevation_deg: 90.0,
            min_elevation_deg: 30.0,
            sample_step_s: 1.0,
        }
    }
}

impl PassScenario {
    pub fn validate(&self) -> Result<()> {
        self.orbit.validate()?;
        let in_range = |v: f64| v.is_finite() && v > 0.0 && v <= 90.0;
        if !in_range(self.min_elevation_deg) {
            return Err(Error::InvalidScenario(format!(
                "pass.min_elevation_deg must be in (0, 90], got {}",
                self.min_elevation_deg
            )));
        }
        if !in_range(self.max_elevation_deg) {
            return Err(Error::InvalidScenario(format!(
                "pass.max_elevation_deg must be in (0, 90], got {}",
                self.max_elevation_deg
            )));
        }
        if !self.sample_step_s.is_finite() || self.sample_step_s <= 0.0 {
            return Err(Error::InvalidScenario(format!(
                "pass.sample_step_s must be strictly positive, got {}",
                self.sample_step_s
            )));
        }
        Ok(())
    }
}

/// One time sample of the pass geometry. Time is relative to the closest
/// approach, so the series is symmetric about `t_s = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySample {
    /// Time relative to closest approach, s.
    pub t_s: f64,
    /// Central angle between the sub-satellite point and the terminal, rad.
    pub central_angle_rad: f64,
    /// Elevation of the satellite above the local horizon, deg.
    pub elevation_deg: f64,
    /// Nadir angle of the terminal as seen from the satellite, deg.
    pub nadir_angle_deg: f64,
    /// Terminal-satellite distance, m.
    pub slant_range_m: f64,
}

/// Sampled pass plus the derived constants the kinematics need.
#[derive(Debug, Clone)]
pub struct PassGeometry {
    pub scenario: PassScenario,
    pub earth: EarthModel,
    /// Fixed cross-track central angle of the terminal, rad.
    pub cross_track_angle_rad: f64,
    /// In-track angular rate, rad/s.
    pub angular_rate_rad_per_s: f64,
    /// Samples ordered by time, covering the window where the elevation is
    /// at least the minimum service elevation.
    pub samples: Vec<GeometrySample>,
}

impl PassGeometry {
    pub fn sample_step_s(&self) -> f64 {
        self.scenario.sample_step_s
    }

    /// Slant range at time `t_s`, m (continuous, not restricted to samples).
    pub fn slant_range_at(&self, t_s: f64) -> f64 {
        let r_e = self.earth.radius_m;
        let r_s = self.scenario.orbit.orbital_radius_m(&self.earth);
        let gamma = total_central_angle(
            self.angular_rate_rad_per_s * t_s,
            self.cross_track_angle_rad,
        );
        slant_range_m(gamma, r_e, r_s)
    }
}

/// Elevation for a given central angle, deg. Defined as 90 deg at zero angle.
fn elevation_deg_at(gamma_rad: f64, radius_ratio: f64) -> f64 {
    if gamma_rad == 0.0 {
        return 90.0;
    }
    (gamma_rad.cos() - radius_ratio).atan2(gamma_rad.sin()).to_degrees()
}

/// Total central angle from the in-track and cross-track components of the
/// spherical right triangle: cos(gamma) = cos(in_track) * cos(cross_track).
fn total_central_angle(in_track_rad: f64, cross_track_rad: f64) -> f64 {
    let c = (in_track_rad.cos() * cross_track_rad.cos()).clamp(-1.0, 1.0);
    c.acos()
}

/// Slant range for a central angle, using the cancellation-free form so that
/// the range is exactly the altitude at zero angle.
fn slant_range_m(gamma_rad: f64, r_e: f64, r_s: f64) -> f64 {
    let half_sin = (gamma_rad / 2.0).sin();
    ((r_s - r_e).powi(2) + 4.0 * r_e * r_s * half_sin * half_sin).sqrt()
}

/// Closed-form slant range at a given elevation, m.
pub fn slant_range_from_elevation_m(
    elevation_deg: f64,
    altitude_m: f64,
    earth: &EarthModel,
) -> f64 {
    let r_e = earth.radius_m;
    let r_s = r_e + altitude_m;
    let a = elevation_deg.to_radians();
    r_e * (((r_s / r_e).powi(2) - a.cos().powi(2)).sqrt() - a.sin())
}

/// Cross-track central angle at which the peak elevation of the pass equals
/// `max_elevation_deg`, rad.
///
/// Solved by bisection of the elevation on the monotone branch between nadir
/// and the horizon, to better than 1e-9 deg.
pub fn ue_cross_track_angle(scenario: &PassScenario, earth: &EarthModel) -> Result<f64> {
    scenario.validate()?;
    earth.validate()?;
    let alpha_max = scenario.max_elevation_deg;
    if alpha_max >= 90.0 {
        return Ok(0.0);
    }
    let ratio = earth.radius_m / scenario.orbit.orbital_radius_m(earth);
    let gamma_horizon = ratio.acos();
    let mut lo = 0.0_f64;
    let mut hi = gamma_horizon;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if elevation_deg_at(mid, ratio) > alpha_max {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let err = (elevation_deg_at(gamma, ratio) - alpha_max).abs();
    if err > 1e-9 {
        return Err(Error::NoSolution(format!(
            "cross-track solve left {err} deg of elevation error for max elevation {alpha_max}"
        )));
    }
    Ok(gamma)
}

/// Samples the pass over the service window, symmetric about the closest
/// approach at `t = 0`.
pub fn pass_geometry(scenario: &PassScenario, earth: &EarthModel) -> Result<PassGeometry> {
    scenario.validate()?;
    earth.validate()?;
    if scenario.max_elevation_deg < scenario.min_elevation_deg {
        return Err(Error::EmptyPass {
            max_deg: scenario.max_elevation_deg,
            min_deg: scenario.min_elevation_deg,
        });
    }

    let r_e = earth.radius_m;
    let r_s = scenario.orbit.orbital_radius_m(earth);
    let ratio = r_e / r_s;
    let omega = scenario.orbit.angular_rate_rad_per_s(earth);
    let cross = ue_cross_track_angle(scenario, earth)?;

    // Latest time still inside the service window: elevation(t) decreases
    // monotonically with |t|, so bisect between the peak and the horizon.
    let gamma_horizon = ratio.acos();
    let t_horizon = ((gamma_horizon.cos() / cross.cos()).clamp(-1.0, 1.0)).acos() / omega;
    let elev_at = |t: f64| elevation_deg_at(total_central_angle(omega * t, cross), ratio);
    let mut lo = 0.0_f64;
    let mut hi = t_horizon;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if elev_at(mid) > scenario.min_elevation_deg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_edge = 0.5 * (lo + hi);

    let steps = (t_edge / scenario.sample_step_s * (1.0 + 1e-12)).floor() as i64;
    let mut samples = Vec::with_capacity((2 * steps + 1) as usize);
    for k in -steps..=steps {
        let t = k as f64 * scenario.sample_step_s;
        let gamma = total_central_angle(omega * t, cross);
        let (elevation, nadir) = if gamma == 0.0 {
            (90.0, 0.0)
        } else {
            let elevation = elevation_deg_at(gamma, ratio);
            (elevation, (ratio * elevation.to_radians().cos()).asin().to_degrees())
        };
        samples.push(GeometrySample {
            t_s: t,
            central_angle_rad: gamma,
            elevation_deg: elevation,
            nadir_angle_deg: nadir,
            slant_range_m: slant_range_m(gamma, r_e, r_s),
        });
    }

    Ok(PassGeometry {
        scenario: *scenario,
        earth: *earth,
        cross_track_angle_rad: cross,
        angular_rate_rad_per_s: omega,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn scenario(max_elev: f64, min_elev: f64, step: f64) -> PassScenario {
        PassScenario {
            orbit: OrbitConfig::default(),
            max_elevation_deg: max_elev,
            min_elevation_deg: min_elev,
            sample_step_s: step,
        }
    }

    #[test]
    fn satellite_speed_at_600_km() {
        let earth = EarthModel::default();
        let orbit = OrbitConfig::default();
        let v = orbit.satellite_speed_mps(&earth);
        assert!((v / 1000.0 - 7.57).abs() < 0.01, "v_sat = {v} m/s");
    }

    #[test]
    fn retrograde_adds_surface_speed_exactly() {
        let earth = EarthModel::default();
        let orbit = OrbitConfig::default();
        let prograde = OrbitConfig { retrograde: false, ..orbit };
        assert_eq!(
            orbit.relative_speed_mps(&earth),
            prograde.relative_speed_mps(&earth) + earth.surface_speed_mps
        );
    }

    #[test]
    fn orbital_period_matches_direct_evaluation() {
        let earth = EarthModel::default();
        let orbit = OrbitConfig::default();
        // Independent evaluation of the two closed forms.
        let r_s = 6_357_000.0 + 600_000.0;
        let v = (GRAVITATIONAL_CONSTANT * 5.972e24 / r_s).sqrt();
        let expected = 2.0 * std::f64::consts::PI * r_s / v;
        assert_relative_eq!(orbit.orbital_period_s(&earth), expected, max_relative = 1e-12);
        assert!((orbit.orbital_period_s(&earth) - 5_775.0).abs() < 1.0);
    }

    #[test]
    fn cross_track_angle_is_zero_for_overhead_pass() {
        let earth = EarthModel::default();
        assert_eq!(ue_cross_track_angle(&scenario(90.0, 30.0, 1.0), &earth).unwrap(), 0.0);
    }

    #[test]
    fn cross_track_angle_round_trips_through_elevation() {
        let earth = EarthModel::default();
        let sc = scenario(62.4, 30.0, 1.0);
        let gamma = ue_cross_track_angle(&sc, &earth).unwrap();
        let ratio = earth.radius_m / sc.orbit.orbital_radius_m(&earth);
        let alpha = elevation_deg_at(gamma, ratio);
        assert!((alpha - 62.4).abs() < 1e-6, "round-trip elevation {alpha}");
        // Offset on the surface for the ledgered 62.4 deg case.
        assert!((earth.radius_m * gamma / 1000.0 - 283.4).abs() < 0.5);
    }

    #[test]
    fn cross_track_angle_grows_as_peak_elevation_drops() {
        let earth = EarthModel::default();
        let high = ue_cross_track_angle(&scenario(62.4, 30.0, 1.0), &earth).unwrap();
        let low = ue_cross_track_angle(&scenario(30.0, 30.0, 1.0), &earth).unwrap();
        assert!(low > high);
    }

    #[test]
    fn zenith_sample_hits_altitude_exactly() {
        let earth = EarthModel::default();
        let pass = pass_geometry(&scenario(90.0, 30.0, 1.0), &earth).unwrap();
        let mid = &pass.samples[pass.samples.len() / 2];
        assert_eq!(mid.t_s, 0.0);
        assert_eq!(mid.slant_range_m, 600_000.0);
        assert_eq!(mid.elevation_deg, 90.0);
        assert_eq!(mid.nadir_angle_deg, 0.0);
    }

    #[test]
    fn closed_form_slant_range_at_reference_elevations() {
        let earth = EarthModel::default();
        let d30 = slant_range_from_elevation_m(30.0, 600_000.0, &earth);
        let d10 = slant_range_from_elevation_m(10.0, 600_000.0, &earth);
        assert!((d30 / 1000.0 - 1_074.88).abs() < 0.5, "d(30 deg) = {d30} m");
        assert!((d10 / 1000.0 - 1_930.41).abs() < 0.5, "d(10 deg) = {d10} m");
        // Propagation below 4 ms at 30 deg is what makes the service
        // elevation workable for ground IoT terminals.
        assert!(d30 / SPEED_OF_LIGHT_MPS < 4e-3);
        let tau10 = d10 / SPEED_OF_LIGHT_MPS;
        assert!(tau10 > 6.3e-3 && tau10 < 6.6e-3, "tau(10 deg) = {tau10} s");
    }

    #[test]
    fn angle_identities_hold_for_every_sample() {
        let earth = EarthModel::default();
        for max_elev in [30.0, 42.7, 62.4, 90.0] {
            let pass = pass_geometry(&scenario(max_elev, 10.0, 2.0), &earth).unwrap();
            let ratio = earth.radius_m / pass.scenario.orbit.orbital_radius_m(&earth);
            for s in &pass.samples {
                let sum = s.elevation_deg + s.nadir_angle_deg + s.central_angle_rad.to_degrees();
                assert!((sum - 90.0).abs() < 1e-6, "angle sum {sum} at t={}", s.t_s);
                let lhs = s.nadir_angle_deg.to_radians().sin();
                let rhs = ratio * s.elevation_deg.to_radians().cos();
                assert!((lhs - rhs).abs() < 1e-9, "law of sines off by {}", lhs - rhs);
            }
        }
    }

    #[test]
    fn pass_is_symmetric_with_minimum_range_at_zero() {
        let earth = EarthModel::default();
        let pass = pass_geometry(&scenario(62.4, 30.0, 1.0), &earth).unwrap();
        let n = pass.samples.len();
        let mid = n / 2;
        for i in 0..n {
            let a = &pass.samples[i];
            let b = &pass.samples[n - 1 - i];
            assert_relative_eq!(a.slant_range_m, b.slant_range_m, max_relative = 1e-12);
        }
        for (i, s) in pass.samples.iter().enumerate() {
            if i != mid {
                assert!(s.slant_range_m > pass.samples[mid].slant_range_m);
                assert!(s.elevation_deg < pass.samples[mid].elevation_deg);
            }
        }
        assert!((pass.samples[mid].elevation_deg - 62.4).abs() < 1e-6);
    }

    #[test]
    fn elevation_is_unimodal_over_the_pass() {
        let earth = EarthModel::default();
        let pass = pass_geometry(&scenario(42.7, 10.0, 1.0), &earth).unwrap();
        let mid = pass.samples.len() / 2;
        for w in pass.samples[..=mid].windows(2) {
            assert!(w[1].elevation_deg >= w[0].elevation_deg);
        }
        for w in pass.samples[mid..].windows(2) {
            assert!(w[1].elevation_deg <= w[0].elevation_deg);
        }
    }

    #[test]
    fn higher_peak_elevation_shortens_slant_range_at_fixed_time() {
        let earth = EarthModel::default();
        let near = pass_geometry(&scenario(90.0, 10.0, 1.0), &earth).unwrap();
        let far = pass_geometry(&scenario(42.7, 10.0, 1.0), &earth).unwrap();
        // Compare at a fixed time offset present in both passes.
        let t = 60.0;
        assert!(near.slant_range_at(t) < far.slant_range_at(t));
    }

    #[test]
    fn pass_window_respects_min_elevation() {
        let earth = EarthModel::default();
        let pass = pass_geometry(&scenario(90.0, 30.0, 1.0), &earth).unwrap();
        for s in &pass.samples {
            assert!(s.elevation_deg >= 30.0 - 1e-9);
        }
        // One more step out would leave the window.
        let edge = pass.samples.last().unwrap().t_s + pass.sample_step_s();
        let gamma = total_central_angle(pass.angular_rate_rad_per_s * edge, 0.0);
        let ratio = earth.radius_m / pass.scenario.orbit.orbital_radius_m(&earth);
        assert!(elevation_deg_at(gamma, ratio) < 30.0);
    }

    #[test]
    fn empty_pass_is_an_error() {
        let earth = EarthModel::default();
        let err = pass_geometry(&scenario(20.0, 30.0, 1.0), &earth).unwrap_err();
        assert!(matches!(err, Error::EmptyPass { .. }));
    }

    #[test]
    fn degenerate_pass_at_equal_elevations_is_single_sample() {
        let earth = EarthModel::default();
        let pass = pass_geometry(&scenario(30.0, 30.0, 1.0), &earth).unwrap();
        assert_eq!(pass.samples.len(), 1);
        assert_eq!(pass.samples[0].t_s, 0.0);
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        let earth = EarthModel::default();
        assert!(scenario(90.0, 0.0, 1.0).validate().is_err());
        assert!(scenario(90.0, 30.0, 0.0).validate().is_err());
        assert!(scenario(91.0, 30.0, 1.0).validate().is_err());
        let bad = EarthModel { radius_m: -1.0, ..earth };
        assert!(bad.validate().is_err());
    }
}
