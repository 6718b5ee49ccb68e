//! Tapped-delay-line channel realizations with a Rician line-of-sight first
//! tap.
//!
//! Two model parameter sets are built in: a non-terrestrial urban profile
//! (two taps) and a non-terrestrial hilly profile (three taps). The first
//! tap splits its mean power K/(K+1) to the deterministic line-of-sight part
//! and 1/(K+1) to complex Gaussian scatter; later taps are pure scatter with
//! their full mean power. Coefficients are block-static per realization.
//!
//! Draws are reproducible: realization `i` of an ensemble uses RNG stream
//! `i` of the seeded generator, so parallel generation cannot reorder the
//! outcome.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Built-in model identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FadingModelId {
    /// Non-terrestrial urban, two taps.
    Ncu,
    /// Non-terrestrial hilly, three taps.
    Ndh,
}

impl FadingModelId {
    pub fn label(self) -> &'static str {
        match self {
            FadingModelId::Ncu => "ncu",
            FadingModelId::Ndh => "ndh",
        }
    }
}

/// Tapped-delay-line model: per-tap delays and mean powers plus the Rician
/// K-factor of the line-of-sight tap.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingModelSpec {
    pub id: FadingModelId,
    /// Tap delays, ns; strictly increasing with the first at zero.
    pub tap_delays_ns: Vec<f64>,
    /// Mean tap powers, dB.
    pub tap_gains_db: Vec<f64>,
    /// Line-of-sight to scatter power ratio of tap 0, linear.
    /// `f64::INFINITY` degenerates to a pure line-of-sight tap.
    pub k_factor: f64,
    /// Receiver noise is white Gaussian in the campaigns behind the tables.
    pub awgn: bool,
}

impl FadingModelSpec {
    /// Urban profile.
    pub fn ncu() -> Self {
        FadingModelSpec {
            id: FadingModelId::Ncu,
            tap_delays_ns: vec![0.0, 1481.0],
            tap_gains_db: vec![-10.6, -23.4],
            k_factor: 7.0,
            awgn: true,
        }
    }

    /// Hilly profile.
    pub fn ndh() -> Self {
        FadingModelSpec {
            id: FadingModelId::Ndh,
            tap_delays_ns: vec![0.0, 168.0, 2199.0],
            tap_gains_db: vec![-11.99, -9.89, -16.77],
            k_factor: 7.0,
            awgn: true,
        }
    }

    pub fn of(id: FadingModelId) -> Self {
        match id {
            FadingModelId::Ncu => FadingModelSpec::ncu(),
            FadingModelId::Ndh => FadingModelSpec::ndh(),
        }
    }

    /// Reinterprets the K-factor as a dB figure.
    pub fn with_k_factor_db(mut self, k_db: f64) -> Self {
        self.k_factor = 10f64.powf(k_db / 10.0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.tap_delays_ns.len() != self.tap_gains_db.len() || self.tap_delays_ns.is_empty() {
            return Err(Error::InvalidScenario("tap delay/gain lists must match".into()));
        }
        if self.tap_delays_ns[0] != 0.0 {
            return Err(Error::InvalidScenario("first tap delay must be zero".into()));
        }
        for w in self.tap_delays_ns.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidScenario("tap delays must strictly increase".into()));
            }
        }
        if self.k_factor.is_nan() || self.k_factor < 0.0 {
            return Err(Error::InvalidScenario("K-factor must be non-negative".into()));
        }
        Ok(())
    }

    /// Linear mean power of tap `i`.
    pub fn tap_gain_linear(&self, i: usize) -> f64 {
        10f64.powf(self.tap_gains_db[i] / 10.0)
    }

    /// Linear sum of the tap powers (aggregate channel power).
    pub fn total_power_linear(&self) -> f64 {
        (0..self.tap_gains_db.len()).map(|i| self.tap_gain_linear(i)).sum()
    }
}

/// One sampled impulse response, aligned with the spec's tap delays.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub taps: Vec<Complex<f64>>,
    pub seed: u64,
}

fn draw_with_rng(spec: &FadingModelSpec, rng: &mut ChaCha8Rng, seed: u64) -> ChannelRealization {
    let taps = (0..spec.tap_delays_ns.len())
        .map(|i| {
            let gain = spec.tap_gain_linear(i);
            if i == 0 {
                if spec.k_factor.is_infinite() {
                    return Complex::new(gain.sqrt(), 0.0);
                }
                let k = spec.k_factor;
                let los = (gain * k / (k + 1.0)).sqrt();
                let sigma = (gain / (k + 1.0) / 2.0).sqrt();
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(los + sigma * re, sigma * im)
            } else {
                let sigma = (gain / 2.0).sqrt();
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(sigma * re, sigma * im)
            }
        })
        .collect();
    ChannelRealization { taps, seed }
}

/// Draws one realization, deterministic in the seed.
pub fn draw_realization(spec: &FadingModelSpec, seed: u64) -> ChannelRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_with_rng(spec, &mut rng, seed)
}

/// Draws an ensemble. Realization `i` comes from RNG stream `i`, so the
/// result is independent of any parallel chunking a caller might apply.
pub fn draw_ensemble(spec: &FadingModelSpec, seed: u64, count: usize) -> Vec<ChannelRealization> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            draw_with_rng(spec, &mut rng, seed)
        })
        .collect()
}

/// Mean power per tap over an ensemble, linear.
pub fn mean_tap_powers(realizations: &[ChannelRealization]) -> Vec<f64> {
    if realizations.is_empty() {
        return Vec::new();
    }
    let taps = realizations[0].taps.len();
    let mut acc = vec![0.0; taps];
    for r in realizations {
        for (i, h) in r.taps.iter().enumerate() {
            acc[i] += h.norm_sqr();
        }
    }
    acc.iter().map(|p| p / realizations.len() as f64).collect()
}

/// Estimates above this value are reported as diverged (no measurable
/// scatter power in the ensemble).
pub const K_FACTOR_CAP: f64 = 1e6;

/// Moment-based Rician K estimate from tap-0 samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KFactorEstimate {
    pub k_linear: f64,
    pub std_error: f64,
    /// Scatter power was indistinguishable from zero; `k_linear` is capped.
    pub diverged: bool,
}

/// Decomposes the ensemble into coherent (squared mean) and scatter
/// (variance) power; their ratio estimates K. Requires at least 1e4 draws.
pub fn estimated_k_factor(tap0: &[Complex<f64>]) -> Result<KFactorEstimate> {
    const MIN_DRAWS: usize = 10_000;
    if tap0.len() < MIN_DRAWS {
        return Err(Error::InsufficientEnsemble { min: MIN_DRAWS, got: tap0.len() });
    }
    let n = tap0.len() as f64;
    let mean = tap0.iter().sum::<Complex<f64>>() / n;
    let variance = tap0.iter().map(|h| (h - mean).norm_sqr()).sum::<f64>() / (n - 1.0);
    let coherent = mean.norm_sqr();
    if variance <= coherent * 1e-12 || variance == 0.0 {
        return Ok(KFactorEstimate { k_linear: K_FACTOR_CAP, std_error: f64::INFINITY, diverged: true });
    }
    let k = coherent / variance;
    // Delta-method error of the ratio of the two moment estimates.
    let std_error = if k > 0.0 { k * ((2.0 / k + 1.0) / n).sqrt() } else { (1.0 / n).sqrt() };
    Ok(KFactorEstimate { k_linear: k.min(K_FACTOR_CAP), std_error, diverged: k >= K_FACTOR_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DRAWS: usize = 100_000;

    fn tap0(realizations: &[ChannelRealization]) -> Vec<Complex<f64>> {
        realizations.iter().map(|r| r.taps[0]).collect()
    }

    #[test]
    fn builtin_specs_match_the_model_table() {
        let ncu = FadingModelSpec::ncu();
        assert_eq!(ncu.tap_delays_ns, vec![0.0, 1481.0]);
        assert_eq!(ncu.tap_gains_db, vec![-10.6, -23.4]);
        assert_eq!(ncu.k_factor, 7.0);
        assert!(ncu.awgn);
        let ndh = FadingModelSpec::ndh();
        assert_eq!(ndh.tap_delays_ns, vec![0.0, 168.0, 2199.0]);
        assert_eq!(ndh.tap_gains_db, vec![-11.99, -9.89, -16.77]);
        assert_eq!(ndh.k_factor, 7.0);
        ncu.validate().unwrap();
        ndh.validate().unwrap();
    }

    #[test]
    fn same_seed_reproduces_the_realization() {
        let spec = FadingModelSpec::ncu();
        assert_eq!(draw_realization(&spec, 42), draw_realization(&spec, 42));
        assert_ne!(draw_realization(&spec, 42).taps, draw_realization(&spec, 43).taps);
        assert_eq!(draw_ensemble(&spec, 7, 100), draw_ensemble(&spec, 7, 100));
    }

    #[test]
    fn infinite_k_gives_a_pure_line_of_sight_tap() {
        let spec = FadingModelSpec { k_factor: f64::INFINITY, ..FadingModelSpec::ncu() };
        for seed in 0..16 {
            let r = draw_realization(&spec, seed);
            assert_eq!(r.taps[0], Complex::new(spec.tap_gain_linear(0).sqrt(), 0.0));
        }
    }

    #[test]
    fn ensemble_tap_powers_match_the_model_within_half_db() {
        for spec in [FadingModelSpec::ncu(), FadingModelSpec::ndh()] {
            let ensemble = draw_ensemble(&spec, 1, DRAWS);
            let powers = mean_tap_powers(&ensemble);
            for (i, p) in powers.iter().enumerate() {
                let got_db = 10.0 * p.log10();
                let want_db = spec.tap_gains_db[i];
                assert!(
                    (got_db - want_db).abs() < 0.5,
                    "{} tap {i}: {got_db} dB vs {want_db} dB",
                    spec.id.label()
                );
            }
        }
    }

    #[test]
    fn total_power_matches_the_gain_sum() {
        for spec in [FadingModelSpec::ncu(), FadingModelSpec::ndh()] {
            let ensemble = draw_ensemble(&spec, 3, DRAWS);
            let total: f64 = mean_tap_powers(&ensemble).iter().sum();
            let expected = spec.total_power_linear();
            let diff_db = (10.0 * total.log10() - 10.0 * expected.log10()).abs();
            assert!(diff_db < 0.3, "{}: aggregate off by {diff_db} dB", spec.id.label());
        }
    }

    #[test]
    fn taps_are_mutually_uncorrelated() {
        for spec in [FadingModelSpec::ncu(), FadingModelSpec::ndh()] {
            let ensemble = draw_ensemble(&spec, 11, DRAWS);
            let taps = spec.tap_delays_ns.len();
            for a in 0..taps {
                for b in (a + 1)..taps {
                    let mut cross = Complex::new(0.0, 0.0);
                    let mut pow_a = 0.0;
                    let mut pow_b = 0.0;
                    for r in &ensemble {
                        // Correlate the scatter parts; tap 0 carries a mean.
                        cross += r.taps[a] * r.taps[b].conj();
                        pow_a += r.taps[a].norm_sqr();
                        pow_b += r.taps[b].norm_sqr();
                    }
                    let mean_a: Complex<f64> =
                        ensemble.iter().map(|r| r.taps[a]).sum::<Complex<f64>>() / DRAWS as f64;
                    let mean_b: Complex<f64> =
                        ensemble.iter().map(|r| r.taps[b]).sum::<Complex<f64>>() / DRAWS as f64;
                    let n = DRAWS as f64;
                    let cov = cross / n - mean_a * mean_b.conj();
                    let corr = cov.norm() / ((pow_a / n).sqrt() * (pow_b / n).sqrt());
                    assert!(corr < 0.02, "{} taps {a},{b} corr {corr}", spec.id.label());
                }
            }
        }
    }

    #[test]
    fn k_estimate_recovers_the_model_value() {
        let spec = FadingModelSpec::ncu();
        let ensemble = draw_ensemble(&spec, 5, DRAWS);
        let est = estimated_k_factor(&tap0(&ensemble)).unwrap();
        assert!(!est.diverged);
        assert!(est.k_linear > 6.3 && est.k_linear < 7.7, "K estimate {}", est.k_linear);
        assert!(est.std_error < 0.1);
    }

    #[test]
    fn k_estimate_near_zero_for_rayleigh_input() {
        // K = 0 turns tap 0 into pure scatter.
        let spec = FadingModelSpec { k_factor: 0.0, ..FadingModelSpec::ncu() };
        let ensemble = draw_ensemble(&spec, 9, DRAWS);
        let est = estimated_k_factor(&tap0(&ensemble)).unwrap();
        assert!(est.k_linear < 0.05, "K estimate {}", est.k_linear);
    }

    #[test]
    fn k_estimate_diverges_for_pure_line_of_sight() {
        let spec = FadingModelSpec { k_factor: f64::INFINITY, ..FadingModelSpec::ncu() };
        let ensemble = draw_ensemble(&spec, 13, DRAWS);
        let est = estimated_k_factor(&tap0(&ensemble)).unwrap();
        assert!(est.diverged);
        assert!(est.k_linear >= K_FACTOR_CAP);
    }

    #[test]
    fn small_ensembles_are_rejected() {
        let spec = FadingModelSpec::ncu();
        let ensemble = draw_ensemble(&spec, 1, 100);
        assert!(matches!(
            estimated_k_factor(&tap0(&ensemble)),
            Err(Error::InsufficientEnsemble { .. })
        ));
    }

    #[test]
    fn db_interpretation_switch() {
        let spec = FadingModelSpec::ncu().with_k_factor_db(7.0);
        assert!((spec.k_factor - 10f64.powf(0.7)).abs() < 1e-12);
    }
}
