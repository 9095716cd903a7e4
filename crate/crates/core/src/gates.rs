//! Gate experiments and their first-order error coefficients.
//!
//! A gate is a resonant pulse of area `θ` applied to a chosen initial
//! state. Its failure probability is `1 − ⟨ψ_ideal|ρ(T)|ψ_ideal⟩`, where
//! `ψ_ideal` is the same state rotated by the decay-free drive. For small
//! `κ/gα` this is linear, `p = c·(κ/gα)`, and since `κ/gα = θ/(2n̄)` the
//! photon-number coefficient is `c′ = c·θ/2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lindblad::{evolve, ideal_rotation, DecayChannel, DecaySpec, IntegratorConfig, PulseSpec};
use crate::qcore::{fidelity_pure, DensityMatrix, PureState};

/// Largest `κ/gα` accepted by [`extract_coefficient`].
pub const MAX_PERTURBATIVE_RATIO: f64 = 1e-2;
/// Minimum number of sweep points for a fit.
pub const MIN_SWEEP_POINTS: usize = 4;
/// Fits with `residual > FIT_RESIDUAL_BOUND·c` are flagged as degraded.
pub const FIT_RESIDUAL_BOUND: f64 = 1e-3;
/// Tolerance used by sweeps; tighter than the evolve default because the
/// smallest failure probabilities of interest sit near 1e-6.
pub const SWEEP_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GateExperiment {
    pulse_area: f64,
    initial_state: PureState,
    decay_channel: DecayChannel,
}

impl GateExperiment {
    pub fn new(pulse_area: f64, initial_state: PureState, decay_channel: DecayChannel) -> Result<Self> {
        if !(pulse_area > 0.0) || !pulse_area.is_finite() {
            return Err(Error::param("pulse_area", "must be positive and finite"));
        }
        if initial_state.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: initial_state.dim(),
            });
        }
        Ok(Self {
            pulse_area,
            initial_state,
            decay_channel,
        })
    }

    /// π pulse (bit flip) from `|b⟩`.
    pub fn pi_from_ground() -> Self {
        Self::laser(std::f64::consts::PI, PureState::ground())
    }

    pub fn half_pi_from_ground() -> Self {
        Self::laser(std::f64::consts::FRAC_PI_2, PureState::ground())
    }

    pub fn half_pi_from_excited() -> Self {
        Self::laser(std::f64::consts::FRAC_PI_2, PureState::excited())
    }

    fn laser(pulse_area: f64, initial_state: PureState) -> Self {
        Self {
            pulse_area,
            initial_state,
            decay_channel: DecayChannel::LaserModes,
        }
    }

    pub fn pulse_area(&self) -> f64 {
        self.pulse_area
    }

    pub fn initial_state(&self) -> &PureState {
        &self.initial_state
    }

    pub fn decay_channel(&self) -> DecayChannel {
        self.decay_channel
    }

    /// Decay-free output of the gate.
    pub fn ideal_output(&self) -> PureState {
        ideal_rotation(self.pulse_area, &self.initial_state).expect("atomic initial state")
    }

    /// Photon-number coefficient `c′` belonging to a ratio coefficient `c`.
    pub fn photon_coefficient(&self, c: f64) -> f64 {
        c * self.pulse_area / 2.0
    }
}

/// `p` for one value of `κ/gα`.
pub fn failure_probability(exp: &GateExperiment, ratio: f64, config: &IntegratorConfig) -> Result<f64> {
    if !(ratio >= 0.0) || !ratio.is_finite() {
        return Err(Error::param("ratio", "must be finite and non-negative"));
    }
    // unit drive: time is measured in 1/gα
    let pulse = PulseSpec::new(1.0, exp.pulse_area)?;
    let decay = DecaySpec::new(ratio, exp.decay_channel)?;
    let rho0 = DensityMatrix::from_pure(&exp.initial_state);
    let out = evolve(&rho0, &pulse, &decay, config)?;
    let fidelity = fidelity_pure(&out.final_state, &exp.ideal_output())?;
    Ok(1.0 - fidelity)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorCoefficient {
    /// `c` in `p = c·(κ/gα)`.
    pub coefficient_vs_ratio: f64,
    /// `c′` in `p = c′/n̄`.
    pub coefficient_vs_photons: f64,
    /// RMS deviation of the per-point slopes `p/ratio` from `c`.
    pub fit_residual: f64,
    /// Set when `fit_residual` exceeds [`FIT_RESIDUAL_BOUND`]`·c`.
    pub degraded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub ratios: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub coefficient: ErrorCoefficient,
}

/// `n` log-spaced points covering `[lo, hi]`.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::param("ratio range", "need 0 < lo ≤ hi"));
    }
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![lo]),
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            Ok((0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect())
        }
    }
}

/// Default sweep grid: 8 points in `[1e-5, 1e-3]`.
pub fn default_ratios() -> Vec<f64> {
    log_spaced(1e-5, 1e-3, 8).expect("static range")
}

pub fn sweep_config() -> IntegratorConfig {
    IntegratorConfig::adaptive(SWEEP_RTOL).expect("static tolerance")
}

/// Least-squares slope through the origin.
pub fn fit_through_origin(ratios: &[f64], probabilities: &[f64]) -> (f64, f64) {
    let sxy: f64 = ratios.iter().zip(probabilities).map(|(r, p)| r * p).sum();
    let sxx: f64 = ratios.iter().map(|r| r * r).sum();
    let c = sxy / sxx;
    let n = ratios.len() as f64;
    let residual = (ratios
        .iter()
        .zip(probabilities)
        .map(|(r, p)| (p / r - c).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (c, residual)
}

/// Sweeps `κ/gα` over `ratios` and fits `p = c·ratio`.
pub fn extract_coefficient(
    exp: &GateExperiment,
    ratios: &[f64],
    config: &IntegratorConfig,
) -> Result<Sweep> {
    if ratios.len() < MIN_SWEEP_POINTS {
        return Err(Error::param(
            "ratios",
            format!("need at least {MIN_SWEEP_POINTS} points, got {}", ratios.len()),
        ));
    }
    if let Some(bad) = ratios
        .iter()
        .find(|&&r| !(r > 0.0) || r > MAX_PERTURBATIVE_RATIO)
    {
        return Err(Error::param(
            "ratios",
            format!("{bad:e} is outside the perturbative range (0, {MAX_PERTURBATIVE_RATIO:e}]"),
        ));
    }
    let probabilities = ratios
        .par_iter()
        .map(|&r| failure_probability(exp, r, config))
        .collect::<Result<Vec<_>>>()?;
    let (c, residual) = fit_through_origin(ratios, &probabilities);
    Ok(Sweep {
        ratios: ratios.to_vec(),
        probabilities,
        coefficient: ErrorCoefficient {
            coefficient_vs_ratio: c,
            coefficient_vs_photons: exp.photon_coefficient(c),
            fit_residual: residual,
            degraded: residual > FIT_RESIDUAL_BOUND * c.abs(),
        },
    })
}

/// `κ/gα` at which a `θ` pulse carries `n̄` photons: `θ/(2n̄)`.
pub fn ratio_for_photons(pulse_area: f64, n_bar: f64) -> Result<f64> {
    if !(n_bar > 0.0) {
        return Err(Error::param("n_bar", "must be positive"));
    }
    Ok(pulse_area / (2.0 * n_bar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ideal_pi_pulse_targets_excited() {
        let t = GateExperiment::pi_from_ground().ideal_output();
        assert!((t.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_decay_has_zero_failure() {
        let cfg = IntegratorConfig::default();
        for exp in [
            GateExperiment::pi_from_ground(),
            GateExperiment::half_pi_from_ground(),
            GateExperiment::half_pi_from_excited(),
            GateExperiment::new(PI / 2.0, PureState::plus(), DecayChannel::AllVacuum).unwrap(),
        ] {
            assert!(failure_probability(&exp, 0.0, &cfg).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn pi_pulse_failure_matches_closed_form() {
        let p = failure_probability(&GateExperiment::pi_from_ground(), 1e-3, &sweep_config()).unwrap();
        let expected = 3.0 * PI / 16.0 * 1e-3;
        assert!((p - expected).abs() / expected < 0.01, "p = {p}");
    }

    #[test]
    fn rejects_non_perturbative_or_short_grids() {
        let exp = GateExperiment::pi_from_ground();
        let cfg = sweep_config();
        assert!(extract_coefficient(&exp, &[1e-4, 1e-3, 2e-3], &cfg).is_err());
        assert!(extract_coefficient(&exp, &[1e-4, 1e-3, 2e-3, 0.05], &cfg).is_err());
        assert!(extract_coefficient(&exp, &[0.0, 1e-4, 1e-3, 2e-3], &cfg).is_err());
        assert!(failure_probability(&exp, -1.0, &cfg).is_err());
    }

    #[test]
    fn log_spacing() {
        let r = log_spaced(1e-5, 1e-3, 3).unwrap();
        assert!((r[1] - 1e-4).abs() < 1e-18);
        assert_eq!(default_ratios().len(), 8);
        assert!(log_spaced(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn fit_recovers_exact_line() {
        let r = [1.0, 2.0, 3.0, 4.0];
        let p: Vec<f64> = r.iter().map(|x| 0.5 * x).collect();
        let (c, res) = fit_through_origin(&r, &p);
        assert!((c - 0.5).abs() < 1e-15 && res < 1e-15);
    }

    #[test]
    fn photon_ratio_conversion() {
        assert!((ratio_for_photons(PI, 1e6).unwrap() - PI / 2e6).abs() < 1e-20);
        let exp = GateExperiment::pi_from_ground();
        assert!((exp.photon_coefficient(3.0 * PI / 16.0) - 3.0 * PI * PI / 32.0).abs() < 1e-15);
    }
}
