//! Master equation of a resonantly driven two-level atom with a single
//! decay channel, and its time integration through a pulse.
//!
//! ```text
//! dρ/dt = −i[H, ρ] − (κ/2){σ₊σ₋, ρ} + κ σ₋ ρ σ₊,    H = gα(σ₊ + σ₋)
//! ```
//!
//! The integrator runs in scaled time `τ = gα·t`, so the dynamics depend on
//! the decay only through `κ/gα`. A pulse of area `θ` lasts `T = θ/(2gα)`.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{self, AdaptiveOptions};
use crate::qcore::{operator2, DensityMatrix, InvariantTolerance, OperatorKind, PureState};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Resonant drive: coupling `gα` (Rabi frequency `2gα`) held for area `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    drive_coupling: f64,
    pulse_area: f64,
}

impl PulseSpec {
    pub fn new(drive_coupling: f64, pulse_area: f64) -> Result<Self> {
        if !(drive_coupling >= 0.0) || !drive_coupling.is_finite() {
            return Err(Error::param("drive_coupling", "must be finite and non-negative"));
        }
        if !(pulse_area >= 0.0) || !pulse_area.is_finite() {
            return Err(Error::param("pulse_area", "must be finite and non-negative"));
        }
        if pulse_area > 0.0 && drive_coupling == 0.0 {
            return Err(Error::param(
                "drive_coupling",
                "must be positive for a non-zero pulse area",
            ));
        }
        Ok(Self {
            drive_coupling,
            pulse_area,
        })
    }

    /// Bit flip, `T = π/(2gα)`.
    pub fn pi(drive_coupling: f64) -> Result<Self> {
        Self::new(drive_coupling, std::f64::consts::PI)
    }

    pub fn half_pi(drive_coupling: f64) -> Result<Self> {
        Self::new(drive_coupling, std::f64::consts::FRAC_PI_2)
    }

    pub fn drive_coupling(&self) -> f64 {
        self.drive_coupling
    }

    pub fn pulse_area(&self) -> f64 {
        self.pulse_area
    }

    /// `Ω_R = 2gα`.
    pub fn rabi_frequency(&self) -> f64 {
        2.0 * self.drive_coupling
    }

    /// `T = θ/Ω_R`; zero for an empty pulse.
    pub fn duration(&self) -> f64 {
        if self.pulse_area == 0.0 {
            0.0
        } else {
            self.pulse_area / self.rabi_frequency()
        }
    }
}

/// Which vacuum modes the decay rate accounts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayChannel {
    /// Only the modes travelling with the laser beam (`κ`).
    LaserModes,
    /// Every vacuum mode (`Γ`).
    AllVacuum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySpec {
    rate: f64,
    channel: DecayChannel,
}

impl DecaySpec {
    pub fn new(rate: f64, channel: DecayChannel) -> Result<Self> {
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::param("decay_rate", "must be finite and non-negative"));
        }
        Ok(Self { rate, channel })
    }

    pub fn laser(kappa: f64) -> Result<Self> {
        Self::new(kappa, DecayChannel::LaserModes)
    }

    pub fn vacuum(gamma: f64) -> Result<Self> {
        Self::new(gamma, DecayChannel::AllVacuum)
    }

    pub fn none() -> Self {
        Self {
            rate: 0.0,
            channel: DecayChannel::LaserModes,
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn channel(&self) -> DecayChannel {
        self.channel
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Rk4Fixed { steps: usize },
    Rk45Adaptive { rtol: f64 },
}

pub const MIN_RK4_STEPS: usize = 100;
pub const DEFAULT_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    method: Method,
    /// Number of equal intervals sampled along the pulse, if any.
    samples: Option<usize>,
}

impl IntegratorConfig {
    pub fn new(method: Method, samples: Option<usize>) -> Result<Self> {
        match method {
            Method::Rk4Fixed { steps } if steps < MIN_RK4_STEPS => {
                return Err(Error::param(
                    "steps",
                    format!("fixed-step RK4 needs at least {MIN_RK4_STEPS} steps per pulse"),
                ));
            }
            Method::Rk45Adaptive { rtol } if !(1e-12..=1e-6).contains(&rtol) => {
                return Err(Error::param("rtol", "must lie in [1e-12, 1e-6]"));
            }
            _ => {}
        }
        if samples == Some(0) {
            return Err(Error::param("samples", "must be at least 1"));
        }
        Ok(Self { method, samples })
    }

    pub fn rk4(steps: usize) -> Result<Self> {
        Self::new(Method::Rk4Fixed { steps }, None)
    }

    pub fn adaptive(rtol: f64) -> Result<Self> {
        Self::new(Method::Rk45Adaptive { rtol }, None)
    }

    /// Records `samples + 1` equally spaced points including both ends.
    pub fn with_trajectory(self, samples: usize) -> Result<Self> {
        Self::new(self.method, Some(samples))
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn samples(&self) -> Option<usize> {
        self.samples
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Rk45Adaptive { rtol: DEFAULT_RTOL },
            samples: None,
        }
    }
}

/// One recorded point, `t` in the caller's (unscaled) time units.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub time: f64,
    pub rho: DensityMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub final_state: DensityMatrix,
    pub trajectory: Option<Vec<Sample>>,
}

/// `dρ/dτ` in scaled time for decay ratio `κ/gα`.
pub(crate) fn scaled_rhs(rho: &Matrix2<Complex64>, decay_ratio: f64) -> Matrix2<Complex64> {
    let sx = operator2(OperatorKind::SigmaX);
    let sp = operator2(OperatorKind::SigmaPlus);
    let sm = operator2(OperatorKind::SigmaMinus);
    let pe = operator2(OperatorKind::ProjectorExcited);
    let coherent = (sx * rho - rho * sx) * (-I);
    if decay_ratio == 0.0 {
        return coherent;
    }
    let anti = pe * rho + rho * pe;
    let jump = sm * rho * sp;
    coherent + (jump - anti * re(0.5)) * re(decay_ratio)
}

/// Right-hand side of the master equation in the caller's time units.
pub fn lindblad_rhs(
    rho: &DensityMatrix,
    pulse: &PulseSpec,
    decay: &DecaySpec,
) -> Result<Matrix2<Complex64>> {
    let r = rho.to_matrix2()?;
    let sx = operator2(OperatorKind::SigmaX);
    let sp = operator2(OperatorKind::SigmaPlus);
    let sm = operator2(OperatorKind::SigmaMinus);
    let pe = operator2(OperatorKind::ProjectorExcited);
    let h = sx * re(pulse.drive_coupling);
    let kappa = decay.rate;
    Ok((h * r - r * h) * (-I) - (pe * r + r * pe) * re(0.5 * kappa) + sm * r * sp * re(kappa))
}

/// Decay-free action of a pulse of area `θ`, `exp(−iθσx/2)|ψ⟩`.
pub fn ideal_rotation(pulse_area: f64, state: &PureState) -> Result<PureState> {
    if state.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: state.dim(),
        });
    }
    let half = 0.5 * pulse_area;
    let c = re(half.cos());
    let s = Complex64::new(0.0, -half.sin());
    let u = Matrix2::new(c, s, s, c);
    let psi = state.amplitudes();
    let out = u * Vector2::new(psi[0], psi[1]);
    PureState::normalized(vec![out[0], out[1]], state.basis())
}

fn hermitize(m: &mut Matrix2<Complex64>) {
    *m = (*m + m.adjoint()) * re(0.5);
}

/// Evolves `rho0` through the pulse and returns `ρ(T)`.
pub fn evolve(
    rho0: &DensityMatrix,
    pulse: &PulseSpec,
    decay: &DecaySpec,
    config: &IntegratorConfig,
) -> Result<Evolution> {
    let mut y = rho0.to_matrix2()?;
    let samples = config.samples;

    if pulse.pulse_area == 0.0 {
        let trajectory = samples.map(|n| {
            (0..=n)
                .map(|_| Sample {
                    time: 0.0,
                    rho: rho0.clone(),
                })
                .collect()
        });
        return Ok(Evolution {
            final_state: rho0.clone(),
            trajectory,
        });
    }

    let ratio = decay.rate / pulse.drive_coupling;
    let tau_end = 0.5 * pulse.pulse_area;
    let to_time = 1.0 / pulse.drive_coupling;
    let f = move |_t: f64, rho: &Matrix2<Complex64>| scaled_rhs(rho, ratio);

    let segments = samples.unwrap_or(1);
    let mut trajectory = samples.map(|n| Vec::with_capacity(n + 1));
    let accept = |m: &Matrix2<Complex64>| {
        DensityMatrix::with_tolerance(
            DensityMatrix::from_matrix2_unchecked(m).matrix().clone(),
            InvariantTolerance::TRAJECTORY,
        )
    };
    if let Some(t) = trajectory.as_mut() {
        t.push(Sample {
            time: 0.0,
            rho: rho0.clone(),
        });
    }

    let mut next_step = 1e-2 * tau_end;
    for seg in 0..segments {
        let t0 = tau_end * seg as f64 / segments as f64;
        let t1 = tau_end * (seg + 1) as f64 / segments as f64;
        match config.method {
            Method::Rk4Fixed { steps } => {
                ode::rk4(&f, &mut y, t0, t1, steps.div_ceil(segments));
            }
            Method::Rk45Adaptive { rtol } => {
                let opts = AdaptiveOptions {
                    rtol,
                    atol: rtol,
                    min_step: 1e-12 * tau_end,
                    max_step: t1 - t0,
                    initial_step: next_step,
                };
                let stats = ode::dopri45(&f, &mut y, t0, t1, &opts).map_err(|e| match e {
                    Error::IntegrationFailure {
                        last_good_time,
                        step,
                    } => Error::IntegrationFailure {
                        last_good_time: last_good_time * to_time,
                        step: step * to_time,
                    },
                    other => other,
                })?;
                next_step = stats.next_step;
            }
        }
        hermitize(&mut y);
        if let Some(t) = trajectory.as_mut() {
            t.push(Sample {
                time: t1 * to_time,
                rho: accept(&y)?,
            });
        }
    }

    Ok(Evolution {
        final_state: accept(&y)?,
        trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ComplexMatrix;
    use std::f64::consts::PI;

    fn random_rho(seed: u64) -> DensityMatrix {
        // deterministic LCG; Bloch vector inside the unit ball
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let (x, y, z) = (2.0 * next() - 1.0, 2.0 * next() - 1.0, 2.0 * next() - 1.0);
        let n = (x * x + y * y + z * z).sqrt().max(1.0);
        let (x, y, z) = (x / n, y / n, z / n);
        let m = ComplexMatrix::from_row_major(
            2,
            &[
                Complex64::new(0.5 * (1.0 - z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (1.0 + z), 0.0),
            ],
        )
        .unwrap();
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn rhs_on_ground_state() {
        let pulse = PulseSpec::new(1.0, PI).unwrap();
        let d = lindblad_rhs(&DensityMatrix::ground(), &pulse, &DecaySpec::none()).unwrap();
        assert_eq!(d[(1, 1)], Complex64::new(0.0, 0.0));
        // ρ_ab = ρ[(1, 0)] picks up a unit-magnitude imaginary rate
        assert!((d[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert_eq!(d[(1, 0)].re, 0.0);
    }

    #[test]
    fn rhs_pure_decay() {
        let pulse = PulseSpec::new(0.0, 0.0).unwrap();
        let decay = DecaySpec::laser(1.0).unwrap();
        let d = lindblad_rhs(&DensityMatrix::excited(), &pulse, &decay).unwrap();
        assert!((d[(1, 1)].re + 1.0).abs() < 1e-15);
        assert!((d[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rhs_is_traceless_and_hermitian() {
        let pulse = PulseSpec::new(0.7, PI).unwrap();
        let decay = DecaySpec::laser(0.3).unwrap();
        for seed in 0..100 {
            let d = lindblad_rhs(&random_rho(seed), &pulse, &decay).unwrap();
            assert!(d.trace().norm() <= 1e-12);
            assert!((d - d.adjoint()).iter().all(|z| z.norm() <= 1e-12));
        }
    }

    #[test]
    fn unitary_pi_pulse_flips() {
        let pulse = PulseSpec::pi(1.0).unwrap();
        let out = evolve(
            &DensityMatrix::ground(),
            &pulse,
            &DecaySpec::none(),
            &IntegratorConfig::default(),
        )
        .unwrap();
        assert!(out.final_state.matrix().max_abs_diff(DensityMatrix::excited().matrix()) < 1e-8);
    }

    #[test]
    fn zero_area_is_identity() {
        let pulse = PulseSpec::new(1.0, 0.0).unwrap();
        let rho0 = DensityMatrix::from_pure(&PureState::plus());
        let out = evolve(&rho0, &pulse, &DecaySpec::laser(0.5).unwrap(), &IntegratorConfig::default())
            .unwrap();
        assert_eq!(out.final_state, rho0);
    }

    #[test]
    fn closed_form_decay_correction() {
        let ratio = 1e-3;
        let pulse = PulseSpec::pi(2.0).unwrap();
        let decay = DecaySpec::laser(ratio * 2.0).unwrap();
        let out = evolve(&DensityMatrix::ground(), &pulse, &decay, &IntegratorConfig::default()).unwrap();
        let deviation = 1.0 - out.final_state.excited_population();
        let expected = 3.0 * PI / 16.0 * ratio;
        assert!((deviation - expected).abs() / expected < 0.01);
    }

    #[test]
    fn trajectory_has_fencepost_length() {
        let cfg = IntegratorConfig::default().with_trajectory(25).unwrap();
        let pulse = PulseSpec::pi(3.0).unwrap();
        let out = evolve(&DensityMatrix::ground(), &pulse, &DecaySpec::laser(0.1).unwrap(), &cfg).unwrap();
        let traj = out.trajectory.unwrap();
        assert_eq!(traj.len(), 26);
        assert_eq!(traj[0].time, 0.0);
        assert!((traj[25].time - pulse.duration()).abs() < 1e-15);
        assert_eq!(traj[25].rho, out.final_state);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(IntegratorConfig::rk4(99).is_err());
        assert!(IntegratorConfig::adaptive(1e-5).is_err());
        assert!(IntegratorConfig::adaptive(1e-13).is_err());
        assert!(PulseSpec::new(0.0, PI).is_err());
        assert!(PulseSpec::new(-1.0, PI).is_err());
        assert!(DecaySpec::laser(-0.1).is_err());
        assert!(IntegratorConfig::rk4(100).unwrap().with_trajectory(0).is_err());
    }

    #[test]
    fn rk4_and_adaptive_agree() {
        let pulse = PulseSpec::half_pi(1.0).unwrap();
        let decay = DecaySpec::laser(0.05).unwrap();
        let rho0 = DensityMatrix::excited();
        let a = evolve(&rho0, &pulse, &decay, &IntegratorConfig::rk4(2000).unwrap()).unwrap();
        let b = evolve(&rho0, &pulse, &decay, &IntegratorConfig::default()).unwrap();
        assert!(a.final_state.matrix().max_abs_diff(b.final_state.matrix()) < 1e-9);
    }
}
