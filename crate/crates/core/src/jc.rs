//! Single-mode oracle: a two-level atom coupled to one coherent field mode,
//! `H = g(σ₊a + σ₋a†)`.
//!
//! The Hamiltonian is block diagonal. Sector `k ≥ 1` is spanned by
//! `|b, k⟩` and `|a, k−1⟩` and rotates at angular rate `g√k`; `|b, 0⟩` is
//! stationary. Evolution is therefore exact per sector and needs no ODE
//! solver. The field amplitude `α` is taken real and positive, so the
//! mean-field drive is `gα(σ₊ + σ₋)`, the same Hamiltonian as in
//! [`crate::lindblad`].

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lindblad::ideal_rotation;
use crate::qcore::{fidelity_pure, BasisLabel, DensityMatrix, PureState, EXCITED, GROUND};

/// Largest Poisson mass allowed beyond the truncation.
pub const MAX_TAIL: f64 = 1e-10;
/// Smallest `n̄` for which the semiclassical gate comparison is run.
pub const MIN_SEMICLASSICAL_PHOTONS: f64 = 25.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coherent state `|α⟩`, `α` real, truncated to Fock states `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentField {
    alpha: f64,
    n_max: usize,
    weights: Vec<f64>,
}

fn ln_poisson(n: usize, mean: f64, ln_fact: f64) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    n as f64 * mean.ln() - mean - ln_fact
}

/// Poisson mass strictly above `n_max`, summed term by term.
fn poisson_tail(mean: f64, n_max: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let ln_fact: f64 = (1..=n_max + 1).map(|k| (k as f64).ln()).sum();
    let mut ln_term = ln_poisson(n_max + 1, mean, ln_fact);
    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        let term = ln_term.exp();
        tail += term;
        n += 1;
        ln_term += mean.ln() - (n as f64).ln();
        if term < 1e-30 || (n as f64 > mean && term < 1e-18 * tail) {
            break;
        }
    }
    tail
}

impl CoherentField {
    /// Mean photon number `n̄` with the default truncation
    /// `⌈n̄ + 10√n̄⌉`, widened until the tail is below [`MAX_TAIL`].
    pub fn new(n_bar: f64) -> Result<Self> {
        check_n_bar(n_bar)?;
        let mut n_max = minimum_truncation(n_bar);
        while poisson_tail(n_bar, n_max) >= MAX_TAIL {
            n_max += 1;
        }
        Self::with_truncation(n_bar, n_max)
    }

    pub fn with_truncation(n_bar: f64, n_max: usize) -> Result<Self> {
        check_n_bar(n_bar)?;
        if n_max < minimum_truncation(n_bar) {
            return Err(Error::Truncation {
                n_max,
                tail: poisson_tail(n_bar, n_max),
            });
        }
        let tail = poisson_tail(n_bar, n_max);
        if tail >= MAX_TAIL {
            return Err(Error::Truncation { n_max, tail });
        }
        let mut ln_fact = 0.0;
        let mut weights: Vec<f64> = (0..=n_max)
            .map(|n| {
                if n > 0 {
                    ln_fact += (n as f64).ln();
                }
                ln_poisson(n, n_bar, ln_fact).exp()
            })
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self {
            alpha: n_bar.sqrt(),
            n_max,
            weights,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mean_photons(&self) -> f64 {
        self.alpha * self.alpha
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Renormalized Poisson weights `|⟨n|α⟩|²`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn check_n_bar(n_bar: f64) -> Result<()> {
    if n_bar >= 0.0 && n_bar.is_finite() {
        Ok(())
    } else {
        Err(Error::param("n_bar", "must be finite and non-negative"))
    }
}

/// `⌈n̄ + 10√n̄⌉`.
pub fn minimum_truncation(n_bar: f64) -> usize {
    (n_bar + 10.0 * n_bar.sqrt()).ceil() as usize
}

/// Joint atom–field state as amplitudes on `|b, n⟩` and `|a, n⟩`,
/// `n = 0..=n_max + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    ground: Vec<Complex64>,
    excited: Vec<Complex64>,
}

impl JointState {
    /// `|ψ_atom⟩ ⊗ |α⟩`, with room for one extra photon.
    pub fn product(atom: &PureState, field: &CoherentField) -> Result<Self> {
        if atom.basis() != BasisLabel::Atomic {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: atom.dim(),
            });
        }
        let (cb, ca) = (atom.amplitudes()[GROUND], atom.amplitudes()[EXCITED]);
        let amp = |n: usize| field.weights.get(n).map_or(0.0, |w| w.sqrt());
        let len = field.n_max + 2;
        Ok(Self {
            ground: (0..len).map(|n| cb * amp(n)).collect(),
            excited: (0..len).map(|n| ca * amp(n)).collect(),
        })
    }

    /// Highest Fock index represented.
    pub fn n_max(&self) -> usize {
        self.ground.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.ground
            .iter()
            .chain(self.excited.iter())
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// Exact evolution for time `t` at coupling `g`.
    pub fn evolve(&self, g: f64, t: f64) -> Self {
        let mut out = self.clone();
        // sector k couples |b, k⟩ and |a, k−1⟩
        for k in 1..self.ground.len() {
            let u = sector_propagator(g, k, t);
            let (b, a) = (self.ground[k], self.excited[k - 1]);
            out.ground[k] = u[(0, 0)] * b + u[(0, 1)] * a;
            out.excited[k - 1] = u[(1, 0)] * b + u[(1, 1)] * a;
        }
        // |a, n_max + 1⟩ would couple to a photon number outside the space;
        // it is empty by construction
        debug_assert_eq!(self.excited[self.excited.len() - 1], ZERO);
        out
    }

    /// Atomic state with the field traced out.
    pub fn reduced_atom(&self) -> Result<DensityMatrix> {
        let rho_bb: f64 = self.ground.iter().map(|z| z.norm_sqr()).sum();
        let rho_aa: f64 = self.excited.iter().map(|z| z.norm_sqr()).sum();
        let rho_ab: Complex64 = self
            .excited
            .iter()
            .zip(&self.ground)
            .map(|(a, b)| a * b.conj())
            .sum();
        let m = Matrix2::new(
            Complex64::new(rho_bb, 0.0),
            rho_ab.conj(),
            rho_ab,
            Complex64::new(rho_aa, 0.0),
        );
        let rho = DensityMatrix::from_matrix2_unchecked(&m);
        rho.check(crate::qcore::InvariantTolerance::TRAJECTORY)?;
        Ok(rho)
    }

    /// As a [`PureState`] over atom ⊗ Fock(0..=n_max), ground block first.
    pub fn to_pure_state(&self) -> Result<PureState> {
        let amps = self.ground.iter().chain(self.excited.iter()).copied().collect();
        PureState::normalized(amps, BasisLabel::AtomFock { n_max: self.n_max() })
    }
}

/// `exp(−i g√k t σx)` on the `(|b, k⟩, |a, k−1⟩)` pair.
pub fn sector_propagator(g: f64, k: usize, t: f64) -> Matrix2<Complex64> {
    let phi = g * (k as f64).sqrt() * t;
    let c = Complex64::new(phi.cos(), 0.0);
    let s = Complex64::new(0.0, -phi.sin());
    Matrix2::new(c, s, s, c)
}

/// Evolves `atom_start ⊗ |α⟩` for `duration` and traces out the field.
pub fn jc_evolve(atom_start: &PureState, field: &CoherentField, g: f64, duration: f64) -> Result<DensityMatrix> {
    if !(g >= 0.0) || !(duration >= 0.0) || !g.is_finite() || !duration.is_finite() {
        return Err(Error::param("g, duration", "must be finite and non-negative"));
    }
    let joint = JointState::product(atom_start, field)?.evolve(g, duration);
    let norm = joint.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidState(format!("joint norm drifted to {norm}")));
    }
    joint.reduced_atom()
}

/// Failure probability of a `θ` pulse driven by a coherent state of mean
/// photon number `n̄`, against the semiclassical rotation by `θ`. The pulse
/// lasts `θ/(2g√n̄)`.
pub fn jc_gate_error(theta: f64, atom_start: &PureState, n_bar: f64) -> Result<f64> {
    let field = CoherentField::new(n_bar)?;
    jc_gate_error_with_field(theta, atom_start, &field)
}

pub fn jc_gate_error_with_field(theta: f64, atom_start: &PureState, field: &CoherentField) -> Result<f64> {
    if field.mean_photons() < MIN_SEMICLASSICAL_PHOTONS {
        return Err(Error::param(
            "n_bar",
            format!("must be at least {MIN_SEMICLASSICAL_PHOTONS}"),
        ));
    }
    if !(theta > 0.0 && theta <= 2.0 * std::f64::consts::PI) {
        return Err(Error::param("theta", "must lie in (0, 2π]"));
    }
    let g = 1.0;
    let duration = theta / (2.0 * g * field.alpha());
    let rho = jc_evolve(atom_start, field, g, duration)?;
    let target = ideal_rotation(theta, atom_start)?;
    Ok(1.0 - fidelity_pure(&rho, &target)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn vacuum_rabi_oscillation() {
        let vac = CoherentField::new(0.0).unwrap();
        let g = 0.7;
        for &t in &[0.0, 0.3, 1.1, 2.0] {
            let rho = jc_evolve(&PureState::excited(), &vac, g, t).unwrap();
            let expected = 0.5 * (1.0 + (2.0 * g * t).cos());
            assert!((rho.excited_population() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn ground_state_in_vacuum_is_stationary() {
        let vac = CoherentField::new(0.0).unwrap();
        let rho = jc_evolve(&PureState::ground(), &vac, 1.0, 3.0).unwrap();
        assert_eq!(rho, DensityMatrix::ground());
    }

    #[test]
    fn poisson_weights_normalized() {
        for n_bar in [0.5, 1.0, 25.0, 400.0] {
            let f = CoherentField::new(n_bar).unwrap();
            let total: f64 = f.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
            assert!(f.n_max() >= minimum_truncation(n_bar));
            let mean: f64 = f.weights().iter().enumerate().map(|(n, w)| n as f64 * w).sum();
            assert!((mean - n_bar).abs() < 1e-8 * n_bar.max(1.0));
        }
    }

    #[test]
    fn tail_matches_complement_of_weights() {
        let n_bar = 30.0;
        let n_max = 60;
        let ln_fact = |n: usize| (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
        let head: f64 = (0..=n_max).map(|n| ln_poisson(n, n_bar, ln_fact(n)).exp()).sum();
        assert!((poisson_tail(n_bar, n_max) - (1.0 - head)).abs() < 1e-13);
    }

    #[test]
    fn rejects_short_truncation() {
        assert!(matches!(
            CoherentField::with_truncation(400.0, 500),
            Err(Error::Truncation { .. })
        ));
        // meets n̄ + 10√n̄ but the tail is still too heavy
        assert!(matches!(
            CoherentField::with_truncation(1.0, 11),
            Err(Error::Truncation { .. })
        ));
        assert!(CoherentField::with_truncation(400.0, 600).is_ok());
    }

    #[test]
    fn sector_propagator_matches_series() {
        // exp(−iM) by Taylor series for M = g√k t σx
        let (g, k, t) = (0.8, 7usize, 1.3);
        let a = g * (k as f64).sqrt() * t;
        let m = Matrix2::new(ZERO, Complex64::new(a, 0.0), Complex64::new(a, 0.0), ZERO);
        let mut term = Matrix2::<Complex64>::identity();
        let mut sum = term;
        for n in 1..60 {
            term = term * m * Complex64::new(0.0, -1.0 / n as f64);
            sum += term;
        }
        let u = sector_propagator(g, k, t);
        assert!((u - sum).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn joint_norm_preserved() {
        let field = CoherentField::new(100.0).unwrap();
        let joint = JointState::product(&PureState::plus(), &field).unwrap();
        let later = joint.evolve(1.0, 0.37);
        assert!((later.norm_sqr() - 1.0).abs() < 1e-9);
        assert!(later.to_pure_state().is_ok());
    }

    #[test]
    fn pi_pulse_single_mode_coefficient() {
        let p = jc_gate_error(PI, &PureState::ground(), 400.0).unwrap();
        assert!((p * 400.0 - 0.62).abs() < 0.10, "p·n̄ = {}", p * 400.0);
    }

    #[test]
    fn gate_error_preconditions() {
        assert!(jc_gate_error(PI, &PureState::ground(), 10.0).is_err());
        assert!(jc_gate_error(0.0, &PureState::ground(), 100.0).is_err());
        assert!(jc_gate_error(7.0, &PureState::ground(), 100.0).is_err());
    }
}
