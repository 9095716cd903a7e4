//! Unit-bearing physics: beam geometry, decay rates, photon numbers and the
//! minimum-energy constraints on a gate of accuracy `1 − ε`.
//!
//! All quantities are SI base units. The mode profile is a top hat: the
//! intensity `I` is uniform over the mode area `A`, so `P = I·A`.
//!
//! The laser-mode decay rate is `κ = Γ·σ_eff/A`, with
//! `σ_eff = 3π/(2k²) = 3λ²/(8π)`. Since `κ` falls as `1/A` at fixed
//! intensity while `n̄ = PT/ħω` grows as `A`, the laser-induced error
//! `p = c′/n̄` shrinks with beam area, whereas the total error obtained by
//! replacing `κ` with `Γ` depends only on `n̄′ = I·σ_eff·T/ħω`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// CODATA 2018 values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// J·s
    pub hbar: f64,
    /// m/s
    pub c: f64,
    /// F/m
    pub epsilon0: f64,
}

pub const SI: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    epsilon0: 8.854_187_812_8e-12,
};

/// `3π²/32`, the photon-number coefficient of a π pulse from `|b⟩`.
pub const PI_PULSE_PHOTON_COEFFICIENT: f64 = 3.0 * PI * PI / 32.0;

/// `(energy per λ³)·εT/ħ` at the minimum-energy threshold: `4π⁴/3`.
pub const ENERGY_DENSITY_COEFFICIENT: f64 = 4.0 * PI * PI * PI * PI / 3.0;

/// Required `n̄′·ε` at the threshold: `π²/4`.
pub const MIN_PHOTON_COEFFICIENT: f64 = PI * PI / 4.0;

fn positive(name: &'static str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {x}")))
    }
}

fn threshold(epsilon: f64) -> Result<f64> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(epsilon)
    } else {
        Err(Error::param("epsilon", format!("must lie in (0, 1), got {epsilon}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    wavelength: f64,
    mode_area: f64,
}

impl BeamGeometry {
    /// A mode area below `σ_eff` is accepted; check
    /// [`is_sub_diffraction`](Self::is_sub_diffraction) to flag it.
    pub fn new(wavelength: f64, mode_area: f64) -> Result<Self> {
        Ok(Self {
            wavelength: positive("wavelength", wavelength)?,
            mode_area: positive("mode_area", mode_area)?,
        })
    }

    /// Mode area equal to the scattering cross-section.
    pub fn diffraction_limited(wavelength: f64) -> Result<Self> {
        let w = positive("wavelength", wavelength)?;
        Self::new(w, sigma_eff(w))
    }

    pub fn with_area(&self, mode_area: f64) -> Result<Self> {
        Self::new(self.wavelength, mode_area)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn mode_area(&self) -> f64 {
        self.mode_area
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// `3π/(2k²)`.
    pub fn sigma_eff(&self) -> f64 {
        let k = self.wavenumber();
        3.0 * PI / (2.0 * k * k)
    }

    /// True when the beam is focused below the cross-section, which a
    /// real beam cannot be.
    pub fn is_sub_diffraction(&self) -> bool {
        self.mode_area < self.sigma_eff()
    }
}

/// `σ_eff = 3λ²/(8π)`.
pub fn sigma_eff(wavelength: f64) -> f64 {
    3.0 * wavelength * wavelength / (8.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomModel {
    transition_frequency: f64,
    dipole_moment: f64,
}

impl AtomModel {
    pub fn new(transition_frequency: f64, dipole_moment: f64) -> Result<Self> {
        Ok(Self {
            transition_frequency: positive("transition_frequency", transition_frequency)?,
            dipole_moment: positive("dipole_moment", dipole_moment)?,
        })
    }

    /// Resonant with light of the given wavelength, `ω = 2πc/λ`.
    pub fn resonant_with(wavelength: f64, dipole_moment: f64) -> Result<Self> {
        let w = positive("wavelength", wavelength)?;
        Self::new(2.0 * PI * SI.c / w, dipole_moment)
    }

    /// Atom with a prescribed free-space decay rate.
    pub fn with_gamma(transition_frequency: f64, gamma: f64) -> Result<Self> {
        let omega = positive("transition_frequency", transition_frequency)?;
        let gamma = positive("gamma", gamma)?;
        let d2 = gamma * 3.0 * PI * SI.epsilon0 * SI.hbar * SI.c.powi(3) / omega.powi(3);
        Self::new(omega, d2.sqrt())
    }

    pub fn transition_frequency(&self) -> f64 {
        self.transition_frequency
    }

    pub fn dipole_moment(&self) -> f64 {
        self.dipole_moment
    }

    /// Transition wavelength `2πc/ω`.
    pub fn wavelength(&self) -> f64 {
        2.0 * PI * SI.c / self.transition_frequency
    }

    /// `Γ = ω³d²/(3πε₀ħc³)`.
    pub fn gamma(&self) -> f64 {
        let w = self.transition_frequency;
        w.powi(3) * self.dipole_moment.powi(2) / (3.0 * PI * SI.epsilon0 * SI.hbar * SI.c.powi(3))
    }

    /// Photon energy `ħω`.
    pub fn photon_energy(&self) -> f64 {
        SI.hbar * self.transition_frequency
    }
}

/// Classical field of amplitude `E₀` at the atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    amplitude: f64,
}

impl FieldSpec {
    pub fn new(amplitude: f64) -> Result<Self> {
        Ok(Self {
            amplitude: positive("field_amplitude", amplitude)?,
        })
    }

    /// Inverts `I = ½ε₀cE₀²`.
    pub fn from_intensity(intensity: f64) -> Result<Self> {
        let i = positive("intensity", intensity)?;
        Self::new((2.0 * i / (SI.epsilon0 * SI.c)).sqrt())
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `½ε₀E₀²`, J/m³.
    pub fn energy_density(&self) -> f64 {
        0.5 * SI.epsilon0 * self.amplitude * self.amplitude
    }

    /// `I = ½ε₀cE₀²`.
    pub fn intensity(&self) -> f64 {
        self.energy_density() * SI.c
    }

    pub fn power(&self, beam: &BeamGeometry) -> f64 {
        self.intensity() * beam.mode_area()
    }

    /// `Ω_R = d·E₀/ħ`.
    pub fn rabi_frequency(&self, atom: &AtomModel) -> f64 {
        atom.dipole_moment * self.amplitude / SI.hbar
    }

    /// Duration of a π pulse, `π/Ω_R`.
    pub fn pi_pulse_duration(&self, atom: &AtomModel) -> f64 {
        PI / self.rabi_frequency(atom)
    }
}

/// Photon counts for one pulse of duration `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonBudget {
    /// `PT/ħω`: photons in the whole pulse.
    pub n_bar: f64,
    /// `I·σ_eff·T/ħω`: photons in the volume `σ_eff·cT`.
    pub n_bar_prime: f64,
    /// `IA/ħω`, photons per second.
    pub flux: f64,
}

impl PhotonBudget {
    pub fn new(atom: &AtomModel, field: &FieldSpec, beam: &BeamGeometry, duration: f64) -> Result<Self> {
        let t = positive("duration", duration)?;
        let e = atom.photon_energy();
        let flux = field.power(beam) / e;
        Ok(Self {
            n_bar: flux * t,
            n_bar_prime: field.intensity() * beam.sigma_eff() * t / e,
            flux,
        })
    }
}

/// `κ = Γ·σ_eff/A`.
pub fn kappa_from_beam(atom: &AtomModel, beam: &BeamGeometry) -> Result<f64> {
    kappa_from_gamma(atom.gamma(), beam)
}

pub fn kappa_from_gamma(gamma: f64, beam: &BeamGeometry) -> Result<f64> {
    if beam.mode_area() == 0.0 {
        return Err(Error::param("mode_area", "must be non-zero"));
    }
    Ok(gamma * beam.sigma_eff() / beam.mode_area())
}

/// `p = c′/n̄`. Pass `n̄′` to get the all-modes error.
pub fn error_vs_photons(coefficient: f64, n_bar: f64) -> Result<f64> {
    positive("n_bar", n_bar)?;
    if !(coefficient >= 0.0) {
        return Err(Error::param("coefficient", "must be non-negative"));
    }
    Ok(coefficient / n_bar)
}

/// Photon flux consistent with a Rabi frequency and laser-mode decay rate,
/// `Φ = Ω_R²/(4κ)`.
pub fn flux_relation(rabi: f64, kappa: f64) -> Result<f64> {
    if kappa == 0.0 {
        return Err(Error::param("kappa", "zero decay rate means infinite flux"));
    }
    positive("kappa", kappa)?;
    positive("rabi", rabi)?;
    Ok(rabi * rabi / (4.0 * kappa))
}

/// `κ/Ω_R = θ/(4n̄)` for a pulse of area `θ` carrying `n̄` photons.
pub fn kappa_over_rabi(pulse_area: f64, n_bar: f64) -> Result<f64> {
    Ok(positive("pulse_area", pulse_area)? / (4.0 * positive("n_bar", n_bar)?))
}

/// π-pulse failure from the master-equation result, `(3π/8)·κ/Ω_R`.
pub fn pi_pulse_error_from_rates(kappa: f64, rabi: f64) -> f64 {
    3.0 * PI / 8.0 * kappa / rabi
}

/// Pure-rate view of the budget: every input is a rate or a time, so every
/// output is unchanged by a change of time unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBudget {
    pub gamma: f64,
    pub kappa: f64,
    pub rabi: f64,
    pub duration: f64,
}

impl RateBudget {
    pub fn from_si(atom: &AtomModel, field: &FieldSpec, beam: &BeamGeometry, duration: f64) -> Result<Self> {
        Ok(Self {
            gamma: atom.gamma(),
            kappa: kappa_from_beam(atom, beam)?,
            rabi: field.rabi_frequency(atom),
            duration: positive("duration", duration)?,
        })
    }

    pub fn rescale_time(&self, s: f64) -> Self {
        Self {
            gamma: self.gamma * s,
            kappa: self.kappa * s,
            rabi: self.rabi * s,
            duration: self.duration / s,
        }
    }

    pub fn flux(&self) -> Result<f64> {
        flux_relation(self.rabi, self.kappa)
    }

    pub fn n_bar(&self) -> Result<f64> {
        Ok(self.flux()? * self.duration)
    }

    /// `n̄·κ/Γ`, i.e. `n̄·σ_eff/A`.
    pub fn n_bar_prime(&self) -> Result<f64> {
        Ok(self.n_bar()? * self.kappa / positive("gamma", self.gamma)?)
    }

    pub fn a1_margin(&self, epsilon: f64) -> Result<f64> {
        a1_margin(self.gamma, self.duration, epsilon)
    }

    pub fn a2_margin(&self, epsilon: f64) -> Result<f64> {
        a2_margin(self.gamma, self.rabi, self.duration, epsilon)
    }
}

/// `ε/(ΓT)`; satisfied when above 1.
pub fn a1_margin(gamma: f64, duration: f64, epsilon: f64) -> Result<f64> {
    Ok(threshold(epsilon)? / (positive("gamma", gamma)? * positive("duration", duration)?))
}

/// `ε·Ω_R²T/(π²Γ)`.
pub fn a2_margin(gamma: f64, rabi: f64, duration: f64, epsilon: f64) -> Result<f64> {
    let (g, r, t) = (
        positive("gamma", gamma)?,
        positive("rabi", rabi)?,
        positive("duration", duration)?,
    );
    Ok(threshold(epsilon)? * r * r * t / (PI * PI * g))
}

/// Verdict of one inequality, with `margin = allowed/required`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub margin: f64,
    pub satisfied: bool,
}

impl Verdict {
    fn from_margin(margin: f64) -> Self {
        Self {
            margin,
            satisfied: margin > 1.0,
        }
    }
}

/// Both sides of the minimum-energy constraint
/// `½ε₀E₀²·σ_eff·cT > (π²/4)·ħω/ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinPhotonConstraint {
    /// Field energy in the volume `σ_eff·cT`, J.
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
    /// Photon form of the left side.
    pub n_bar_prime: f64,
    /// `(π²/4)/ε`.
    pub required_n_bar_prime: f64,
}

/// Evaluates the minimum-energy constraint. `duration = None` uses the
/// π-pulse time `π/Ω_R`.
pub fn min_photon_constraint(
    atom: &AtomModel,
    field: &FieldSpec,
    beam: &BeamGeometry,
    duration: Option<f64>,
    epsilon: f64,
) -> Result<MinPhotonConstraint> {
    let eps = threshold(epsilon)?;
    let t = match duration {
        Some(t) => positive("duration", t)?,
        None => field.pi_pulse_duration(atom),
    };
    let e = atom.photon_energy();
    let lhs = field.energy_density() * beam.sigma_eff() * SI.c * t;
    let rhs = MIN_PHOTON_COEFFICIENT * e / eps;
    Ok(MinPhotonConstraint {
        lhs,
        rhs,
        verdict: Verdict::from_margin(lhs / rhs),
        n_bar_prime: lhs / e,
        required_n_bar_prime: MIN_PHOTON_COEFFICIENT / eps,
    })
}

/// Margins of the four forms of the spontaneous-emission constraint for
/// one parameter set. With `T = π/Ω_R` they all coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintChain {
    /// `ΓT < ε`
    pub a1: f64,
    /// `π²Γ/(Ω_R²T) < ε`
    pub a2: f64,
    /// Explicit form in `ω`, `d`, `E₀`.
    pub a3: f64,
    /// Energy in the volume `σ_eff·cT`.
    pub a4: f64,
}

pub fn constraint_chain(
    atom: &AtomModel,
    field: &FieldSpec,
    duration: f64,
    epsilon: f64,
) -> Result<ConstraintChain> {
    let eps = threshold(epsilon)?;
    let t = positive("duration", duration)?;
    let rabi = field.rabi_frequency(atom);
    let a3_lhs = explicit_spontaneous_bound(atom, field);
    let beam = BeamGeometry::diffraction_limited(atom.wavelength())?;
    Ok(ConstraintChain {
        a1: a1_margin(atom.gamma(), t, eps)?,
        a2: a2_margin(atom.gamma(), rabi, t, eps)?,
        a3: eps * t / a3_lhs,
        a4: min_photon_constraint(atom, field, &beam, Some(t), eps)?.verdict.margin,
    })
}

/// `(π²/4πε₀)·(4ω³d²/3ħc³)·(dE₀/ħ)⁻²`, which must stay below `εT`.
pub fn explicit_spontaneous_bound(atom: &AtomModel, field: &FieldSpec) -> f64 {
    let (w, d) = (atom.transition_frequency, atom.dipole_moment);
    let rabi = d * field.amplitude / SI.hbar;
    PI * PI / (4.0 * PI * SI.epsilon0) * (4.0 * w.powi(3) * d * d / (3.0 * SI.hbar * SI.c.powi(3)))
        / (rabi * rabi)
}

/// Lower bound on the field energy in one cubic wavelength around the atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDensityBound {
    /// J per λ³.
    pub energy_per_lambda_cubed: f64,
    /// Dimensionless prefactor of `ħ/(εT)`; [`ENERGY_DENSITY_COEFFICIENT`].
    pub coefficient: f64,
    /// The simple `ħ/(εT)` estimate, meaningful only as an order of magnitude.
    pub order_of_magnitude: f64,
}

/// Minimum energy per `λ³` implied by the minimum-photon constraint,
/// `(4π⁴/3)·ħ/(εT)`. Independent of `λ`.
pub fn energy_density_bound(duration: f64, epsilon: f64, wavelength: f64) -> Result<EnergyDensityBound> {
    let t = positive("duration", duration)?;
    let eps = threshold(epsilon)?;
    positive("wavelength", wavelength)?;
    let scale = SI.hbar / (eps * t);
    Ok(EnergyDensityBound {
        energy_per_lambda_cubed: ENERGY_DENSITY_COEFFICIENT * scale,
        coefficient: ENERGY_DENSITY_COEFFICIENT,
        order_of_magnitude: scale,
    })
}

/// Far-detuned two-photon drive through an intermediate level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanSpec {
    detuning: f64,
    rabi: f64,
}

/// Smallest accepted `Δ/Ω_R`.
pub const RAMAN_MIN_DETUNING_RATIO: f64 = 10.0;

impl RamanSpec {
    pub fn new(detuning: f64, rabi: f64) -> Result<Self> {
        let d = positive("detuning", detuning)?;
        let r = positive("rabi", rabi)?;
        if d < RAMAN_MIN_DETUNING_RATIO * r {
            return Err(Error::param(
                "detuning",
                format!("must be at least {RAMAN_MIN_DETUNING_RATIO}·Ω_R"),
            ));
        }
        Ok(Self { detuning: d, rabi: r })
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn rabi(&self) -> f64 {
        self.rabi
    }

    /// `Ω_R²/Δ`.
    pub fn effective_rabi(&self) -> f64 {
        self.rabi * self.rabi / self.detuning
    }

    /// Two-photon π-pulse time, `πΔ/Ω_R²`.
    pub fn pi_pulse_duration(&self) -> f64 {
        PI / self.effective_rabi()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanReport {
    /// Literal `Γ/Δ < ε`, margin `εΔ/Γ`.
    pub verdict: Verdict,
    /// Constant obtained in `const·Γ/(Ω_R²T) < ε` after eliminating `Δ`: π.
    pub eliminated_constant: f64,
    /// Margin of the eliminated form, `εΩ_R²T/(πΓ)`.
    pub eliminated_margin: f64,
    /// Margin of the `π²` form it is often quoted as.
    pub quoted_form_margin: f64,
    /// `quoted_form_margin / eliminated_margin`, i.e. `1/π`.
    pub gap_factor: f64,
}

/// Spontaneous-emission constraint for a Raman gate whose pulse satisfies
/// `Ω_R²T/Δ = π`.
pub fn raman_constraint(raman: &RamanSpec, gamma: f64, duration: f64, epsilon: f64) -> Result<RamanReport> {
    let eps = threshold(epsilon)?;
    let g = positive("gamma", gamma)?;
    let t = positive("duration", duration)?;
    let area = raman.effective_rabi() * t;
    if ((area - PI) / PI).abs() > 1e-6 {
        return Err(Error::param(
            "duration",
            format!("two-photon pulse area {area} is not π"),
        ));
    }
    let r2t = raman.rabi * raman.rabi * t;
    let eliminated_constant = PI;
    let eliminated_margin = eps * r2t / (eliminated_constant * g);
    let quoted_form_margin = a2_margin(g, raman.rabi, t, eps)?;
    Ok(RamanReport {
        verdict: Verdict::from_margin(eps * raman.detuning / g),
        eliminated_constant,
        eliminated_margin,
        quoted_form_margin,
        gap_factor: quoted_form_margin / eliminated_margin,
    })
}

/// One row of the fixed-intensity beam-area sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaRow {
    pub area: f64,
    pub kappa: f64,
    pub n_bar: f64,
    pub n_bar_prime: f64,
    /// `c′/n̄`: error from the laser modes.
    pub p_laser: f64,
    /// `c′/n̄′`: error from all vacuum modes.
    pub p_total: f64,
}

/// Sweeps the mode area at fixed intensity for a π pulse.
pub fn area_sweep(atom: &AtomModel, field: &FieldSpec, areas: &[f64]) -> Result<Vec<AreaRow>> {
    let t = field.pi_pulse_duration(atom);
    areas
        .iter()
        .map(|&a| {
            let beam = BeamGeometry::new(atom.wavelength(), a)?;
            let photons = PhotonBudget::new(atom, field, &beam, t)?;
            Ok(AreaRow {
                area: a,
                kappa: kappa_from_beam(atom, &beam)?,
                n_bar: photons.n_bar,
                n_bar_prime: photons.n_bar_prime,
                p_laser: error_vs_photons(PI_PULSE_PHOTON_COEFFICIENT, photons.n_bar)?,
                p_total: error_vs_photons(PI_PULSE_PHOTON_COEFFICIENT, photons.n_bar_prime)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn sigma_eff_identity() {
        let beam = BeamGeometry::new(1e-6, 1e-12).unwrap();
        assert!(rel(beam.sigma_eff(), 3e-12 / (8.0 * PI)) < 1e-14);
        assert!(rel(beam.sigma_eff(), 1.1937e-13) < 1e-4);
        assert!(!beam.is_sub_diffraction());
        assert!(beam.with_area(1e-14).unwrap().is_sub_diffraction());
    }

    #[test]
    fn kappa_examples() {
        let beam = BeamGeometry::new(1e-6, 1e-12).unwrap();
        let k = kappa_from_gamma(1e7, &beam).unwrap();
        assert!(rel(k, 1.1937e6) < 1e-4);
        let tight = BeamGeometry::diffraction_limited(1e-6).unwrap();
        assert!(rel(kappa_from_gamma(1e7, &tight).unwrap(), 1e7) < 1e-15);
        let wide = tight.with_area(1e6 * tight.sigma_eff()).unwrap();
        assert!(rel(kappa_from_gamma(1e7, &wide).unwrap(), 10.0) < 1e-14);
        assert!(BeamGeometry::new(1e-6, 0.0).is_err());
    }

    #[test]
    fn error_vs_photon_examples() {
        let p = error_vs_photons(PI_PULSE_PHOTON_COEFFICIENT, 1e6).unwrap();
        assert!(rel(p, 9.25e-7) < 1e-3);
        assert!((p - 9.3e-7).abs() < 0.01e-6);
        assert!(error_vs_photons(0.93, 1e300).unwrap() < 1e-299);
        assert!(error_vs_photons(0.93, 0.0).is_err());
    }

    #[test]
    fn flux_examples() {
        assert!(rel(kappa_over_rabi(PI, 1e6).unwrap(), 7.853_981_6e-7) < 1e-8);
        assert!(flux_relation(1.0, 0.0).is_err());
        assert_eq!(flux_relation(2.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn required_photons_at_1e4() {
        let atom = AtomModel::resonant_with(780e-9, 2.5e-29).unwrap();
        let field = FieldSpec::new(1e4).unwrap();
        let beam = BeamGeometry::new(780e-9, 1e-10).unwrap();
        let c = min_photon_constraint(&atom, &field, &beam, None, 1e-4).unwrap();
        assert!(rel(c.required_n_bar_prime, 2.467e4) < 1e-3);
        let doubled = min_photon_constraint(&atom, &field, &beam, Some(2.0 * field.pi_pulse_duration(&atom)), 1e-4)
            .unwrap();
        assert!(rel(doubled.verdict.margin, 2.0 * c.verdict.margin) < 1e-14);
        assert!(min_photon_constraint(&atom, &field, &beam, None, 0.0).is_err());
        assert!(min_photon_constraint(&atom, &field, &beam, None, 1.0).is_err());
    }

    #[test]
    fn energy_bound_scaling() {
        let a = energy_density_bound(1e-6, 1e-4, 1e-6).unwrap();
        let b = energy_density_bound(2e-6, 1e-4, 5e-7).unwrap();
        assert!(rel(b.energy_per_lambda_cubed, 0.5 * a.energy_per_lambda_cubed) < 1e-14);
        let pure = a.energy_per_lambda_cubed * 1e-4 * 1e-6 / SI.hbar;
        assert!(rel(pure, ENERGY_DENSITY_COEFFICIENT) < 1e-14);
    }

    #[test]
    fn raman_examples() {
        let raman = RamanSpec::new(1e11, 1e9).unwrap();
        let t = raman.pi_pulse_duration();
        let r = raman_constraint(&raman, 1e6, t, 1e-4).unwrap();
        assert!(r.verdict.satisfied);
        assert!(rel(r.verdict.margin, 10.0) < 1e-14);
        assert!(rel(r.eliminated_margin, r.verdict.margin) < 1e-14);
        assert!(rel(r.gap_factor, 1.0 / PI) < 1e-14);

        let border = raman_constraint(&raman, 1e-4 * 1e11, t, 1e-4).unwrap();
        assert!(rel(border.verdict.margin, 1.0) < 1e-14);

        assert!(raman_constraint(&raman, 1e6, 1.01 * t, 1e-4).is_err());
        assert!(RamanSpec::new(5e9, 1e9).is_err());
    }
}
