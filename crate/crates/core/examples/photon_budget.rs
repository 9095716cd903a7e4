//! Photon budget for a π pulse on a resonant dipole transition, with the
//! spontaneous-emission constraint written four equivalent ways and the
//! implied minimum energy per λ³.
//!
//! ```text
//! cargo run --release --example photon_budget
//! ```

use qlaser::budget::{
    constraint_chain, energy_density_bound, min_photon_constraint, AtomModel, BeamGeometry,
    FieldSpec, PhotonBudget,
};

fn main() -> Result<(), qlaser::Error> {
    let wavelength = 780e-9;
    let atom = AtomModel::resonant_with(wavelength, 2.5e-29)?;
    let beam = BeamGeometry::diffraction_limited(wavelength)?;
    let epsilon = 1e-4;

    println!("Γ = {:.4e} /s, σ_eff = {:.4e} m²", atom.gamma(), beam.sigma_eff());
    println!();
    println!(
        "{:>10} {:>11} {:>11} {:>11} {:>11}  verdict",
        "I (W/m²)", "T (s)", "n_bar'", "required", "margin"
    );
    for intensity in [1e2, 1e4, 1e6, 1e8, 1e10] {
        let field = FieldSpec::from_intensity(intensity)?;
        let t = field.pi_pulse_duration(&atom);
        let photons = PhotonBudget::new(&atom, &field, &beam, t)?;
        let c = min_photon_constraint(&atom, &field, &beam, None, epsilon)?;
        let chain = constraint_chain(&atom, &field, t, epsilon)?;
        // the four forms agree when T = π/Ω_R
        debug_assert!((chain.a1 - chain.a4).abs() <= 1e-9 * chain.a1);
        println!(
            "{intensity:>10.0e} {t:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}  {}",
            photons.n_bar_prime,
            c.required_n_bar_prime,
            c.verdict.margin,
            if c.verdict.satisfied { "ok" } else { "spontaneous emission dominates" }
        );
    }

    println!();
    for t in [1e-9, 1e-6, 1e-3] {
        let e = energy_density_bound(t, epsilon, wavelength)?;
        println!(
            "T = {t:.0e} s: energy in λ³ must exceed {:.3e} J ({:.1}·ħ/(εT))",
            e.energy_per_lambda_cubed, e.coefficient
        );
    }
    Ok(())
}
