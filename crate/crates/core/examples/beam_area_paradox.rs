//! At fixed intensity, widening the beam adds photons and shrinks the
//! laser-mode error, yet the total error stays put: κ·A is fixed by the
//! atom, and the all-modes decay sets the floor.
//!
//! ```text
//! cargo run --release --example beam_area_paradox
//! ```

use qlaser::budget::{area_sweep, sigma_eff, AtomModel, FieldSpec};

fn main() -> Result<(), qlaser::Error> {
    let wavelength = 780e-9;
    let atom = AtomModel::resonant_with(wavelength, 2.5e-29)?;
    let field = FieldSpec::from_intensity(1e4)?;
    let sigma = sigma_eff(wavelength);
    let areas: Vec<f64> = (0..7).map(|i| sigma * 10f64.powi(i)).collect();

    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "A/σ_eff", "κ (1/s)", "κ·A", "n_bar", "p_laser", "p_total"
    );
    for r in area_sweep(&atom, &field, &areas)? {
        println!(
            "{:>8.0e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            r.area / sigma,
            r.kappa,
            r.kappa * r.area,
            r.n_bar,
            r.p_laser,
            r.p_total
        );
    }
    println!("Γ·σ_eff = {:.4e}", atom.gamma() * sigma);
    Ok(())
}
