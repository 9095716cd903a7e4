//! Far-detuned Raman π pulse: the scattering check `Γ/Δ < ε`, and what
//! remains after eliminating Δ through `Ω_eff·T = π`.
//!
//! ```text
//! cargo run --release --example raman_constraint
//! ```

use qlaser::budget::{raman_constraint, RamanSpec};

fn main() -> Result<(), qlaser::Error> {
    let gamma = 3.7e7;
    let rabi = 2e9;
    let epsilon = 1e-4;

    println!(
        "{:>10} {:>11} {:>11} {:>11} {:>11}",
        "Δ/Ω_R", "T (s)", "margin", "π² form", "constant"
    );
    for k in [10.0, 100.0, 1e3, 1e4] {
        let raman = RamanSpec::new(k * rabi, rabi)?;
        let t = raman.pi_pulse_duration();
        let r = raman_constraint(&raman, gamma, t, epsilon)?;
        println!(
            "{k:>10.0e} {t:>11.3e} {:>11.3e} {:>11.3e} {:>11.6}",
            r.verdict.margin, r.quoted_form_margin, r.eliminated_constant
        );
    }
    println!();
    println!("Γ/Δ = π·Γ/(Ω_R²T), so the π² form is stricter than the direct check by a factor π.");
    Ok(())
}
