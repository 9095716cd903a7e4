//! Exact single-mode Jaynes–Cummings evolution from a coherent field,
//! showing the residual atom–field entanglement falls off as 1/n̄.
//!
//! ```text
//! cargo run --release --example jaynes_cummings_oracle
//! ```

use std::f64::consts::PI;

use qlaser::jc::{jc_evolve, jc_gate_error, CoherentField};
use qlaser::qcore::PureState;

fn main() -> Result<(), qlaser::Error> {
    println!("{:>8} {:>8} {:>14} {:>10}", "n_bar", "N_max", "p(π)", "p·n_bar");
    for n_bar in [25.0, 100.0, 400.0, 1600.0, 6400.0] {
        let field = CoherentField::new(n_bar)?;
        let p = jc_gate_error(PI, &PureState::ground(), n_bar)?;
        println!("{n_bar:>8} {:>8} {p:>14.6e} {:>10.5}", field.n_max(), p * n_bar);
    }

    // collapse of the Rabi oscillation for a small field
    let n_bar = 25.0;
    let field = CoherentField::new(n_bar)?;
    let rabi_period = PI / n_bar.sqrt();
    println!();
    println!("n_bar = {n_bar}: excited population and purity of the atom");
    for periods in [0.5, 1.5, 5.5, 10.5, 20.5] {
        let rho = jc_evolve(&PureState::ground(), &field, 1.0, periods * 2.0 * rabi_period)?;
        println!(
            "  t = {periods:>5} Rabi periods: rho_aa = {:.4}, purity = {:.4}",
            rho.excited_population(),
            rho.purity()
        );
    }
    Ok(())
}
