//! The Markovian laser-mode decay model against exact single-mode
//! Jaynes–Cummings evolution, both as p·n̄.
//!
//! ```text
//! cargo run --release --example markov_vs_single_mode
//! ```

use std::f64::consts::PI;

use qlaser::gates::{failure_probability, ratio_for_photons, sweep_config, GateExperiment};
use qlaser::jc::jc_gate_error;

fn main() -> Result<(), qlaser::Error> {
    let gates = [
        ("pi   from |b>", GateExperiment::pi_from_ground()),
        ("pi/2 from |b>", GateExperiment::half_pi_from_ground()),
        ("pi/2 from |a>", GateExperiment::half_pi_from_excited()),
    ];
    println!("{:<14} {:>7} {:>12} {:>12} {:>8}", "gate", "n_bar", "markov p·n", "jc p·n", "ratio");
    for (name, exp) in &gates {
        for n_bar in [100.0, 400.0, 1600.0] {
            let ratio = ratio_for_photons(exp.pulse_area(), n_bar)?;
            let markov = failure_probability(exp, ratio, &sweep_config())? * n_bar;
            let jc = jc_gate_error(exp.pulse_area(), exp.initial_state(), n_bar)? * n_bar;
            println!("{name:<14} {n_bar:>7} {markov:>12.5} {jc:>12.5} {:>8.3}", markov / jc);
        }
    }
    println!();
    println!("π pulse: 3π²/32 = {:.5} vs single-mode ≈ 0.62", 3.0 * PI * PI / 32.0);
    Ok(())
}
