//! Sweep-fit the first-order error coefficients of the π and π/2 gates.
//!
//! ```text
//! cargo run --release --example gate_coefficients
//! ```

use qlaser::gates::{default_ratios, extract_coefficient, sweep_config, GateExperiment};

fn main() -> Result<(), qlaser::Error> {
    let ratios = default_ratios();
    let config = sweep_config();
    let gates = [
        ("pi      from |b>", GateExperiment::pi_from_ground()),
        ("pi/2    from |b>", GateExperiment::half_pi_from_ground()),
        ("pi/2    from |a>", GateExperiment::half_pi_from_excited()),
    ];

    println!("{:<18} {:>12} {:>12} {:>12}", "gate", "c", "c'", "residual");
    for (name, gate) in &gates {
        let sweep = extract_coefficient(gate, &ratios, &config)?;
        let c = sweep.coefficient;
        println!(
            "{:<18} {:>12.6} {:>12.6} {:>12.3e}{}",
            name,
            c.coefficient_vs_ratio,
            c.coefficient_vs_photons,
            c.fit_residual,
            if c.degraded { "  (degraded fit)" } else { "" }
        );
    }
    println!();
    println!("p = c·(κ/gα) = c'/n̄ with c' = c·θ/2; for the π pulse c' = 3π²/32 = {:.6}",
        qlaser::budget::PI_PULSE_PHOTON_COEFFICIENT);
    Ok(())
}
