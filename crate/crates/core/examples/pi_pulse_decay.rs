//! A π pulse with laser-mode decay, traced through time and compared
//! against the first-order closed form `p ≈ (3π/16)·κ/gα`.
//!
//! ```text
//! cargo run --release --example pi_pulse_decay
//! ```

use std::f64::consts::PI;

use qlaser::gates::{failure_probability, sweep_config, GateExperiment};
use qlaser::lindblad::{evolve, DecaySpec, IntegratorConfig, PulseSpec};
use qlaser::qcore::DensityMatrix;

fn main() -> Result<(), qlaser::Error> {
    let g_alpha = 1.0;
    let kappa = 0.05;
    let pulse = PulseSpec::pi(g_alpha)?;
    let decay = DecaySpec::laser(kappa)?;
    let config = IntegratorConfig::default().with_trajectory(10)?;
    let out = evolve(&DensityMatrix::ground(), &pulse, &decay, &config)?;

    println!("κ/gα = {kappa}, T = {:.4}", pulse.duration());
    println!("{:>8} {:>10} {:>10} {:>10}", "t", "rho_aa", "|rho_ab|", "purity");
    for s in out.trajectory.unwrap_or_default() {
        println!(
            "{:>8.4} {:>10.6} {:>10.6} {:>10.6}",
            s.time,
            s.rho.excited_population(),
            s.rho.get(0, 1).norm(),
            s.rho.purity()
        );
    }

    println!();
    println!("{:>10} {:>14} {:>14} {:>10}", "κ/gα", "p", "(3π/16)κ/gα", "rel diff");
    let exp = GateExperiment::pi_from_ground();
    for ratio in [1e-2, 1e-3, 1e-4, 1e-5] {
        let p = failure_probability(&exp, ratio, &sweep_config())?;
        let approx = 3.0 * PI / 16.0 * ratio;
        println!("{ratio:>10.0e} {p:>14.6e} {approx:>14.6e} {:>10.2e}", (p - approx).abs() / approx);
    }
    Ok(())
}
