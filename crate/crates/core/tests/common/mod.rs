#![allow(dead_code)]

use num_complex::Complex64;
use qlaser::qcore::{ComplexMatrix, DensityMatrix};
use rand::Rng;

/// Uniform point in the Bloch ball mapped to a qubit density matrix.
pub fn random_rho<R: Rng>(rng: &mut R) -> DensityMatrix {
    let (x, y, z) = loop {
        let v: (f64, f64, f64) = (
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.0 * v.0 + v.1 * v.1 + v.2 * v.2 <= 1.0 {
            break v;
        }
    };
    bloch(x, y, z)
}

pub fn bloch(x: f64, y: f64, z: f64) -> DensityMatrix {
    // basis (|b⟩, |a⟩); z > 0 means excited
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

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
