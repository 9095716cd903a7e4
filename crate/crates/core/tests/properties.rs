mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qlaser::budget::{self, AtomModel, BeamGeometry, FieldSpec, PhotonBudget, RateBudget};
use qlaser::gates::{failure_probability, sweep_config, GateExperiment};
use qlaser::jc::{jc_gate_error_with_field, minimum_truncation, CoherentField};
use qlaser::lindblad::{evolve, lindblad_rhs, DecaySpec, IntegratorConfig, PulseSpec};
use qlaser::qcore::{hermitian_eigen, min_eigenvalue, ComplexMatrix, DensityMatrix, PureState};

use common::{bloch, rel};

fn bloch_rho() -> impl Strategy<Value = DensityMatrix> {
    (0.0..=1.0f64, 0.0..PI, 0.0..2.0 * PI).prop_map(|(r, th, ph)| {
        bloch(r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos())
    })
}

fn pulse() -> impl Strategy<Value = PulseSpec> {
    (0.1..10.0f64, 0.01..2.0 * PI).prop_map(|(g, th)| PulseSpec::new(g, th).unwrap())
}

fn adaptive(samples: usize) -> IntegratorConfig {
    IntegratorConfig::adaptive(1e-9).unwrap().with_trajectory(samples).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trajectories_stay_physical(rho0 in bloch_rho(), p in pulse(), k in 0.0..3.0f64) {
        let decay = DecaySpec::laser(k * p.drive_coupling()).unwrap();
        let out = evolve(&rho0, &p, &decay, &adaptive(8)).unwrap();
        for s in out.trajectory.unwrap() {
            let m = s.rho.matrix();
            prop_assert!((m.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-9);
            prop_assert!(m.hermitian_deviation() <= 1e-9);
            prop_assert!(min_eigenvalue(m).unwrap() >= -1e-8);
        }
    }

    #[test]
    fn evolution_is_linear_in_rho(a in bloch_rho(), b in bloch_rho(), p in pulse(), k in 0.0..2.0f64) {
        let decay = DecaySpec::laser(k * p.drive_coupling()).unwrap();
        let cfg = IntegratorConfig::rk4(400).unwrap();
        let ea = evolve(&a, &p, &decay, &cfg).unwrap().final_state;
        let eb = evolve(&b, &p, &decay, &cfg).unwrap().final_state;
        for w in [0.25, 0.5, 0.75] {
            let mixed = DensityMatrix::mix(w, &a, &b).unwrap();
            let lhs = evolve(&mixed, &p, &decay, &cfg).unwrap().final_state;
            let rhs = DensityMatrix::mix(w, &ea, &eb).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn purity_conserved_without_decay(rho0 in bloch_rho(), p in pulse()) {
        let out = evolve(&rho0, &p, &DecaySpec::none(), &IntegratorConfig::default()).unwrap();
        prop_assert!((out.final_state.purity() - rho0.purity()).abs() <= 1e-8);
    }

    #[test]
    fn rhs_is_traceless_and_hermitian(rho in bloch_rho(), p in pulse(), k in 0.0..5.0f64) {
        let d = lindblad_rhs(&rho, &p, &DecaySpec::laser(k).unwrap()).unwrap();
        let scale = 1.0 + p.drive_coupling() + k;
        prop_assert!(d.trace().norm() <= 1e-14 * scale);
        prop_assert!((d - d.adjoint()).norm() <= 1e-14 * scale);
    }

    #[test]
    fn eigen_reconstructs_hermitian(
        a in -5.0..5.0f64, d in -5.0..5.0f64, re in -5.0..5.0f64, im in -5.0..5.0f64
    ) {
        let h = ComplexMatrix::from_row_major(2, &[
            Complex64::new(a, 0.0), Complex64::new(re, -im),
            Complex64::new(re, im), Complex64::new(d, 0.0),
        ]).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-9);
        prop_assert!(eig.values[0] <= eig.values[1]);
        prop_assert!((min_eigenvalue(&h).unwrap() - eig.values[0]).abs() <= 1e-9);
    }

    #[test]
    fn photon_ratio_is_area_over_cross_section(
        lambda in 2e-7..2e-6f64, d in 1e-31..1e-28f64, e0 in 1.0..1e6f64, area_scale in 0.01..1e4f64
    ) {
        let atom = AtomModel::resonant_with(lambda, d).unwrap();
        let field = FieldSpec::new(e0).unwrap();
        let sigma = budget::sigma_eff(lambda);
        let beam = BeamGeometry::new(lambda, sigma * area_scale).unwrap();
        let t = field.pi_pulse_duration(&atom);
        let pb = PhotonBudget::new(&atom, &field, &beam, t).unwrap();
        prop_assert!(rel(pb.n_bar / pb.n_bar_prime, area_scale) <= 1e-12);
    }

    #[test]
    fn budget_is_invariant_under_time_rescaling(
        gamma in 1e5..1e8f64, kappa in 1e-2..1e5f64, rabi in 1e6..1e10f64,
        t in 1e-9..1e-5f64, s in 1e-6..1e6f64
    ) {
        let base = RateBudget { gamma, kappa, rabi, duration: t };
        let scaled = base.rescale_time(s);
        prop_assert!(rel(scaled.n_bar().unwrap(), base.n_bar().unwrap()) <= 1e-12);
        prop_assert!(rel(scaled.n_bar_prime().unwrap(), base.n_bar_prime().unwrap()) <= 1e-12);
        prop_assert!(rel(scaled.a1_margin(1e-3).unwrap(), base.a1_margin(1e-3).unwrap()) <= 1e-12);
        prop_assert!(rel(scaled.a2_margin(1e-3).unwrap(), base.a2_margin(1e-3).unwrap()) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn failure_grows_with_decay(lo in 1e-5..1e-2f64, factor in 1.01..10.0f64) {
        let exp = GateExperiment::pi_from_ground();
        let cfg = sweep_config();
        let p1 = failure_probability(&exp, lo, &cfg).unwrap();
        let p2 = failure_probability(&exp, lo * factor, &cfg).unwrap();
        prop_assert!(p2 > p1);
    }

    #[test]
    fn jc_error_insensitive_to_truncation(n_bar in 25.0..2000.0f64, theta in 0.1..2.0 * PI) {
        let n_max = minimum_truncation(n_bar);
        let base = CoherentField::with_truncation(n_bar, n_max).unwrap();
        let wide = CoherentField::with_truncation(n_bar, 2 * n_max).unwrap();
        let atom = PureState::ground();
        let p1 = jc_gate_error_with_field(theta, &atom, &base).unwrap();
        let p2 = jc_gate_error_with_field(theta, &atom, &wide).unwrap();
        prop_assert!((p1 - p2).abs() <= 1e-10 * p1.max(1e-12) + 1e-15, "p1={p1} p2={p2}");
    }
}
