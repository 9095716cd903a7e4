//! Explicit Runge–Kutta integrators: classic fixed-step RK4 and the
//! Dormand–Prince 5(4) embedded pair with step-size control.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Vector-space state the integrators can advance.
pub trait OdeState: Clone {
    /// `self += a·x`
    fn axpy(&mut self, a: f64, x: &Self);

    /// Largest component of `|err| / (atol + rtol·max(|y0|, |y1|))`.
    fn error_ratio(err: &Self, y0: &Self, y1: &Self, rtol: f64, atol: f64) -> f64;
}

impl OdeState for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }

    fn error_ratio(err: &Self, y0: &Self, y1: &Self, rtol: f64, atol: f64) -> f64 {
        err.abs() / (atol + rtol * y0.abs().max(y1.abs()))
    }
}

impl OdeState for Matrix2<Complex64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x.iter()) {
            *s += v * a;
        }
    }

    fn error_ratio(err: &Self, y0: &Self, y1: &Self, rtol: f64, atol: f64) -> f64 {
        err.iter()
            .zip(y0.iter().zip(y1.iter()))
            .map(|(e, (a, b))| e.norm() / (atol + rtol * a.norm().max(b.norm())))
            .fold(0.0, f64::max)
    }
}

/// Advances `y` from `t0` to `t1` in `steps` equal RK4 steps.
pub fn rk4<S, F>(f: &F, y: &mut S, t0: f64, t1: f64, steps: usize)
where
    S: OdeState,
    F: Fn(f64, &S) -> S,
{
    if steps == 0 {
        return;
    }
    let h = (t1 - t0) / steps as f64;
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let k1 = f(t, y);
        let mut tmp = y.clone();
        tmp.axpy(0.5 * h, &k1);
        let k2 = f(t + 0.5 * h, &tmp);
        let mut tmp = y.clone();
        tmp.axpy(0.5 * h, &k2);
        let k3 = f(t + 0.5 * h, &tmp);
        let mut tmp = y.clone();
        tmp.axpy(h, &k3);
        let k4 = f(t + h, &tmp);
        y.axpy(h / 6.0, &k1);
        y.axpy(h / 3.0, &k2);
        y.axpy(h / 3.0, &k3);
        y.axpy(h / 6.0, &k4);
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights equal the last row of A (FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Step-size controller settings for [`dopri45`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Failure threshold on the step size, absolute.
    pub min_step: f64,
    pub max_step: f64,
    /// Initial trial step; carried over between calls by [`AdaptiveStats`].
    pub initial_step: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AdaptiveStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Step size the controller proposes next.
    pub next_step: f64,
}

/// Advances `y` from `t0` to `t1` with error control, landing exactly on `t1`.
pub fn dopri45<S, F>(
    f: &F,
    y: &mut S,
    t0: f64,
    t1: f64,
    opts: &AdaptiveOptions,
) -> Result<AdaptiveStats>
where
    S: OdeState,
    F: Fn(f64, &S) -> S,
{
    const SAFETY: f64 = 0.9;
    const MIN_FACTOR: f64 = 0.2;
    const MAX_FACTOR: f64 = 5.0;

    let mut stats = AdaptiveStats::default();
    let mut t = t0;
    let mut h = opts.initial_step.min(opts.max_step).min(t1 - t0);
    if t1 <= t0 {
        stats.next_step = opts.initial_step;
        return Ok(stats);
    }
    let mut k: Vec<S> = Vec::with_capacity(7);
    let mut k1 = f(t, y);

    while t < t1 {
        let last = t + h >= t1;
        let h_eff = if last { t1 - t } else { h };

        k.clear();
        k.push(k1.clone());
        for stage in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = A[stage][j];
                if a != 0.0 {
                    ys.axpy(h_eff * a, kj);
                }
            }
            k.push(f(t + C[stage] * h_eff, &ys));
        }

        let mut y5 = y.clone();
        // zero of the state space
        let mut err = y.clone();
        err.axpy(-1.0, y);
        for (i, ki) in k.iter().enumerate() {
            if B5[i] != 0.0 {
                y5.axpy(h_eff * B5[i], ki);
            }
            let e = B5[i] - B4[i];
            if e != 0.0 {
                err.axpy(h_eff * e, ki);
            }
        }
        let ratio = S::error_ratio(&err, y, &y5, opts.rtol, opts.atol);

        let factor = if !ratio.is_finite() {
            MIN_FACTOR
        } else if ratio == 0.0 {
            MAX_FACTOR
        } else {
            (SAFETY * ratio.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
        };

        if ratio <= 1.0 {
            t = if last { t1 } else { t + h_eff };
            *y = y5;
            k1 = k.pop().expect("seven stages");
            stats.accepted += 1;
            // keep the controller's proposal when the final step was clipped
            if !last || h_eff >= h {
                h = (h_eff * factor).min(opts.max_step);
            }
        } else {
            stats.rejected += 1;
            h = h_eff * factor;
            if h < opts.min_step {
                return Err(Error::IntegrationFailure {
                    last_good_time: t,
                    step: h,
                });
            }
        }
    }
    stats.next_step = h;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decay(_t: f64, y: &f64) -> f64 {
        -y
    }

    #[test]
    fn rk4_exponential_decay() {
        let mut y = 1.0;
        rk4(&decay, &mut y, 0.0, 1.0, 200);
        assert!((y - (-1.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let exact = (-2.0f64).exp();
        let err = |n| {
            let mut y = 1.0;
            rk4(&decay, &mut y, 0.0, 2.0, n);
            (y - exact).abs()
        };
        let factor = err(20) / err(40);
        assert!((14.0..18.0).contains(&factor), "factor {factor}");
    }

    #[test]
    fn dopri_meets_tolerance() {
        let opts = AdaptiveOptions {
            rtol: 1e-10,
            atol: 1e-12,
            min_step: 1e-14,
            max_step: 1.0,
            initial_step: 1e-3,
        };
        let mut y = 1.0;
        let stats = dopri45(&decay, &mut y, 0.0, 5.0, &opts).unwrap();
        assert!((y - (-5.0f64).exp()).abs() < 1e-11);
        assert!(stats.accepted > 0);
    }

    #[test]
    fn dopri_oscillator_matrix_state() {
        // y' = -i y, y(0) = 1 in every entry
        let f = |_t: f64, y: &Matrix2<Complex64>| y * Complex64::new(0.0, -1.0);
        let mut y = Matrix2::from_element(Complex64::new(1.0, 0.0));
        let opts = AdaptiveOptions {
            rtol: 1e-11,
            atol: 1e-13,
            min_step: 1e-14,
            max_step: 0.5,
            initial_step: 0.01,
        };
        dopri45(&f, &mut y, 0.0, 3.0, &opts).unwrap();
        let expected = Complex64::new(0.0, -3.0).exp();
        for z in y.iter() {
            assert!((z - expected).norm() < 1e-9);
        }
    }

    #[test]
    fn dopri_reports_step_underflow() {
        // finite-time blow-up at t = 1
        let f = |_t: f64, y: &f64| y * y;
        let opts = AdaptiveOptions {
            rtol: 1e-10,
            atol: 1e-12,
            min_step: 1e-9,
            max_step: 0.1,
            initial_step: 1e-3,
        };
        let mut y = 1.0;
        match dopri45(&f, &mut y, 0.0, 2.0, &opts) {
            Err(Error::IntegrationFailure { last_good_time, .. }) => {
                assert!(last_good_time < 1.0 && last_good_time > 0.9)
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
