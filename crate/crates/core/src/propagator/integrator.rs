// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Dormand–Prince 5(4) integrator for complex linear ODEs.
//!
//! Shares nothing with the exponential backend, so the two can be used to
//! check each other.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

type State = DVector<Complex64>;

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

/// Fifth-order weights (identical to the last row of `A`).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Embedded fourth-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: usize = 20_000_000;

#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerances {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol }
    }
}

/// Integrates `dy/dt = f(t, y)` from `t0` to `t1`, returning `y(t1)`.
pub fn integrate<F>(f: F, t0: f64, t1: f64, y0: &State, tol: Tolerances) -> Result<State>
where
    F: FnMut(f64, &State) -> State,
{
    let mut out = integrate_at(f, t0, &[t1], y0, tol)?;
    Ok(out.pop().expect("one output time"))
}

/// Integrates through the increasing `times` (all `>= t0`), returning the
/// state at each.
pub fn integrate_at<F>(
    mut f: F,
    t0: f64,
    times: &[f64],
    y0: &State,
    tol: Tolerances,
) -> Result<Vec<State>>
where
    F: FnMut(f64, &State) -> State,
{
    let mut y = y0.clone();
    let mut t = t0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&y, &k1, times.last().map_or(0.0, |&e| e - t0), tol);
    let mut out = Vec::with_capacity(times.len());
    let mut steps = 0usize;

    for &target in times {
        if target < t {
            return Err(Error::invalid("times", "output times must be increasing"));
        }
        while t < target {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::AccuracyNotReached {
                    estimate: f64::INFINITY,
                    tolerance: tol.rtol,
                });
            }
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };

            let mut k: [State; 7] = std::array::from_fn(|_| State::zeros(y.len()));
            k[0] = k1.clone();
            for s in 1..7 {
                let mut ys = y.clone();
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        ys.axpy(Complex64::from(step * a), kj, Complex64::from(1.0));
                    }
                }
                k[s] = f(t + C[s] * step, &ys);
            }

            let mut y5 = y.clone();
            let mut err = State::zeros(y.len());
            for s in 0..7 {
                if B5[s] != 0.0 {
                    y5.axpy(Complex64::from(step * B5[s]), &k[s], Complex64::from(1.0));
                }
                let e = B5[s] - B4[s];
                if e != 0.0 {
                    err.axpy(Complex64::from(step * e), &k[s], Complex64::from(1.0));
                }
            }

            let mut acc = 0.0;
            for i in 0..y.len() {
                let scale = tol.atol + tol.rtol * y[i].norm().max(y5[i].norm());
                acc += (err[i].norm() / scale).powi(2);
            }
            let err_norm = (acc / y.len().max(1) as f64).sqrt();
            if !err_norm.is_finite() {
                return Err(Error::NonFinite("integrator error estimate".into()));
            }

            if err_norm <= 1.0 {
                t = if last { target } else { t + step };
                y = y5;
                // FSAL: the seventh stage is f at the accepted point.
                k1 = std::mem::replace(&mut k[6], State::zeros(0));
                let grow = if err_norm == 0.0 {
                    5.0
                } else {
                    (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                if !last {
                    h = step * grow;
                } else {
                    h = h.max(step * grow).min(h * 5.0);
                }
            } else {
                h = step * (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9);
                if h <= f64::EPSILON * t.abs().max(1.0) {
                    return Err(Error::AccuracyNotReached {
                        estimate: err_norm,
                        tolerance: tol.rtol,
                    });
                }
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn initial_step(y: &State, dy: &State, span: f64, tol: Tolerances) -> f64 {
    let d0 = y.norm();
    let d1 = dy.norm();
    let h = if d0 < 1e-10 || d1 < 1e-10 {
        1e-6
    } else {
        0.01 * d0 / d1 * tol.rtol.powf(0.2) * 10.0
    };
    if span > 0.0 {
        h.min(span)
    } else {
        h
    }
}
