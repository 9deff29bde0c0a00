//! Kernel-side predictions the empirical statistics are tested against.

use crate::stats::flat_cell_window;
use flatpng::kernels::{f1_cdf, GoeKernel};
use flatpng::skewlinalg::{MatrixKernel, QuadPanel};
use flatpng::Result;

/// Gauss-Legendre integral of `f` over `[a, b]`, one 16-point panel per
/// unit length.
pub fn integrate(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let panel = QuadPanel::composite_gauss_legendre(a, b - a, ((b - a).ceil() as usize).max(1), 16)
        .expect("valid integration panel");
    panel.nodes.iter().zip(&panel.weights).map(|(&x, &w)| w * f(x)).sum()
}

/// `F1` as a fast-evaluating closure: linear interpolation on a
/// precomputed table over [-8, 6], clamped to {0, 1} outside.
pub fn f1_interpolator() -> Result<impl Fn(f64) -> f64> {
    const LO: f64 = -8.0;
    const STEP: f64 = 0.125;
    const N: usize = 112; // up to +6
    let vals: Vec<f64> = (0..=N).map(|k| f1_cdf(LO + k as f64 * STEP)).collect::<Result<_>>()?;
    Ok(move |s: f64| {
        if s <= LO {
            return 0.0;
        }
        if s >= LO + N as f64 * STEP {
            return 1.0;
        }
        let u = (s - LO) / STEP;
        let k = u.floor() as usize;
        let t = u - k as f64;
        vals[k] * (1.0 - t) + vals[k + 1] * t
    })
}

/// Predicted mean number of lines a hard window `[a, b]` counts at
/// horizon `t`: the limiting one-point density integrated over the
/// lattice cells the window covers.
pub fn cell_count_prediction(goe: &GoeKernel, t: f64, a: f64, b: f64) -> f64 {
    let (lo, hi) = flat_cell_window(t, a, b);
    integrate(lo, hi, |xi| goe.eval(xi, xi)[0][1])
}
