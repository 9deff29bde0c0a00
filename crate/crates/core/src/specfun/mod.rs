//! Special functions: Bessel `J_n`, Airy `Ai`/`Ai'`, and the asymptotic
//! relations between them at large order.

mod airy;
mod bessel;

pub use airy::{airy_ai, airy_ai_integral, airy_ai_left_tail, airy_ai_prime, airy_both};
pub use bessel::{bessel_j, bessel_j_array, ln_factorial, MAX_ORDER};

use crate::{Error, Result};

/// Tolerances and switch-over constants, gathered in one place so the
/// acceptance tests reference a single source of truth.
pub mod tol {
    /// Relative accuracy of `bessel_j` for |n| <= 1e4, z <= 1e4.
    pub const BESSEL_REL: f64 = 1e-12;
    /// Absolute accuracy of `airy_ai` on [-15, 40].
    pub const AIRY_ABS: f64 = 1e-12;
    /// Bound on each Bessel identity residual.
    pub const IDENTITY_RESIDUAL: f64 = 1e-11;
    /// Tail estimate below which an identity cutoff is accepted.
    pub const IDENTITY_TAIL: f64 = 1e-14;
    /// Landau's constant: |J_n(x)| <= C x^{-1/3} for every integer n.
    pub const LANDAU_C: f64 = 0.785;
    /// Smallest T at which the large-order decay envelopes are asserted.
    pub const ENVELOPE_T0: f64 = 50.0;
}

/// `|T^{1/3} J_{[2T + xi T^{1/3}]}(2T) - Ai(xi)|` with `[.]` the nearest
/// integer (rounding halves the index offset versus truncation, which is
/// what makes the gap decrease monotonically on coarse T-grids).
///
/// The order index is clamped at zero when `xi` is so negative that
/// `2T + xi T^{1/3}` drops below it.
pub fn bessel_airy_limit_gap(t: f64, xi: f64) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bessel_airy_limit_gap requires T >= 1, got {t}"
        )));
    }
    let order = (2.0 * t + xi * t.cbrt()).round().max(0.0) as i64;
    let j = bessel_j(order, 2.0 * t)?;
    Ok((t.cbrt() * j - airy_ai(xi)).abs())
}

/// Landau's uniform bound `|J_n(x)| <= 0.785 x^{-1/3}`, `x > 0`.
pub fn landau_bound_check(n: i64, x: f64) -> Result<bool> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "landau_bound_check requires x > 0, got {x}"
        )));
    }
    Ok(bessel_j(n, x)?.abs() <= tol::LANDAU_C * x.powf(-1.0 / 3.0))
}

/// Residuals of the classical Bessel identities
/// `J_0 + 2 sum J_{2k} = 1`, `J_0^2 + 2 sum J_k^2 = 1`, and the
/// cross-sum identity for n in {1, 2, 3}, truncated at order `cutoff`.
///
/// Returns five residuals in that order. Errors if the cutoff is too
/// small for the truncated tails to be negligible.
pub fn bessel_identity_residuals(z: f64, cutoff: usize) -> Result<Vec<f64>> {
    if z < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bessel_identity_residuals requires z >= 0, got {z}"
        )));
    }
    // Beyond 2T + N T^{1/3} the terms decay like exp(-N/2); demand a tail
    // estimate below IDENTITY_TAIL.
    let needed = z + (2.0 * (1.0 / tol::IDENTITY_TAIL).ln()) * (z / 2.0).cbrt().max(1.0) + 10.0;
    if (cutoff as f64) < needed {
        return Err(Error::CutoffTooSmall {
            tail: (-((cutoff as f64 - z).max(0.0) / (z / 2.0).cbrt().max(1.0)) / 2.0).exp(),
            tol: tol::IDENTITY_TAIL,
        });
    }
    let ext = cutoff + 2 * 3; // cross-sum identity shifts indices by up to 2n = 6
    let j = bessel_j_array(ext, z)?;

    let mut even_sum = 0.0;
    let mut sq_sum = 0.0;
    for k in 1..=cutoff {
        if k % 2 == 0 {
            even_sum += j[k];
        }
        sq_sum += j[k] * j[k];
    }
    let mut residuals = vec![j[0] + 2.0 * even_sum - 1.0, j[0] * j[0] + 2.0 * sq_sum - 1.0];

    for n in 1..=3usize {
        let mut alt = 0.0;
        for k in 0..=2 * n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            alt += sign * j[k] * j[2 * n - k];
        }
        let mut cross = 0.0;
        for k in 1..=cutoff {
            cross += j[k] * j[2 * n + k];
        }
        residuals.push(alt + 2.0 * cross);
    }
    Ok(residuals)
}

/// `|T^{1/3} J_{[2T + N T^{1/3}]}(2T)|` — the quantity bounded by the
/// large-order decay envelope `C exp(-N/2)` for `N >= 0`.
pub fn scaled_bessel_at_offset(t: f64, n_offset: f64) -> Result<f64> {
    let order = (2.0 * t + n_offset * t.cbrt()).floor().max(0.0) as i64;
    Ok((t.cbrt() * bessel_j(order, 2.0 * t)?).abs())
}

/// `|T^{2/3} (J_{[2T + N T^{1/3}] + 1}(2T) - J_{[2T + N T^{1/3}]}(2T))|` —
/// the discrete derivative bounded by `C exp(-N/2)` for `N >= 0` and by
/// `C (1 + |N|)` for `N <= 0`.
pub fn scaled_bessel_difference(t: f64, n_offset: f64) -> Result<f64> {
    let order = (2.0 * t + n_offset * t.cbrt()).floor().max(0.0) as i64;
    let a = bessel_j(order + 1, 2.0 * t)?;
    let b = bessel_j(order, 2.0 * t)?;
    Ok((t.cbrt().powi(2) * (a - b)).abs())
}
