//! Correlation kernels: the exact finite-time Pfaffian kernel (series
//! and matrix routes), its edge rescaling, and the limiting kernel built
//! from Airy functions.

mod dd;
mod edge;
mod finite;
mod goe;
mod matrix_route;

pub use edge::{omega0, omega1, omega2, EdgeKernel};
pub use goe::{
    f1_cdf, f1_cdf_series, f1_cdf_with, f1_panel, rho_n, sign_identity_residual, GoeKernel,
    DEFAULT_CUTOFF,
};
pub use finite::{parity_sign, FinitePngKernel};
pub use matrix_route::{MatrixRouteState, WINDOW_TOL};
