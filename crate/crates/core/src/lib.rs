//! Numerics for the flat polynuclear growth (PNG) model and its GOE edge limit.
//!
//! The crate is organised in four layers:
//!
//! * [`specfun`] — Bessel `J_n`, Airy `Ai`/`Ai'` and the asymptotic bounds
//!   relating them at large order.
//! * [`skewlinalg`] — Pfaffians of antisymmetric matrices and Fredholm
//!   determinants of 2x2-block matrix kernels on quadrature panels.
//! * [`png_sim`] — Poisson nucleation sampling, the light-cone graphical
//!   construction, the RSK multilayer line ensemble and its edge rescaling.
//! * [`kernels`] — the exact finite-time Pfaffian kernel (Bessel-sum and
//!   matrix-algebra routes), its edge scaling, the limiting GOE kernel,
//!   correlation functions and the Tracy–Widom `F1` distribution.

pub mod error;
pub mod kernels;
pub mod png_sim;
pub mod skewlinalg;
pub mod specfun;

pub use error::{Error, Result};
