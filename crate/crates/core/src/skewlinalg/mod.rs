//! Antisymmetric matrix algebra: Pfaffians, congruence identities, and
//! Fredholm determinants of 2x2-block kernels on quadrature panels.

mod fredholm;
mod pfaffian;
mod quad;

pub use fredholm::{fredholm_det_nystrom, fredholm_det_series, MatrixKernel, TAIL_TOL};
pub use pfaffian::{congruence_pfaffian_check, pfaffian, pfaffian_pairing_sum, SkewMatrix};
pub use quad::{gauss_legendre, QuadPanel};
