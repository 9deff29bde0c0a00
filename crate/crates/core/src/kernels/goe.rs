//! The limiting 2x2 matrix kernel at the edge, built from Airy
//! functions, and the distribution of the largest point computed from it
//! as a Fredholm determinant.
//!
//! All four blocks reduce to integrals `int_0^infty dlambda Ai(xi1 +
//! lambda) (...)`; the (2,2) block is evaluated in the form whose
//! integrand decays (a single integral against `int_u^infty Ai`), which
//! is what the finite-time kernel converges to blockwise.

use crate::skewlinalg::{
    fredholm_det_nystrom, fredholm_det_series, pfaffian, MatrixKernel, QuadPanel, SkewMatrix,
};
use crate::skewlinalg::gauss_legendre;
use crate::specfun::{airy_ai, airy_ai_integral, airy_both};
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Default upper cutoff of the half-line Airy integrals. `Ai(40)` is
/// ~1e-115, far below any tolerance in play.
pub const DEFAULT_CUTOFF: f64 = 40.0;

/// Per-evaluation-point tables at the internal quadrature nodes.
struct PointTable {
    /// `Ai(xi)`
    ai0: f64,
    /// `int_xi^infty Ai`
    aint0: f64,
    /// `Ai(xi + lambda_k)`
    ai: Vec<f64>,
    /// `Ai'(xi + lambda_k)`
    aip: Vec<f64>,
    /// `int_{xi + lambda_k}^infty Ai`
    aint: Vec<f64>,
}

/// Limiting edge kernel. Construction fixes the internal quadrature; all
/// evaluations are pure.
#[derive(Debug, Clone)]
pub struct GoeKernel {
    lambda: QuadPanel,
}

impl GoeKernel {
    pub fn new() -> Self {
        Self::with_cutoff(DEFAULT_CUTOFF).expect("default cutoff is valid")
    }

    /// Kernel with a custom integral cutoff. Larger cutoffs are needed
    /// only deep in the left tail, where the integrands decay slowly.
    pub fn with_cutoff(cutoff: f64) -> Result<Self> {
        Self::build(cutoff, 12)
    }

    fn build(cutoff: f64, nodes_per_panel: usize) -> Result<Self> {
        if !(cutoff >= 10.0) {
            return Err(Error::InvalidArgument(format!(
                "Airy integral cutoff must be >= 10, got {cutoff}"
            )));
        }
        // panels of width ~2 resolve the Airy oscillation (wavelength
        // 2 pi / sqrt(|xi|)) for the argument ranges in use
        let panels = (cutoff / 2.0).ceil() as usize;
        let lambda = QuadPanel::composite_gauss_legendre(0.0, cutoff, panels, nodes_per_panel)?;
        Ok(Self { lambda })
    }

    /// Same cutoff with twice the nodes per panel, for resolution checks.
    pub fn doubled_resolution(&self) -> Self {
        Self { lambda: self.lambda.doubled() }
    }

    fn table(&self, xi: f64) -> PointTable {
        let nodes = &self.lambda.nodes;
        let n = nodes.len();
        let mut ai = Vec::with_capacity(n);
        let mut aip = Vec::with_capacity(n);
        for &l in nodes {
            let (a, ap) = airy_both(xi + l);
            ai.push(a);
            aip.push(ap);
        }
        // int_u^infty Ai at every node, walking down from the top where a
        // single direct evaluation seeds the recursion; the gaps between
        // consecutive nodes are < 1 so an 8-point rule is exact to
        // machine precision
        let (gx, gw) = gauss_legendre(8);
        let seg = |a: f64, b: f64| {
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            gx.iter().zip(&gw).map(|(&x, &w)| w * half * airy_ai(mid + half * x)).sum::<f64>()
        };
        let mut aint = vec![0.0; n];
        aint[n - 1] = airy_ai_integral(xi + nodes[n - 1]);
        for k in (0..n - 1).rev() {
            aint[k] = aint[k + 1] + seg(xi + nodes[k], xi + nodes[k + 1]);
        }
        let aint0 = aint[0] + seg(xi, xi + nodes[0]);
        PointTable { ai0: airy_ai(xi), aint0, ai, aip, aint }
    }

    fn g11_from(&self, a: &PointTable, b: &PointTable) -> f64 {
        let mut acc = 0.0;
        for (k, &w) in self.lambda.weights.iter().enumerate() {
            acc += w * (a.ai[k] * b.aip[k] - b.ai[k] * a.aip[k]);
        }
        acc
    }

    fn g12_from(&self, a: &PointTable, b: &PointTable) -> f64 {
        let mut acc = 0.0;
        for (k, &w) in self.lambda.weights.iter().enumerate() {
            acc += w * a.ai[k] * b.ai[k];
        }
        // int_0^infty Ai(xi2 - lambda) = 1 - int_{xi2}^infty Ai
        acc + 0.5 * a.ai0 * (1.0 - b.aint0)
    }

    fn g22_from(&self, a: &PointTable, b: &PointTable, sgn12: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &w) in self.lambda.weights.iter().enumerate() {
            acc += w * (a.ai[k] * b.aint[k] - b.ai[k] * a.aint[k]);
        }
        0.25 * acc - 0.25 * a.aint0 + 0.25 * b.aint0 - 0.25 * sgn12
    }

    fn block_from(&self, a: &PointTable, b: &PointTable, sgn12: f64) -> [[f64; 2]; 2] {
        let g12 = self.g12_from(a, b);
        let g21 = -self.g12_from(b, a);
        [[self.g11_from(a, b), g12], [g21, self.g22_from(a, b, sgn12)]]
    }
}

impl Default for GoeKernel {
    fn default() -> Self {
        Self::new()
    }
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl MatrixKernel for GoeKernel {
    fn eval(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let a = self.table(x);
        let b = self.table(y);
        self.block_from(&a, &b, sgn(x - y))
    }

    fn eval_grid(&self, points: &[f64]) -> Vec<Vec<[[f64; 2]; 2]>> {
        let tables: Vec<PointTable> = points.iter().map(|&x| self.table(x)).collect();
        points
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                points
                    .iter()
                    .enumerate()
                    .map(|(j, &y)| self.block_from(&tables[i], &tables[j], sgn(x - y)))
                    .collect()
            })
            .collect()
    }
}

/// `n`-point correlation function: the Pfaffian of the `2n x 2n`
/// antisymmetric assembly of kernel blocks at the given points.
pub fn rho_n(kernel: &dyn MatrixKernel, points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("rho_n needs at least one point".into()));
    }
    let n = points.len();
    let grid = kernel.eval_grid(points);
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let g = &grid[i][j];
            m[(2 * i, 2 * j)] = g[0][0];
            m[(2 * i, 2 * j + 1)] = g[0][1];
            m[(2 * i + 1, 2 * j)] = g[1][0];
            m[(2 * i + 1, 2 * j + 1)] = g[1][1];
        }
    }
    Ok(pfaffian(&SkewMatrix::new(m)?))
}

/// Quadrature panel on `(s, infinity)` truncated where the one-point
/// density is negligible: length `max(16, 13 - s)`, one sub-panel per 4
/// units, 12 nodes each (doubled lands on 24 for resolution checks).
pub fn f1_panel(s: f64) -> Result<QuadPanel> {
    let len = (13.0 - s).max(16.0);
    let panels = (len / 4.0).ceil() as usize;
    QuadPanel::composite_gauss_legendre(s, len, panels, 12)
}

/// CDF of the largest point: `F1(s) = sqrt(Det(1 - J^{-1} G))` on
/// `(s, infinity)`, by direct LU of the discretized operator.
pub fn f1_cdf(s: f64) -> Result<f64> {
    f1_cdf_with(&GoeKernel::new(), s)
}

/// `f1_cdf` against a caller-supplied kernel (custom cutoff/resolution).
pub fn f1_cdf_with(kernel: &GoeKernel, s: f64) -> Result<f64> {
    Ok(fredholm_det_nystrom(kernel, &f1_panel(s)?)?.sqrt())
}

/// `F1(s)` through the truncated Fredholm series (traces and Newton's
/// identities), independent of the LU route.
pub fn f1_cdf_series(s: f64, nmax: usize) -> Result<f64> {
    let det = fredholm_det_series(&GoeKernel::new(), &f1_panel(s)?, nmax)?;
    if det <= 0.0 {
        return Err(Error::NegativeDeterminant(det));
    }
    Ok(det.sqrt())
}

/// Residual of the completeness relation `int Ai(a) Ai(a + zeta) da =
/// delta(zeta)` tested against a Gaussian window of width `sigma`:
///
/// `iint da du Ai(a) Ai(u) w_sigma(u - a - zeta0) - w_sigma(zeta0)`
///
/// which must vanish for every `zeta0`. (This is the distributional
/// identity behind rewriting the sign kernel as a double Airy integral;
/// the unsmoothed double integral is only conditionally convergent, the
/// Gaussian damps the oscillatory left tail like `exp(-sigma^2 |a| / 2)`
/// and makes the quadrature absolutely convergent.)
pub fn sign_identity_residual(zeta0: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "window width must be positive, got {sigma}"
        )));
    }
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    let window = |z: f64| norm * (-0.5 * (z / sigma).powi(2)).exp();
    // outer a-range: amplitude |a|^{-1/4} times Gaussian frequency damping
    // exp(-sigma^2 |a| / 2) is < 1e-9 by a = -40 for sigma = 1
    let a_lo = -40.0 / sigma.powi(2).min(1.0);
    let outer = QuadPanel::composite_gauss_legendre(a_lo, 13.0 - a_lo, (13.0 - a_lo).ceil() as usize, 12)?;
    let mut total = 0.0;
    for (&a, &wa) in outer.nodes.iter().zip(&outer.weights) {
        // inner u-integral concentrated by the window around a + zeta0
        let c = a + zeta0;
        let lo = c - 8.0 * sigma;
        let hi = (c + 8.0 * sigma).min(13.0);
        if hi <= lo {
            continue;
        }
        let inner_panels = ((hi - lo).ceil() as usize).max(1);
        let inner = QuadPanel::composite_gauss_legendre(lo, hi - lo, inner_panels, 12)?;
        let mut h = 0.0;
        for (&u, &wu) in inner.nodes.iter().zip(&inner.weights) {
            h += wu * airy_ai(u) * window(u - c);
        }
        total += wa * airy_ai(a) * h;
    }
    Ok(total - window(zeta0))
}
