//! Fredholm determinants of 2x2-block matrix kernels discretized on
//! quadrature panels.

use super::QuadPanel;
use crate::{Error, Result};
use nalgebra::DMatrix;

/// A 2x2-block antisymmetric matrix kernel `G`, evaluable at real
/// argument pairs. The Pfaffian antisymmetry contract is
/// `G(x, y) = -G(y, x)^t` blockwise.
pub trait MatrixKernel: Sync {
    /// `[[G11, G12], [G21, G22]](x, y)`.
    fn eval(&self, x: f64, y: f64) -> [[f64; 2]; 2];

    /// Bulk evaluation at all pairs of the given points. The default just
    /// loops; implementations with shared precomputations override this.
    fn eval_grid(&self, points: &[f64]) -> Vec<Vec<[[f64; 2]; 2]>> {
        points
            .iter()
            .map(|&x| points.iter().map(|&y| self.eval(x, y)).collect())
            .collect()
    }
}

/// Weight-symmetrized discretization of `J^{-1} G` on the panel:
/// entry `(2i+a, 2j+b) = sqrt(w_i w_j) [J^{-1} G(x_i, x_j)]_{a,b}`
/// with `J^{-1} = [[0, -1], [1, 0]]`.
fn discretize(kernel: &dyn MatrixKernel, panel: &QuadPanel) -> DMatrix<f64> {
    let m = panel.node_count();
    let grid = kernel.eval_grid(&panel.nodes);
    let sqrt_w: Vec<f64> = panel.weights.iter().map(|w| w.sqrt()).collect();
    let mut out = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let g = &grid[i][j];
            let s = sqrt_w[i] * sqrt_w[j];
            // J^{-1} G swaps the block rows with a sign
            out[(2 * i, 2 * j)] = -s * g[1][0];
            out[(2 * i, 2 * j + 1)] = -s * g[1][1];
            out[(2 * i + 1, 2 * j)] = s * g[0][0];
            out[(2 * i + 1, 2 * j + 1)] = s * g[0][1];
        }
    }
    out
}

fn check_tail(kernel: &dyn MatrixKernel, panel: &QuadPanel, tol: f64) -> Result<()> {
    // The one-point density at the far end of the panel bounds what the
    // truncation discards.
    let b = panel.end();
    let g = kernel.eval(b, b);
    let tail = g[0][1].abs();
    if tail > tol {
        return Err(Error::PanelTooShort { tail, tol });
    }
    Ok(())
}

/// Tail-density tolerance for accepting a panel truncation.
pub const TAIL_TOL: f64 = 1e-10;

/// `Det(1 - J^{-1} G)` on the panel by direct LU of the discretized
/// operator. Errors if the panel is too short or the determinant is not
/// positive (a discretization failure ahead of any square root).
pub fn fredholm_det_nystrom(kernel: &dyn MatrixKernel, panel: &QuadPanel) -> Result<f64> {
    check_tail(kernel, panel, TAIL_TOL)?;
    let k = discretize(kernel, panel);
    let n = k.nrows();
    let mut d = -k;
    for i in 0..n {
        d[(i, i)] += 1.0;
    }
    let det = d.lu().determinant();
    if det <= 0.0 {
        return Err(Error::NegativeDeterminant(det));
    }
    Ok(det)
}

/// The Fredholm series truncated at `nmax`:
/// `sum_{n<=nmax} (-1)^n / n! * (quadrature multiple integrals)`.
///
/// Each multiple-integral term equals the elementary symmetric function
/// `e_n` of the discretized operator, so the truncated series is computed
/// from traces of matrix powers via Newton's identities. This route never
/// factorizes the matrix and is independent of the LU path above.
pub fn fredholm_det_series(
    kernel: &dyn MatrixKernel,
    panel: &QuadPanel,
    nmax: usize,
) -> Result<f64> {
    if nmax == 0 {
        return Err(Error::InvalidArgument("fredholm series needs nmax >= 1".into()));
    }
    check_tail(kernel, panel, TAIL_TOL)?;
    let k = discretize(kernel, panel);
    let n = k.nrows();

    // power sums p_j = tr(K^j)
    let mut powers = Vec::with_capacity(nmax);
    let mut current = k.clone();
    for _ in 0..nmax {
        powers.push(current.trace());
        current = &current * &k;
    }

    // Newton: n e_n = sum_{j=1..n} (-1)^{j-1} e_{n-j} p_j
    let mut e = vec![0.0f64; nmax + 1];
    e[0] = 1.0;
    for m in 1..=nmax {
        let mut acc = 0.0;
        for j in 1..=m {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[m - j] * powers[j - 1];
        }
        e[m] = acc / m as f64;
        if m >= 2 && m > nmax / 2 && e[m].abs() > e[m - 1].abs() && e[m].abs() > 1e-6 {
            return Err(Error::SeriesDivergence {
                n: m,
                magnitude: e[m].abs(),
            });
        }
    }

    let mut det = 0.0;
    for (m, &em) in e.iter().enumerate().take(nmax + 1) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * em;
    }
    let _ = n;
    Ok(det)
}
