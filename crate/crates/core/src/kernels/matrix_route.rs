//! Second, independent route to the finite-time kernel: assemble the
//! moment matrix `A = Phi^t S Phi` on a finite index window, apply the
//! closed-form inverse of `A` on the negative half-lattice, and form the
//! kernel blocks by matrix products. No Bessel functions anywhere; this
//! cross-checks the series route entry by entry.
//!
//! The assembly runs in double-double arithmetic: the products cancel by
//! a factor ~e^{4 T~}, which exhausts f64 already around T~ = 5.
//!
//! Convention note: the raw matrix products give the kernel of the line
//! ensemble in its original lattice coordinates. The series route (and
//! everything downstream of it) uses the same kernel with both arguments
//! shifted by one lattice unit and the bare parity-sign term of the
//! (2,2) block kept in unshifted coordinates; `eval` returns that
//! convention, verified to match the series route to full precision.

use super::dd::Dd;
use super::finite::parity_sign;
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Boundary influence above which the window is rejected.
pub const WINDOW_TOL: f64 = 1e-10;

/// Kernel via the moment-matrix inverse on the window
/// `[-4 T~ - pad, 4 T~ + pad]`.
///
/// `Phi_{x,i} = T~^{x-i} / (x-i)!` for `x >= i`, `S` the antisymmetric
/// parity-sign matrix, `A = Phi^t S Phi` restricted to non-positive
/// indices, and `B = A^{-1}` in closed form:
/// `B_{i,j} = C_{i+1,j} - C_{i,j+1}` with
/// `C_{i,j} = sum_{max(i,j) <= k <= 0} (-T~)^{k-i}/(k-i)! (-T~)^{k-j}/(k-j)!`.
#[derive(Debug, Clone)]
pub struct MatrixRouteState {
    ttilde: f64,
    lo: i64,
    hi: i64,
    identity_residual: f64,
    b: DMatrix<f64>,
    k11: DMatrix<f64>,
    k21: DMatrix<f64>,
    // (2,2) block without its bare parity-sign term
    m22: DMatrix<f64>,
}

impl MatrixRouteState {
    pub fn new(ttilde: f64) -> Result<Self> {
        Self::with_padding(ttilde, 50)
    }

    pub fn with_padding(ttilde: f64, pad: i64) -> Result<Self> {
        if !(ttilde > 0.0) || pad < 1 {
            return Err(Error::InvalidArgument(format!(
                "matrix route needs T~ > 0 and pad >= 1, got T~ = {ttilde}, pad = {pad}"
            )));
        }
        let half = (4.0 * ttilde).ceil() as i64 + pad;
        let (lo, hi) = (-half, half);
        let n = (hi - lo + 1) as usize;
        let m = (1 - lo) as usize; // non-positive indices
        let idx = |v: i64| (v - lo) as usize;
        let tt = Dd::from_f64(ttilde);

        // Phi_{x,i}: Poisson-type weights down each column
        let mut phi = vec![Dd::default(); n * n];
        for i in lo..=hi {
            let mut v = Dd::from_f64(1.0);
            let mut x = i;
            while x <= hi {
                phi[idx(x) * n + idx(i)] = v;
                x += 1;
                v = v.mul(tt).div_f64((x - i) as f64);
            }
        }

        let mut s = DMatrix::zeros(n, n);
        for x in lo..=hi {
            for y in lo..=hi {
                s[(idx(x), idx(y))] = parity_sign(x, y);
            }
        }

        // (S Phi)_{x,i}, then A = Phi^t (S Phi) on the non-positive block
        let mut sphi = vec![Dd::default(); n * n];
        for x in 0..n {
            for y in 0..n {
                let sv = s[(x, y)];
                if sv == 0.0 {
                    continue;
                }
                for i in 0..=y {
                    let p = phi[y * n + i];
                    if p.hi != 0.0 {
                        let t = if sv > 0.0 { p } else { p.neg() };
                        sphi[x * n + i] = sphi[x * n + i].add(t);
                    }
                }
            }
        }
        let mut a = vec![Dd::default(); m * m];
        for i in 0..m {
            for k in 0..m {
                let mut acc = Dd::default();
                for x in i..n {
                    let p = phi[x * n + i];
                    if p.hi != 0.0 {
                        acc = acc.add(p.mul(sphi[x * n + k]));
                    }
                }
                a[i * m + k] = acc;
            }
        }

        // closed-form inverse on the non-positive block
        let mut e = vec![Dd::default(); m];
        e[0] = Dd::from_f64(1.0);
        for d in 1..m {
            e[d] = e[d - 1].mul(tt).neg().div_f64(d as f64);
        }
        let c = |i: i64, j: i64| -> Dd {
            let mut acc = Dd::default();
            if i <= 0 && j <= 0 {
                for k in i.max(j)..=0 {
                    acc = acc.add(e[(k - i) as usize].mul(e[(k - j) as usize]));
                }
            }
            acc
        };
        let mut b = vec![Dd::default(); m * m];
        for i in lo..=0 {
            for j in lo..=0 {
                b[idx(i) * m + idx(j)] = c(i + 1, j).sub(c(i, j + 1));
            }
        }

        // inverse certificate away from the artificial window edge, where
        // the truncated long-range part of A cannot reach
        let margin = pad.min(-lo) as usize;
        let mut worst = 0.0f64;
        for i in margin..m {
            for j in margin..m {
                let mut acc = Dd::default();
                for k in 0..m {
                    acc = acc.add(a[i * m + k].mul(b[k * m + j]));
                }
                if i == j {
                    acc = acc.sub(Dd::from_f64(1.0));
                }
                worst = worst.max(acc.to_f64().abs());
            }
        }

        // P = Phi B Phi^t. The blocks that involve S must stay in
        // double-double end to end: entries of P grow like e^{2 T~} deep
        // in the window and the S-products cancel them back to O(1), so
        // forming S P in f64 leaves an error of order eps e^{4 T~}. Using
        // K21 = -(S Phi) B Phi^t and M22 = -(S Phi) B (S Phi)^t keeps the
        // cancellation inside the extended precision.
        let mut t1 = vec![Dd::default(); n * m];
        let mut t2 = vec![Dd::default(); n * m];
        for x in 0..n {
            for j in 0..m {
                let mut acc = Dd::default();
                for i in 0..=x.min(m - 1) {
                    let p = phi[x * n + i];
                    if p.hi != 0.0 {
                        acc = acc.add(p.mul(b[i * m + j]));
                    }
                }
                t1[x * m + j] = acc;
                let mut acc = Dd::default();
                for i in 0..m {
                    let p = sphi[x * n + i];
                    if p.hi != 0.0 {
                        acc = acc.add(p.mul(b[i * m + j]));
                    }
                }
                t2[x * m + j] = acc;
            }
        }
        let mut k11 = DMatrix::zeros(n, n);
        let mut k21 = DMatrix::zeros(n, n);
        let mut m22 = DMatrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                let mut p = Dd::default();
                let mut sp = Dd::default();
                for j in 0..=y.min(m - 1) {
                    let ph = phi[y * n + j];
                    if ph.hi != 0.0 {
                        p = p.add(t1[x * m + j].mul(ph));
                        sp = sp.add(t2[x * m + j].mul(ph));
                    }
                }
                let mut ss = Dd::default();
                for j in 0..m {
                    let ph = sphi[y * n + j];
                    if ph.hi != 0.0 {
                        ss = ss.add(t2[x * m + j].mul(ph));
                    }
                }
                k11[(x, y)] = -p.to_f64();
                k21[(x, y)] = -sp.to_f64();
                m22[(x, y)] = -ss.to_f64();
            }
        }
        let b_f64 = DMatrix::from_fn(m, m, |i, j| b[i * m + j].to_f64());

        Ok(Self { ttilde, lo, hi, identity_residual: worst, b: b_f64, k11, k21, m22 })
    }

    pub fn ttilde(&self) -> f64 {
        self.ttilde
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    fn idx(&self, v: i64) -> usize {
        (v - self.lo) as usize
    }

    /// Poisson-tail estimate of how much the window truncation can leak
    /// into an evaluation at `x`.
    fn boundary_influence(&self, x: i64) -> f64 {
        let d = (self.hi - x).min(x - self.lo);
        if d < 0 {
            return f64::INFINITY;
        }
        let tt = self.ttilde;
        // e^{T~} T~^d / d!  via logs to avoid overflow
        (tt + d as f64 * tt.ln() - crate::specfun::ln_factorial(d as u64)).exp()
    }

    /// Kernel block matrix at integer arguments, in the series-route
    /// convention. Errors with [`Error::WindowTooSmall`] when an argument
    /// sits close enough to the window boundary for the truncation to
    /// matter.
    pub fn eval(&self, x: i64, y: i64) -> Result<[[f64; 2]; 2]> {
        // internal lattice coordinates are shifted by one
        let (xs, ys) = (x + 1, y + 1);
        for &v in &[xs, ys] {
            let influence = self.boundary_influence(v);
            if influence > WINDOW_TOL {
                return Err(Error::WindowTooSmall(influence));
            }
        }
        let (i, j) = (self.idx(xs), self.idx(ys));
        let k11 = self.k11[(i, j)];
        let k21 = self.k21[(i, j)];
        let k12 = -self.k21[(j, i)];
        let k22 = self.m22[(i, j)] - parity_sign(x, y);
        Ok([[k11, k12], [k21, k22]])
    }

    /// Max deviation of `A B` from the identity on the non-positive part
    /// of the window (excluding the boundary margin, which the window
    /// truncation of the long-range part of `A` cannot represent); this
    /// is the closed-form-inverse certificate.
    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    /// Max `|B_{i,j} - B_{i-1,j-1}|` deep in the bulk (both indices in
    /// the middle half of the negative window), where the inverse is
    /// Toeplitz up to boundary corrections.
    pub fn toeplitz_deviation(&self) -> f64 {
        let (a, b) = (3 * self.lo / 4, self.lo / 4);
        let mut worst = 0.0f64;
        for i in a..=b {
            for j in a..=b {
                let d = (self.b[(self.idx(i), self.idx(j))]
                    - self.b[(self.idx(i - 1), self.idx(j - 1))])
                    .abs();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Max `|B_{i,j}|` over the anti-diagonal `|i - j| = d`.
    pub fn inverse_band_max(&self, d: i64) -> f64 {
        let mut worst = 0.0f64;
        for i in self.lo..=0 {
            for &j in &[i - d, i + d] {
                if j >= self.lo && j <= 0 {
                    worst = worst.max(self.b[(self.idx(i), self.idx(j))].abs());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::FinitePngKernel;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_form_inverse_certificate() {
        for &tt in &[2.0, 4.0, 8.0] {
            let st = MatrixRouteState::new(tt).unwrap();
            let r = st.identity_residual();
            assert!(r <= 1e-9, "T~ = {tt}: residual {r:e}");
        }
    }

    #[test]
    fn inverse_is_toeplitz_in_the_bulk() {
        let st = MatrixRouteState::new(4.0).unwrap();
        let d = st.toeplitz_deviation();
        assert!(d <= 1e-8, "bulk Toeplitz deviation {d:e}");
    }

    #[test]
    fn inverse_decays_away_from_the_diagonal() {
        let st = MatrixRouteState::new(4.0).unwrap();
        let near = st.inverse_band_max(0).max(st.inverse_band_max(1));
        // superexponential falloff once past the Poisson spread
        let mut prev = st.inverse_band_max(24);
        for d in 25..=40 {
            let cur = st.inverse_band_max(d);
            assert!(cur <= prev, "band {d} grew: {cur:e} > {prev:e}");
            prev = cur;
        }
        assert!(st.inverse_band_max(40) < 1e-12 * near);
    }

    #[test]
    fn window_boundary_is_rejected() {
        let st = MatrixRouteState::new(2.0).unwrap();
        let (lo, hi) = st.window();
        assert!(matches!(st.eval(hi, 0), Err(crate::Error::WindowTooSmall(_))));
        assert!(matches!(st.eval(0, lo + 1), Err(crate::Error::WindowTooSmall(_))));
        assert!(st.eval(0, 1).is_ok());
    }

    #[test]
    fn padding_does_not_move_the_kernel() {
        let a = MatrixRouteState::new(2.0).unwrap();
        let b = MatrixRouteState::with_padding(2.0, 80).unwrap();
        for &(x, y) in &[(0i64, 1i64), (3, 7), (-2, 5), (8, 8)] {
            let ka = a.eval(x, y).unwrap();
            let kb = b.eval(x, y).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    assert!((ka[r][c] - kb[r][c]).abs() <= 1e-8, "({x},{y})[{r}][{c}]");
                }
            }
        }
    }

    #[test]
    fn agrees_with_bessel_series_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &tt in &[2.0, 4.0, 8.0] {
            let st = MatrixRouteState::new(tt).unwrap();
            let series = FinitePngKernel::new(tt).unwrap();
            let span = (4.0 * tt) as i64;
            for _ in 0..20 {
                let x = rng.gen_range(0..=span);
                let y = rng.gen_range(0..=span);
                let km = st.eval(x, y).unwrap();
                let ks = series.eval(x, y);
                for r in 0..2 {
                    for c in 0..2 {
                        assert!(
                            (km[r][c] - ks[r][c]).abs() <= 1e-8,
                            "T~ = {tt} ({x},{y})[{r}][{c}]: {} vs {}",
                            km[r][c],
                            ks[r][c]
                        );
                    }
                }
            }
        }
    }
}
