//! Gauss–Legendre rules and quadrature panels on a half-line interval.

use crate::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; machine precision for the
/// orders used here (n <= ~200).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature nodes/weights on the interval `(s, s + len]`, used to
/// discretize Fredholm determinants.
#[derive(Debug, Clone)]
pub struct QuadPanel {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub s: f64,
    pub len: f64,
    panels: usize,
}

impl QuadPanel {
    /// Single Gauss–Legendre rule mapped onto `(s, s + len]`.
    pub fn gauss_legendre(s: f64, len: f64, m: usize) -> Result<Self> {
        Self::composite_gauss_legendre(s, len, 1, m)
    }

    /// `panels` consecutive Gauss–Legendre rules of `m` points each.
    pub fn composite_gauss_legendre(s: f64, len: f64, panels: usize, m: usize) -> Result<Self> {
        if !(len > 0.0) || panels == 0 || m == 0 {
            return Err(Error::InvalidArgument(
                "quadrature panel needs len > 0, panels >= 1, m >= 1".into(),
            ));
        }
        let (xs, ws) = gauss_legendre(m);
        let h = len / panels as f64;
        let mut nodes = Vec::with_capacity(panels * m);
        let mut weights = Vec::with_capacity(panels * m);
        for p in 0..panels {
            let a = s + p as f64 * h;
            let mid = a + 0.5 * h;
            for (&x, &w) in xs.iter().zip(&ws) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        let panel = Self { nodes, weights, s, len, panels };
        panel.validate()?;
        Ok(panel)
    }

    fn validate(&self) -> Result<()> {
        let sum: f64 = self.weights.iter().sum();
        if (sum - self.len).abs() > 1e-12 * self.len.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "weights sum {sum} differs from panel length {}",
                self.len
            )));
        }
        if self.nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("nodes not strictly increasing".into()));
        }
        if self.weights.iter().any(|&w| w <= 0.0) {
            return Err(Error::InvalidArgument("non-positive weight".into()));
        }
        Ok(())
    }

    pub fn end(&self) -> f64 {
        self.s + self.len
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Same geometry with twice the nodes per panel, for resolution checks.
    pub fn doubled(&self) -> Self {
        let per_panel = self.nodes.len() / self.panels;
        Self::composite_gauss_legendre(self.s, self.len, self.panels, 2 * per_panel)
            .expect("doubling a valid panel")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // degree 15 polynomial x^14
        let got: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.powi(14)).sum();
        assert!((got - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn panel_invariants() {
        let p = QuadPanel::composite_gauss_legendre(-2.0, 16.0, 4, 20).unwrap();
        assert_eq!(p.node_count(), 80);
        let sum: f64 = p.weights.iter().sum();
        assert!((sum - 16.0).abs() < 1e-12);
        assert!(p.nodes.first().unwrap() > &-2.0);
        assert!(p.nodes.last().unwrap() < &14.0);
    }
}
