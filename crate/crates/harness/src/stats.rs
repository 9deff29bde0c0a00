//! Empirical statistics of edge samples: CDF distances, counting
//! functionals, and moment estimates with standard errors.

use flatpng::png_sim::EdgeSample;
use flatpng::{Error, Result};

/// Aggregate view of a batch of edge samples.
#[derive(Debug, Clone)]
pub struct EmpiricalEdgeStats {
    /// Top-line position per sample, in sample order.
    pub xi0: Vec<f64>,
    /// All line positions per sample (above the floor).
    pub points: Vec<Vec<f64>>,
    pub floor: f64,
}

impl EmpiricalEdgeStats {
    pub fn from_samples(samples: &[EdgeSample]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("no samples".into()));
        }
        let floor = samples[0].floor;
        let xi0 = samples
            .iter()
            .map(|s| s.xi.first().copied().unwrap_or(f64::NEG_INFINITY))
            .collect();
        let points = samples.iter().map(|s| s.xi.clone()).collect();
        Ok(Self { xi0, points, floor })
    }

    /// Per-sample count of points in `[a, b]`. Valid only for `a` above
    /// the sample floor.
    pub fn counts_in(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        if a < self.floor {
            return Err(Error::InvalidArgument(format!(
                "window start {a} is below the sample floor {}",
                self.floor
            )));
        }
        Ok(self
            .points
            .iter()
            .map(|xs| xs.iter().filter(|&&x| (a..=b).contains(&x)).count() as f64)
            .collect())
    }

    /// Per-sample linear statistic `sum_j f(xi_j)`. `f` must vanish below
    /// the sample floor for the truncation to be harmless.
    pub fn linear_statistic(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.points.iter().map(|xs| xs.iter().map(|&x| f(x)).sum()).collect()
    }
}

/// The flat edge positions live on a lattice of spacing `1/s`,
/// `s = T^{1/3} 2^{-2/3}`. A hard window `[a, b]` therefore counts whole
/// lattice cells, and the matching continuum prediction must integrate
/// the density over exactly those cells. Returns the cell-aligned
/// integration window: from the lower edge of the first counted cell to
/// the upper edge of the last.
pub fn flat_cell_window(t: f64, a: f64, b: f64) -> (f64, f64) {
    let s = t.cbrt() * 2f64.powf(-2.0 / 3.0);
    let h_min = (2.0 * t + a * s).ceil();
    let h_max = (2.0 * t + b * s).floor();
    ((h_min - 0.5 - 2.0 * t) / s, (h_max + 0.5 - 2.0 * t) / s)
}

/// Mean and standard error of the mean.
pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `values` and the continuous CDF `cdf`, with the midpoint convention
/// at atoms: tied values are grouped and the empirical CDF is read at
/// the middle of its jump. The data sit on a lattice (integer heights),
/// so the raw sup-distance carries an irreducible half-atom offset that
/// the midpoint reading removes.
pub fn ks_midpoint(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut dist = 0.0f64;
    let mut below = 0usize;
    let mut i = 0usize;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let mid = (below + j) as f64 / (2.0 * n);
        dist = dist.max((cdf(x) - mid).abs());
        below = j;
        i = j;
    }
    dist
}
