//! Polynuclear growth with flat initial data: Poisson nucleation
//! configurations, the height function, the RSK multilayer construction,
//! symmetrization, and edge-scaled observables.

mod rsk;
mod steps;

pub use rsk::{greene_max_disjoint_increasing, insertion_keys, rsk_shape_from_keys};
pub use steps::{height_by_steps, run_steps, StepRun};

use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Default nucleation intensity.
pub const DEFAULT_INTENSITY: f64 = 2.0;

/// Default lower cutoff for edge-scaled samples.
pub const DEFAULT_XI_FLOOR: f64 = -10.0;

/// Space-time domain carrying the nucleations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `{(x, t): 0 <= t <= horizon, |x| <= horizon - t}`, the backward
    /// light cone of `(0, horizon)` above the t = 0 axis.
    Triangle,
    /// `{(x, t): |t| + |x| <= horizon}`, the triangle and its mirror
    /// image under `t -> -t`.
    Diamond,
    /// `{(x, t): 0 <= t <= horizon, x_min <= x <= x_max}`.
    Rectangle { x_min: f64, x_max: f64 },
}

impl Region {
    pub fn area(&self, horizon: f64) -> f64 {
        match *self {
            Region::Triangle => horizon * horizon,
            Region::Diamond => 2.0 * horizon * horizon,
            Region::Rectangle { x_min, x_max } => (x_max - x_min) * horizon,
        }
    }

    pub fn contains(&self, x: f64, t: f64, horizon: f64) -> bool {
        match *self {
            Region::Triangle => (0.0..=horizon).contains(&t) && x.abs() <= horizon - t,
            Region::Diamond => t.abs() + x.abs() <= horizon,
            Region::Rectangle { x_min, x_max } => {
                (0.0..=horizon).contains(&t) && (x_min..=x_max).contains(&x)
            }
        }
    }

    fn sample_point(&self, horizon: f64, rng: &mut impl Rng) -> (f64, f64) {
        match *self {
            Region::Triangle => {
                // density of t is proportional to the width horizon - t
                let t = horizon * (1.0 - rng.gen::<f64>().sqrt());
                let w = horizon - t;
                (rng.gen_range(-w..w), t)
            }
            Region::Diamond => {
                let (x, t) = Region::Triangle.sample_point(horizon, rng);
                if rng.gen::<bool>() {
                    (x, t)
                } else {
                    (x, -t)
                }
            }
            Region::Rectangle { x_min, x_max } => {
                (rng.gen_range(x_min..x_max), rng.gen_range(0.0..horizon))
            }
        }
    }
}

/// A nucleation configuration: the sampled (or hand-built) points
/// together with the domain they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonConfig {
    /// `(x, t)` pairs.
    pub points: Vec<(f64, f64)>,
    pub region: Region,
    pub intensity: f64,
    pub horizon: f64,
    /// Sampling provenance, if any: `(master_seed, stream_index)`.
    pub seed: Option<(u64, u64)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConfigHeader {
    region: Region,
    intensity: f64,
    horizon: f64,
    seed: Option<(u64, u64)>,
    count: usize,
}

/// Deterministic per-sample generator: one master seed fans out to
/// independent streams, so parallel sampling is reproducible regardless
/// of scheduling.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Draw a Poisson configuration on the region.
pub fn sample_poisson(
    region: Region,
    intensity: f64,
    horizon: f64,
    master_seed: u64,
    stream: u64,
) -> Result<PoissonConfig> {
    if !(intensity > 0.0) || !(horizon > 0.0) {
        return Err(Error::InvalidArgument(
            "poisson sampling needs intensity > 0 and horizon > 0".into(),
        ));
    }
    let mut rng = stream_rng(master_seed, stream);
    let mean = intensity * region.area(horizon);
    let n = Poisson::new(mean)
        .map_err(|e| Error::InvalidArgument(format!("poisson mean {mean}: {e}")))?
        .sample(&mut rng) as usize;
    let mut points: Vec<(f64, f64)> = (0..n).map(|_| region.sample_point(horizon, &mut rng)).collect();

    // enforce general position (distinct t+x and t-x); ties have
    // probability zero but resampling keeps the contract exact
    for _ in 0..64 {
        match insertion_keys(&points) {
            Ok(_) => {
                return Ok(PoissonConfig {
                    points,
                    region,
                    intensity,
                    horizon,
                    seed: Some((master_seed, stream)),
                })
            }
            Err(_) => {
                points = (0..n).map(|_| region.sample_point(horizon, &mut rng)).collect();
            }
        }
    }
    Err(Error::InvalidArgument(
        "could not reach general position after 64 attempts".into(),
    ))
}

impl PoissonConfig {
    /// Hand-built configuration over an explicit region.
    pub fn from_points(points: Vec<(f64, f64)>, region: Region, horizon: f64) -> Result<Self> {
        for &(x, t) in &points {
            if !region.contains(x, t, horizon) {
                return Err(Error::OutOfRegion { x, t });
            }
        }
        insertion_keys(&points)?;
        Ok(Self { points, region, intensity: DEFAULT_INTENSITY, horizon, seed: None })
    }

    /// Reflect the triangle configuration through `t -> -t` and take the
    /// union, producing a diamond configuration with the mirror symmetry
    /// built in.
    pub fn symmetrize(&self) -> Result<Self> {
        if self.region != Region::Triangle {
            return Err(Error::InvalidArgument(
                "symmetrization is defined on triangle configurations".into(),
            ));
        }
        let mut points = self.points.clone();
        points.extend(self.points.iter().map(|&(x, t)| (x, -t)));
        Ok(Self {
            points,
            region: Region::Diamond,
            intensity: self.intensity,
            horizon: self.horizon,
            seed: self.seed,
        })
    }

    /// RSK shape of the configuration (points ordered by `t + x`,
    /// inserted by `t - x`).
    pub fn rsk_shape(&self) -> Result<Vec<usize>> {
        Ok(rsk_shape_from_keys(&insertion_keys(&self.points)?, None))
    }

    /// RSK shape keeping only the first `max_rows` rows; identical to the
    /// leading rows of the full shape at a fraction of the cost.
    pub fn rsk_shape_truncated(&self, max_rows: usize) -> Result<Vec<usize>> {
        Ok(rsk_shape_from_keys(&insertion_keys(&self.points)?, Some(max_rows)))
    }

    /// Multilayer heights `h_0 >= h_{-1} >= ...` at the observation point
    /// `(0, horizon)`, read off the RSK shape: `h_{-k} = shape_k - k`.
    pub fn multilayer_heights(&self, levels: usize) -> Result<Vec<i64>> {
        let shape = self.rsk_shape_truncated(levels)?;
        Ok((0..levels)
            .map(|k| shape.get(k).map_or(0, |&l| l as i64) - k as i64)
            .collect())
    }

    /// Multilayer heights by the growth dynamics: each level is the PNG
    /// height driven by the annihilation events of the level above.
    /// Independent of the RSK route.
    pub fn multilayer_heights_by_steps(&self, levels: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(levels);
        let mut pts = self.points.clone();
        for k in 0..levels {
            let run = run_steps(&pts, self.horizon);
            out.push(run.height_at(0.0) - k as i64);
            pts = run.annihilations.clone();
        }
        out
    }

    /// Height at `(0, horizon)`.
    pub fn height_at_origin(&self) -> Result<i64> {
        let shape = self.rsk_shape_truncated(1)?;
        Ok(shape.first().copied().unwrap_or(0) as i64)
    }

    /// Serialize as a JSON header line followed by one `x t` pair per
    /// line. The `{:?}` float formatting is shortest round-trip, so the
    /// cycle is bit exact.
    pub fn write_to(&self, mut w: impl Write, path: &str) -> Result<()> {
        let io_err = |source| Error::Io { path: path.to_string(), source };
        let header = ConfigHeader {
            region: self.region,
            intensity: self.intensity,
            horizon: self.horizon,
            seed: self.seed,
            count: self.points.len(),
        };
        let line = serde_json::to_string(&header)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        writeln!(w, "{line}").map_err(io_err)?;
        for &(x, t) in &self.points {
            writeln!(w, "{x:?} {t:?}").map_err(io_err)?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead, path: &str) -> Result<Self> {
        let io_err = |source| Error::Io { path: path.to_string(), source };
        let bad = |msg: String| Error::InvalidArgument(format!("{path}: {msg}"));
        let mut lines = r.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| bad("missing header".into()))?
            .map_err(io_err)?;
        let header: ConfigHeader =
            serde_json::from_str(&header_line).map_err(|e| bad(e.to_string()))?;
        let mut points = Vec::with_capacity(header.count);
        for line in lines {
            let line = line.map_err(io_err)?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let x: f64 = it
                .next()
                .ok_or_else(|| bad(format!("short line {line:?}")))?
                .parse()
                .map_err(|e| bad(format!("{e}")))?;
            let t: f64 = it
                .next()
                .ok_or_else(|| bad(format!("short line {line:?}")))?
                .parse()
                .map_err(|e| bad(format!("{e}")))?;
            points.push((x, t));
        }
        if points.len() != header.count {
            return Err(bad(format!(
                "header count {} but {} points",
                header.count,
                points.len()
            )));
        }
        Ok(Self {
            points,
            region: header.region,
            intensity: header.intensity,
            horizon: header.horizon,
            seed: header.seed,
        })
    }
}

/// Height at `(x, t)`: the longest chain of nucleations in the backward
/// light cone of `(x, t)`, with the causal order `(x1, t1) < (x2, t2)`
/// iff `t2 - t1 >= |x2 - x1|`. In cone coordinates `u = t + x`,
/// `v = t - x` this is the longest increasing subsequence of `v` after
/// sorting by `u`, restricted to `u_i <= t + x`, `v_i <= t - x`, `t_i >= 0`.
pub fn height(points: &[(f64, f64)], x: f64, t: f64) -> i64 {
    let mut cone: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(xi, ti)| ti >= 0.0 && ti + xi <= t + x && ti - xi <= t - x)
        .map(|&(xi, ti)| (ti + xi, ti - xi))
        .collect();
    cone.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // patience sorting for the LIS length
    let mut tops: Vec<f64> = Vec::new();
    for &(_, v) in &cone {
        match tops.binary_search_by(|probe| probe.partial_cmp(&v).unwrap()) {
            Ok(pos) | Err(pos) => {
                if pos == tops.len() {
                    tops.push(v);
                } else {
                    tops[pos] = v;
                }
            }
        }
    }
    tops.len() as i64
}

/// Edge-rescaled line positions from one sampled configuration.
#[derive(Debug, Clone)]
pub struct EdgeSample {
    /// Rescaled positions `xi_0 > xi_{-1} > ...`, truncated at the floor.
    pub xi: Vec<f64>,
    pub floor: f64,
}

fn edge_sample(heights: impl Iterator<Item = i64>, center: f64, scale: f64, floor: f64) -> EdgeSample {
    let mut xi = Vec::new();
    for h in heights {
        let v = (h as f64 - center) / scale;
        if v < floor {
            break;
        }
        xi.push(v);
    }
    EdgeSample { xi, floor }
}

impl PoissonConfig {
    /// Flat-geometry edge rescaling at `(0, horizon)`:
    /// `xi_j = (h_j - 2 T) / (2^{-2/3} T^{1/3})` with `T = horizon`.
    pub fn flat_edge_sample(&self, floor: f64) -> Result<EdgeSample> {
        let t = self.horizon;
        let scale = t.powf(1.0 / 3.0) * 2f64.powf(-2.0 / 3.0);
        // heights below the floor are reached within a bounded number of
        // levels because h_{-k} <= h_0 - k
        let levels = (scale * (0.0 - floor) + 40.0) as usize + 8;
        let hs = self.multilayer_heights(levels)?;
        Ok(edge_sample(hs.into_iter(), 2.0 * t, scale, floor))
    }

    /// Symmetrized-geometry edge rescaling: with `T~ = 2 * horizon`,
    /// `xi_j = (H_j - 2 T~) / T~^{1/3}` for the diamond line ensemble.
    pub fn sym_edge_sample(&self, floor: f64) -> Result<EdgeSample> {
        if self.region != Region::Diamond {
            return Err(Error::InvalidArgument(
                "symmetrized edge sample needs a diamond configuration".into(),
            ));
        }
        let tt = 2.0 * self.horizon;
        let scale = tt.powf(1.0 / 3.0);
        let levels = (scale * (0.0 - floor) + 40.0) as usize + 8;
        let hs = self.multilayer_heights(levels)?;
        Ok(edge_sample(hs.into_iter(), 2.0 * tt, scale, floor))
    }
}
