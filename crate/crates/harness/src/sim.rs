//! Sample-parallel Monte-Carlo driver. Each sample owns an RNG stream
//! keyed by its index, so results are independent of the worker count
//! and reproducible from the master seed alone.

use flatpng::png_sim::{sample_poisson, EdgeSample, Region, DEFAULT_INTENSITY};
use flatpng::{Error, Result};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Growth horizon T.
    pub t: f64,
    pub samples: usize,
    pub seed: u64,
    /// Lower cutoff for edge-rescaled line positions.
    pub floor: f64,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || self.samples == 0 || !(self.floor < 0.0) {
            return Err(Error::InvalidArgument(
                "simulation needs T > 0, samples >= 1, floor < 0".into(),
            ));
        }
        Ok(())
    }
}

fn one_sample(cfg: &SimConfig, index: usize) -> Result<EdgeSample> {
    let config = sample_poisson(
        Region::Triangle,
        DEFAULT_INTENSITY,
        cfg.t,
        cfg.seed,
        index as u64,
    )?;
    config.flat_edge_sample(cfg.floor)
}

/// All edge samples, in index order regardless of scheduling.
pub fn run_simulation(cfg: &SimConfig) -> Result<Vec<EdgeSample>> {
    cfg.validate()?;
    let body = || {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| one_sample(cfg, i))
            .collect::<Result<Vec<_>>>()
    };
    if cfg.threads == 0 {
        body()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(body)
    }
}
