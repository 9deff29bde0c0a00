//! RSK row insertion on planar point configurations.
//!
//! Points are ordered by `u = t + x` and inserted by key `v = t - x`;
//! the resulting shape encodes the whole multilayer line ensemble at the
//! observation point.

use crate::{Error, Result};

/// Row-insert the given keys in order; returns the row lengths
/// (weakly decreasing shape). `max_rows = None` keeps every row.
pub fn rsk_shape_from_keys(keys: &[f64], max_rows: Option<usize>) -> Vec<usize> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &key in keys {
        let mut carry = key;
        let mut r = 0;
        loop {
            if let Some(limit) = max_rows {
                if r >= limit {
                    break; // bumped out of the retained window
                }
            }
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            let row = &mut rows[r];
            // first entry >= carry gets bumped; rows stay strictly increasing
            match row.binary_search_by(|probe| probe.partial_cmp(&carry).unwrap()) {
                Ok(pos) | Err(pos) => {
                    if pos == row.len() {
                        row.push(carry);
                        break;
                    }
                    std::mem::swap(&mut row[pos], &mut carry);
                    r += 1;
                }
            }
        }
    }
    rows.iter().map(|r| r.len()).collect()
}

/// Sort points by `t + x` and return the insertion keys `t - x`.
/// Errors if the configuration is not in general position.
pub fn insertion_keys(points: &[(f64, f64)]) -> Result<Vec<f64>> {
    let mut us: Vec<f64> = points.iter().map(|&(x, t)| t + x).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| us[a].partial_cmp(&us[b]).unwrap());
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if us.windows(2).any(|w| w[0] == w[1]) {
        let dup = us.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        return Err(Error::GeneralPosition { coord: "t+x", value: dup });
    }
    let keys: Vec<f64> = order.iter().map(|&i| points[i].1 - points[i].0).collect();
    let mut sorted_keys = keys.clone();
    sorted_keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted_keys.windows(2).any(|w| w[0] == w[1]) {
        let dup = sorted_keys.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        return Err(Error::GeneralPosition { coord: "t-x", value: dup });
    }
    Ok(keys)
}

/// Greene's statistic by exhaustive search: the maximal total length of
/// `k` disjoint increasing subsequences of `keys`. Exponential; reference
/// route for small inputs.
pub fn greene_max_disjoint_increasing(keys: &[f64], k: usize) -> usize {
    // assign each element to one of k chains (or none), keep chains increasing
    fn recurse(keys: &[f64], idx: usize, tops: &mut Vec<Option<f64>>, used: usize, best: &mut usize) {
        if idx == keys.len() {
            *best = (*best).max(used);
            return;
        }
        // prune: even taking everything left cannot beat best
        if used + (keys.len() - idx) <= *best {
            return;
        }
        let v = keys[idx];
        for c in 0..tops.len() {
            if tops[c].map_or(true, |t| t < v) {
                let saved = tops[c];
                tops[c] = Some(v);
                recurse(keys, idx + 1, tops, used + 1, best);
                tops[c] = saved;
                // identical empty chains are interchangeable
                if saved.is_none() {
                    break;
                }
            }
        }
        recurse(keys, idx + 1, tops, used, best);
    }
    let mut tops = vec![None; k];
    let mut best = 0;
    recurse(keys, 0, &mut tops, 0, &mut best);
    best
}
