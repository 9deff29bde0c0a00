//! CSV table builders for the kernel and F1 evaluations. Output is
//! deterministic: fixed column order, row order following the input
//! grid, and shortest-round-trip float formatting.

use flatpng::kernels::{f1_cdf, f1_cdf_series, EdgeKernel, GoeKernel};
use flatpng::skewlinalg::MatrixKernel;
use flatpng::Result;
use std::fmt::Write as _;

pub const KERNEL_TABLE_HEADER: &str = "xi1,xi2,block,value,ttilde,route";
pub const F1_TABLE_HEADER: &str = "s,f1,route";

/// Evenly spaced grid `min, min + step, ..., <= max` (inclusive up to a
/// half-step slack).
pub fn grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || max < min {
        return Err(flatpng::Error::InvalidArgument(
            "grid needs step > 0 and max >= min".into(),
        ));
    }
    let n = ((max - min) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|k| min + k as f64 * step).collect())
}

/// Edge-rescaled kernel blocks on the grid (route `bessel`, blocks
/// g11..g22 and r12..r22 separately) next to the limiting kernel (route
/// `goe`, g-blocks only).
pub fn kernel_table(ttilde: f64, xis: &[f64]) -> Result<String> {
    let edge = EdgeKernel::new(ttilde)?;
    let goe = GoeKernel::new();
    let limit = goe.eval_grid(xis);
    let mut out = String::new();
    out.push_str(KERNEL_TABLE_HEADER);
    out.push('\n');
    let names = [["g11", "g12"], ["g21", "g22"]];
    for (i, &xi1) in xis.iter().enumerate() {
        for (j, &xi2) in xis.iter().enumerate() {
            let g = edge.g_block(xi1, xi2);
            let r = edge.r_block(xi1, xi2);
            for row in 0..2 {
                for col in 0..2 {
                    writeln!(
                        out,
                        "{xi1:?},{xi2:?},{},{:?},{ttilde:?},bessel",
                        names[row][col], g[row][col]
                    )
                    .unwrap();
                }
            }
            for (name, val) in [("r12", r[0][1]), ("r21", r[1][0]), ("r22", r[1][1])] {
                writeln!(out, "{xi1:?},{xi2:?},{name},{val:?},{ttilde:?},bessel").unwrap();
            }
            for row in 0..2 {
                for col in 0..2 {
                    writeln!(
                        out,
                        "{xi1:?},{xi2:?},{},{:?},inf,goe",
                        names[row][col], limit[i][j][row][col]
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// `F1` on the grid through both Fredholm routes.
pub fn f1_table(grid: &[f64]) -> Result<String> {
    let mut out = String::new();
    out.push_str(F1_TABLE_HEADER);
    out.push('\n');
    for &s in grid {
        writeln!(out, "{s:?},{:?},nystrom", f1_cdf(s)?).unwrap();
        writeln!(out, "{s:?},{:?},series", f1_cdf_series(s, 24)?).unwrap();
    }
    Ok(out)
}
