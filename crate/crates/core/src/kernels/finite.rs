//! Exact finite-time 2x2 matrix kernel, evaluated from Bessel-function
//! series. The kernel splits as `K = G + R`; the `G` part survives the
//! edge scaling limit while the `R` part oscillates in parity and drops
//! out after even/odd averaging.

use crate::specfun::bessel_j_array;
use crate::{Error, Result};

/// `sgn` with `sgn(0) = 0`.
fn sgn(v: i64) -> f64 {
    match v.cmp(&0) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Less => -1.0,
        std::cmp::Ordering::Equal => 0.0,
    }
}

fn parity(x: i64) -> f64 {
    if x.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The antisymmetric parity-sign matrix
/// `S_{x,y} = (1 + sgn(x-y)(-1)^x)/2 * (1 - sgn(x-y)(-1)^y)/2 * sgn(x-y)`.
pub fn parity_sign(x: i64, y: i64) -> f64 {
    let s = sgn(x - y);
    0.25 * (1.0 + s * parity(x)) * (1.0 - s * parity(y)) * s
}

/// Finite-time kernel via Bessel series, all entries built from
/// `J_m(2 T~)`. Series are truncated once the order exceeds
/// `2 T~ + 40 T~^{1/3}`, where the large-order decay makes the tail
/// smaller than 1e-12.
#[derive(Debug, Clone)]
pub struct FinitePngKernel {
    ttilde: f64,
    j: Vec<f64>,
    n_max: i64,
}

impl FinitePngKernel {
    pub fn new(ttilde: f64) -> Result<Self> {
        if !(ttilde > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "kernel needs T~ > 0, got {ttilde}"
            )));
        }
        let n_max = (2.0 * ttilde + 40.0 * ttilde.cbrt()).ceil() as i64 + 8;
        let j = bessel_j_array(n_max as usize, 2.0 * ttilde)?;
        Ok(Self { ttilde, j, n_max })
    }

    pub fn ttilde(&self) -> f64 {
        self.ttilde
    }

    /// `J_m(2 T~)` for any integer order, with the reflection
    /// `J_{-m} = (-1)^m J_m` and zero beyond the truncation order.
    pub fn j(&self, m: i64) -> f64 {
        let (idx, sign) = if m < 0 { (-m, parity(m)) } else { (m, 1.0) };
        if idx > self.n_max {
            0.0
        } else {
            sign * self.j[idx as usize]
        }
    }

    // sum_{n>=1} J_{x+n} J_{y+n}
    fn dot_tail(&self, x: i64, y: i64) -> f64 {
        let upper = self.n_max - x.min(y);
        let mut acc = 0.0;
        for n in 1..=upper.max(0) {
            acc += self.j(x + n) * self.j(y + n);
        }
        acc
    }

    // sum_{m>=1} J_{x+2m+offset}
    fn lattice_sum(&self, x: i64, offset: i64) -> f64 {
        let mut acc = 0.0;
        let mut m = 1;
        while x + 2 * m + offset <= self.n_max {
            acc += self.j(x + 2 * m + offset);
            m += 1;
        }
        acc
    }

    // sum_{m>=1} J_{x+2m+xoff} * sum_{n>=m} J_{y+2n+yoff}, by suffix sums
    fn triangular_sum(&self, x: i64, xoff: i64, y: i64, yoff: i64) -> f64 {
        let m_hi = ((self.n_max - x - xoff) / 2).max((self.n_max - y - yoff) / 2);
        let mut suffix = 0.0;
        let mut acc = 0.0;
        let mut m = m_hi;
        while m >= 1 {
            suffix += self.j(y + 2 * m + yoff);
            acc += self.j(x + 2 * m + xoff) * suffix;
            m -= 1;
        }
        acc
    }

    pub fn g11(&self, x: i64, y: i64) -> f64 {
        -self.dot_tail(x + 1, y) + self.dot_tail(y + 1, x)
    }

    pub fn g12(&self, x: i64, y: i64) -> f64 {
        self.dot_tail(x, y) - self.j(x + 1) * (self.lattice_sum(y, -1) - 0.5)
    }

    pub fn g21(&self, x: i64, y: i64) -> f64 {
        -self.g12(y, x)
    }

    pub fn g22(&self, x: i64, y: i64) -> f64 {
        self.triangular_sum(x, 0, y, 1) - self.triangular_sum(y, 0, x, 1)
            - 0.5 * self.lattice_sum(x, 0)
            + 0.5 * self.lattice_sum(y, 0)
            - 0.25 * sgn(x - y)
    }

    pub fn r12(&self, x: i64, y: i64) -> f64 {
        -0.5 * parity(y) * self.j(x + 1)
    }

    pub fn r21(&self, x: i64, y: i64) -> f64 {
        0.5 * parity(x) * self.j(y + 1)
    }

    pub fn r22(&self, x: i64, y: i64) -> f64 {
        -parity_sign(x, y) + 0.25 * sgn(x - y) - 0.5 * parity(x) * self.lattice_sum(y, 0)
            + 0.5 * parity(y) * self.lattice_sum(x, 0)
    }

    /// The `G` part as a 2x2 block.
    pub fn g_block(&self, x: i64, y: i64) -> [[f64; 2]; 2] {
        [
            [self.g11(x, y), self.g12(x, y)],
            [self.g21(x, y), self.g22(x, y)],
        ]
    }

    /// The residual `R` part as a 2x2 block (`R11 = 0`).
    pub fn r_block(&self, x: i64, y: i64) -> [[f64; 2]; 2] {
        [
            [0.0, self.r12(x, y)],
            [self.r21(x, y), self.r22(x, y)],
        ]
    }

    /// Full kernel `K = G + R`.
    pub fn eval(&self, x: i64, y: i64) -> [[f64; 2]; 2] {
        let g = self.g_block(x, y);
        let r = self.r_block(x, y);
        [
            [g[0][0] + r[0][0], g[0][1] + r[0][1]],
            [g[1][0] + r[1][0], g[1][1] + r[1][1]],
        ]
    }
}
