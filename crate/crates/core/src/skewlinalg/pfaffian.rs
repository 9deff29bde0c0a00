//! Pfaffians of dense antisymmetric matrices.

use crate::{Error, Result};
use nalgebra::DMatrix;

/// Even-dimensional antisymmetric matrix with the antisymmetry contract
/// checked at construction.
#[derive(Debug, Clone)]
pub struct SkewMatrix {
    a: DMatrix<f64>,
}

impl SkewMatrix {
    /// Checks even dimension and `|A_ij + A_ji| <= 1e-12 * scale`, then
    /// exactly antisymmetrizes (diagonal set to zero).
    pub fn new(mut a: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                a.nrows(),
                a.ncols()
            )));
        }
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        let scale = a.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1.0);
        for i in 0..n {
            for j in 0..i {
                let residual = (a[(i, j)] + a[(j, i)]).abs();
                if residual > 1e-12 * scale {
                    return Err(Error::AntisymmetryViolation { i, j, residual });
                }
                let v = 0.5 * (a[(i, j)] - a[(j, i)]);
                a[(i, j)] = v;
                a[(j, i)] = -v;
            }
            a[(i, i)] = 0.0;
        }
        Ok(Self { a })
    }

    /// Build from the strict upper triangle, row-major: `a_01, a_02, ..., a_12, ...`.
    pub fn from_upper(n: usize, upper: &[f64]) -> Result<Self> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} upper entries, got {}",
                n * (n - 1) / 2,
                upper.len()
            )));
        }
        let mut a = DMatrix::zeros(n, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                a[(i, j)] = v;
                a[(j, i)] = -v;
            }
        }
        Self::new(a)
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn determinant(&self) -> f64 {
        self.a.clone().lu().determinant()
    }
}

/// Pf(A) by skew-symmetric elimination (Parlett–Reid) with partial
/// pivoting. Sign convention: `Pf([[0, a], [-a, 0]]) = a`.
pub fn pfaffian(skew: &SkewMatrix) -> f64 {
    let n = skew.dim();
    if n == 0 {
        return 1.0;
    }
    let mut a = skew.matrix().clone();
    let mut sign = 1.0f64;
    let mut pf = 1.0f64;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest |A[p][k]| for p > k
        let mut p = k + 1;
        for r in k + 2..n {
            if a[(r, k)].abs() > a[(p, k)].abs() {
                p = r;
            }
        }
        if a[(p, k)] == 0.0 {
            return 0.0;
        }
        if p != k + 1 {
            a.swap_rows(p, k + 1);
            a.swap_columns(p, k + 1);
            sign = -sign;
        }
        let pivot = a[(k + 1, k)];
        pf *= -pivot; // A[k][k+1] = -A[k+1][k]
        for r in k + 2..n {
            let factor = a[(r, k)] / pivot;
            if factor != 0.0 {
                // congruence with a unit-determinant Gauss transform
                for c in 0..n {
                    let delta = factor * a[(k + 1, c)];
                    a[(r, c)] -= delta;
                }
                for c in 0..n {
                    let delta = factor * a[(c, k + 1)];
                    a[(c, r)] -= delta;
                }
            }
        }
        k += 2;
    }
    sign * pf
}

/// Pf(A) by the direct sum over perfect pairings. Exponential cost; the
/// reference route for small dimensions.
pub fn pfaffian_pairing_sum(skew: &SkewMatrix) -> f64 {
    let n = skew.dim();
    let a = skew.matrix();
    fn recurse(a: &DMatrix<f64>, remaining: &mut Vec<usize>) -> f64 {
        if remaining.is_empty() {
            return 1.0;
        }
        let i = remaining[0];
        let mut total = 0.0;
        for pos in 1..remaining.len() {
            let j = remaining[pos];
            let sign = if pos % 2 == 1 { 1.0 } else { -1.0 };
            let mut rest: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&r| r != i && r != j)
                .collect();
            total += sign * a[(i, j)] * recurse(a, &mut rest);
        }
        total
    }
    let mut idx: Vec<usize> = (0..n).collect();
    recurse(a, &mut idx)
}

/// Returns `(Pf(X^t A X), Pf(A) * Det(X))`; the congruence identity says
/// the two are equal.
pub fn congruence_pfaffian_check(skew: &SkewMatrix, x: &DMatrix<f64>) -> Result<(f64, f64)> {
    let n = skew.dim();
    if x.nrows() != n || x.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "congruence factor is {}x{}, matrix is {n}x{n}",
            x.nrows(),
            x.ncols()
        )));
    }
    let transformed = SkewMatrix::new(x.transpose() * skew.matrix() * x)?;
    let lhs = pfaffian(&transformed);
    let rhs = pfaffian(skew) * x.clone().lu().determinant();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_skew(n: usize, rng: &mut impl Rng) -> SkewMatrix {
        let upper: Vec<f64> = (0..n * (n - 1) / 2)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        SkewMatrix::from_upper(n, &upper).unwrap()
    }

    #[test]
    fn two_by_two() {
        let a = SkewMatrix::from_upper(2, &[3.5]).unwrap();
        assert_eq!(pfaffian(&a), 3.5);
        assert_eq!(pfaffian_pairing_sum(&a), 3.5);
    }

    #[test]
    fn four_by_four_expansion() {
        // Pf = a12 a34 - a13 a24 + a14 a23 = 1*6 - 2*5 + 3*4 = 8
        let a = SkewMatrix::from_upper(4, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert!((pfaffian(&a) - 8.0).abs() < 1e-12);
        assert!((pfaffian_pairing_sum(&a) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = 2 * rng.gen_range(1..=12);
            let a = random_skew(n, &mut rng);
            let pf = pfaffian(&a);
            let det = a.determinant();
            assert!(
                (pf * pf - det).abs() <= 1e-9 * det.abs().max(1e-30),
                "dim {n}: pf^2 = {}, det = {det}",
                pf * pf
            );
        }
    }

    #[test]
    fn tridiagonalization_matches_pairing_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = 2 * rng.gen_range(1..=4);
            let a = random_skew(n, &mut rng);
            let fast = pfaffian(&a);
            let slow = pfaffian_pairing_sum(&a);
            assert!(
                (fast - slow).abs() <= 1e-11 * slow.abs().max(1e-12),
                "dim {n}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn congruence_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // identity: both sides equal Pf(A)
        let a = random_skew(4, &mut rng);
        let id = DMatrix::identity(4, 4);
        let (l, r) = congruence_pfaffian_check(&a, &id).unwrap();
        assert!((l - r).abs() < 1e-12);
        assert!((l - pfaffian(&a)).abs() < 1e-12);

        // row swap: sign flip
        let mut perm = DMatrix::identity(4, 4);
        perm.swap_columns(0, 1);
        let (l, r) = congruence_pfaffian_check(&a, &perm).unwrap();
        assert!((l - r).abs() < 1e-12);
        assert!((l + pfaffian(&a)).abs() < 1e-12);

        // random congruence
        for _ in 0..10 {
            let a = random_skew(6, &mut rng);
            let x = DMatrix::from_fn(6, 6, |_, _| rng.gen_range(-1.0..1.0));
            let (l, r) = congruence_pfaffian_check(&a, &x).unwrap();
            assert!((l - r).abs() <= 1e-9 * r.abs().max(1e-12), "{l} vs {r}");
        }
    }

    #[test]
    fn rejects_odd_and_asymmetric() {
        assert!(matches!(
            SkewMatrix::new(DMatrix::zeros(3, 3)),
            Err(crate::Error::OddDimension(3))
        ));
        let mut bad = DMatrix::zeros(2, 2);
        bad[(0, 1)] = 1.0;
        bad[(1, 0)] = 1.0;
        assert!(matches!(
            SkewMatrix::new(bad),
            Err(crate::Error::AntisymmetryViolation { .. })
        ));
    }
}
