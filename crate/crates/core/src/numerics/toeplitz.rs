use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::DenseMatrix;
use super::scalar::Scalar;
use crate::{Error, Result};

/// Solve `Γ r = q` for an upper triangular Toeplitz `Γ` with unit diagonal.
///
/// The matrix is checked for shape and structure. Only the first row is
/// used by the solve and its trailing zeros set the bandwidth.
pub fn solve_upper_triangular_toeplitz<T: Scalar>(gamma: &DenseMatrix<T>, q: &[T]) -> Result<Vec<T>> {
    let n = gamma.rows();
    if gamma.cols() != n {
        return Err(Error::Dimension(format!("{}x{} is not square", n, gamma.cols())));
    }
    if q.len() != n {
        return Err(Error::Dimension(format!("right-hand side of length {} for order {n}", q.len())));
    }
    let one = T::one_with(gamma.bits());
    for i in 0..n {
        for j in 0..n {
            let v = gamma.get(i, j);
            if j < i && !v.is_zero() {
                return Err(Error::NotUnitToeplitz(format!("nonzero below diagonal at ({i}, {j})")));
            }
            if i == j && *v != one {
                return Err(Error::NotUnitToeplitz(format!("diagonal entry {i} is not 1")));
            }
            if i > 0 && j > 0 && v != gamma.get(i - 1, j - 1) {
                return Err(Error::NotUnitToeplitz(format!("entry ({i}, {j}) breaks the Toeplitz pattern")));
            }
        }
    }
    let band: Vec<T> = gamma.row(0)[1..].to_vec();
    Ok(solve_unit_toeplitz_band(&band, q))
}

/// Back substitution for the unit upper triangular Toeplitz matrix whose
/// first row is `[1, band[0], band[1], ...]`. Trailing zeros in `band`
/// are skipped.
pub fn solve_unit_toeplitz_band<T: Scalar>(band: &[T], q: &[T]) -> Vec<T> {
    let n = q.len();
    let bw = band.iter().rposition(|v| !v.is_zero()).map_or(0, |k| k + 1);
    let bits = q.iter().chain(band).map(Scalar::bits).max().unwrap_or(64);
    let mut r = vec![T::zero_with(bits); n];
    for j in (0..n).rev() {
        let mut s = q[j].clone();
        for (k, g) in band.iter().take(bw).enumerate() {
            let idx = j + k + 1;
            if idx >= n {
                break;
            }
            s = s.sub(&g.mul(&r[idx]));
        }
        r[j] = s;
    }
    r
}

/// First `len` entries of the first row of the inverse of the unit upper
/// triangular Toeplitz matrix with first row `[1, band...]`.
///
/// Satisfies `t_0 = 1`, `t_s = -Σ_{i=1}^{min(s, b)} band[i-1] t_{s-i}`.
pub fn inverse_toeplitz_row<T: Scalar>(band: &[T], len: usize, bits: usize) -> Vec<T> {
    let mut t: Vec<T> = Vec::with_capacity(len);
    for s in 0..len {
        if s == 0 {
            t.push(T::one_with(bits));
            continue;
        }
        let mut acc = T::zero_with(bits);
        for i in 1..=s.min(band.len()) {
            acc = acc.sub(&band[i - 1].mul(&t[s - i]));
        }
        t.push(acc);
    }
    t
}
