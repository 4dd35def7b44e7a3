use alloc::vec::Vec;

use super::lstsq::pivoted_qr;
use super::matrix::DenseMatrix;
use super::real::{Context, Real};
use super::scalar::{dot, Scalar};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Singular values in non-increasing order.
///
/// One-sided Jacobi on `R^H` where `R` comes from a column-pivoted QR of
/// the input (or of its conjugate transpose when it has more columns than
/// rows). The pivoted QR front end makes the Jacobi sweeps converge fast
/// and keeps the small singular values accurate.
pub fn singular_values<T: Scalar>(a: &DenseMatrix<T>, ctx: &Context) -> Result<Vec<Real>> {
    let owned;
    let a = if a.rows() < a.cols() {
        owned = a.conj_transpose();
        &owned
    } else {
        a
    };
    let n = a.cols();
    let bits = ctx.bits();
    let qr = pivoted_qr(a);
    // Columns of R^H are the conjugated rows of R.
    let mut b: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if j >= i { qr.cols[j][i].conj() } else { T::zero_with(bits) }).collect())
        .collect();

    // Rotate when |γ|² > tol² α β.
    let tol = Real::one(bits).ldexp(-(bits as i32) + 8) * Real::from_u64(n as u64, bits);
    let tol2 = tol.sqr();
    let mut norms: Vec<Real> = b.iter().map(|c| col_norm2(c, bits)).collect();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                if norms[i].is_zero() || norms[j].is_zero() {
                    continue;
                }
                let g = dot(&b[i], &b[j], bits);
                let g2 = g.norm_sqr();
                if g2 <= &tol2 * &(&norms[i] * &norms[j]) {
                    continue;
                }
                rotated = true;
                let ga = g2.sqrt();
                let phase = g.scale(&ga.recip());
                let zeta = (&norms[j] - &norms[i]) / ga.ldexp(1);
                let root = (Real::one(bits) + zeta.sqr()).sqrt();
                let t = if zeta.is_negative() {
                    -(zeta.abs() + root).recip()
                } else {
                    (zeta + root).recip()
                };
                let c = (Real::one(bits) + t.sqr()).sqrt().recip();
                let s = &t * &c;
                // a_i' = c a_i - s e^{-iφ} a_j,  a_j' = s e^{iφ} a_i + c a_j
                let ps = phase.scale(&s);
                let pcs = ps.conj();
                let (lo, hi) = b.split_at_mut(j);
                for (x, y) in lo[i].iter_mut().zip(hi[0].iter_mut()) {
                    let nx = x.scale(&c).sub(&pcs.mul(y));
                    let ny = ps.mul(x).add(&y.scale(&c));
                    *x = nx;
                    *y = ny;
                }
                norms[i] = col_norm2(&b[i], bits);
                norms[j] = col_norm2(&b[j], bits);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SvdNotConverged { sweeps: MAX_SWEEPS });
    }
    let mut s: Vec<Real> = norms.into_iter().map(|v| v.sqrt()).collect();
    s.sort_by(|x, y| y.cmp_total(x));
    Ok(s)
}

fn col_norm2<T: Scalar>(c: &[T], bits: usize) -> Real {
    let mut s = Real::zero(bits);
    for v in c {
        s += v.norm_sqr();
    }
    s
}

/// Number of singular values strictly above `delta * σ₁`.
pub fn numerical_rank<T: Scalar>(a: &DenseMatrix<T>, delta: &Real, ctx: &Context) -> Result<usize> {
    let s = singular_values(a, ctx)?;
    Ok(rank_from_values(&s, delta))
}

pub fn rank_from_values(s: &[Real], delta: &Real) -> usize {
    match s.first() {
        Some(s0) if !s0.is_zero() => {
            let cut = delta * s0;
            s.iter().filter(|v| **v > cut).count()
        }
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Complex;

    #[test]
    fn diagonal_values_sorted() {
        let ctx = Context::new(30);
        let a = DenseMatrix::from_fn(3, 3, |i, j| if i == j { ctx.int([2, -5, 3][i]) } else { ctx.zero() }).unwrap();
        let s: Vec<f64> = singular_values(&a, &ctx).unwrap().iter().map(Real::to_f64).collect();
        assert_eq!(s, [5.0, 3.0, 2.0]);
    }

    #[test]
    fn rank_one_complex() {
        let ctx = Context::new(40);
        let u = [1.0, -2.0, 0.5];
        let v = [(1.0, 1.0), (0.0, -3.0)];
        let a = DenseMatrix::from_fn(3, 2, |i, j| {
            Complex::new(ctx.from_f64(u[i] * v[j].0), ctx.from_f64(u[i] * v[j].1))
        })
        .unwrap();
        let s = singular_values(&a, &ctx).unwrap();
        let expect = (1.0f64 + 4.0 + 0.25).sqrt() * (2.0f64 + 9.0).sqrt();
        assert!((s[0].to_f64() - expect).abs() < 1e-14);
        assert!(s[1].to_f64() < 1e-35);
        assert_eq!(numerical_rank(&a, &ctx.tol(10), &ctx).unwrap(), 1);
    }

    #[test]
    fn wide_matrix_uses_transpose() {
        let ctx = Context::new(30);
        // [[3, 0, 4]] has the single singular value 5.
        let a = DenseMatrix::from_rows(alloc::vec![alloc::vec![ctx.int(3), ctx.zero(), ctx.int(4)]]).unwrap();
        let s = singular_values(&a, &ctx).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].to_f64() - 5.0).abs() < 1e-25);
    }

    #[test]
    fn hilbert_smallest_value() {
        // σ_min of the 4x4 Hilbert matrix is 9.67023040060e-5.
        let ctx = Context::new(40);
        let a = DenseMatrix::from_fn(4, 4, |i, j| ctx.ratio(1, (i + j + 1) as i64)).unwrap();
        let s = singular_values(&a, &ctx).unwrap();
        assert!((s[3].to_f64() / 9.670_230_402_258_689e-5 - 1.0).abs() < 1e-10);
        assert!((s[0].to_f64() / 1.500_214_280_059_243 - 1.0).abs() < 1e-12);
    }
}
