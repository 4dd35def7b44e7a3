use alloc::vec::Vec;

use crate::measures::MomentSequence;
use crate::numerics::{Complex, DenseMatrix, Real, Scalar};
use crate::{Error, Result};

/// The least-squares system `H(N,d) p + h(d)` with `H[i][j] = m_{i+j}`
/// of shape `(N+1) x (d+1)` and `h[i] = m_{d+1+i}`.
#[derive(Clone, Debug)]
pub struct HankelSystem {
    pub order: usize,
    pub degree: usize,
    pub matrix: DenseMatrix<Complex>,
    pub rhs: Vec<Complex>,
}

pub fn build_hankel(moments: &MomentSequence, order: usize, degree: usize) -> Result<HankelSystem> {
    let v = moments.values();
    check_len(v.len(), order, degree)?;
    let matrix = DenseMatrix::from_fn(order + 1, degree + 1, |i, j| v[i + j].clone())?;
    let rhs = v[degree + 1..degree + order + 2].to_vec();
    Ok(HankelSystem { order, degree, matrix, rhs })
}

pub(crate) fn check_len(available: usize, order: usize, degree: usize) -> Result<()> {
    let needed = order + degree + 2;
    if available < needed {
        return Err(Error::NotEnoughMoments { needed, available });
    }
    Ok(())
}

/// Moments in the cheapest scalar type that represents them exactly.
pub(crate) enum Moments {
    Real(Vec<Real>),
    Complex(Vec<Complex>),
}

impl Moments {
    pub(crate) fn of(m: &MomentSequence) -> Moments {
        if m.is_real() {
            Moments::Real(m.values().iter().map(|c| c.re.clone()).collect())
        } else {
            Moments::Complex(m.values().to_vec())
        }
    }
}

pub(crate) fn dense<T: Scalar>(v: &[T], rows: usize, cols: usize) -> Result<DenseMatrix<T>> {
    DenseMatrix::from_fn(rows, cols, |i, j| v[i + j].clone())
}
