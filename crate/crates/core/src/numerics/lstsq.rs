// Dense kernels read clearer with explicit indices.
#![allow(clippy::needless_range_loop)]

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::DenseMatrix;
use super::real::{Context, Real};
use super::scalar::{dot, norm2, Scalar};
use crate::{Error, Result};

/// Householder reflector `I - beta v v^H` acting on entries `start..start+len`.
#[derive(Clone, Debug)]
pub(crate) struct Reflector<T> {
    start: usize,
    v: Vec<T>,
    beta: Real,
}

impl<T: Scalar> Reflector<T> {
    /// Reflector sending `x` to `alpha e_1`. Returns the reflector and `alpha`.
    pub(crate) fn new(start: usize, x: &[T], bits: usize) -> (Self, T) {
        let norm = norm2(x, bits);
        if norm.is_zero() {
            let id = Reflector { start, v: Vec::new(), beta: Real::zero(bits) };
            return (id, T::zero_with(bits));
        }
        let a0 = x[0].abs();
        let phase = if a0.is_zero() { T::one_with(bits) } else { x[0].scale(&a0.recip()) };
        let alpha = phase.scale(&norm).neg();
        let mut v = x.to_vec();
        v[0] = x[0].sub(&alpha);
        let beta = (&norm * &(&norm + &a0)).recip();
        (Reflector { start, v, beta }, alpha)
    }

    /// `y <- H y`. `H` is Hermitian so this is also `H^H y`.
    pub(crate) fn apply(&self, y: &mut [T]) {
        if self.v.is_empty() {
            return;
        }
        let seg = &mut y[self.start..self.start + self.v.len()];
        let s = dot(&self.v, seg, self.beta.bits()).scale(&self.beta);
        for (yi, vi) in seg.iter_mut().zip(&self.v) {
            *yi = yi.sub(&vi.mul(&s));
        }
    }
}

/// Column-pivoted Householder QR, `A P = Q R`.
pub(crate) struct PivotedQr<T> {
    /// Transformed columns; entries below the diagonal are zero.
    pub cols: Vec<Vec<T>>,
    pub refl: Vec<Reflector<T>>,
    pub perm: Vec<usize>,
}

pub(crate) fn pivoted_qr<T: Scalar>(a: &DenseMatrix<T>) -> PivotedQr<T> {
    let (m, n) = (a.rows(), a.cols());
    let bits = a.bits();
    let mut cols = a.columns();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut refl = Vec::with_capacity(m.min(n));
    for k in 0..m.min(n) {
        let mut best = k;
        let mut best_norm = Real::zero(bits);
        for (j, col) in cols.iter().enumerate().skip(k) {
            let mut s = Real::zero(bits);
            for v in &col[k..] {
                s += v.norm_sqr();
            }
            if s > best_norm {
                best_norm = s;
                best = j;
            }
        }
        cols.swap(k, best);
        perm.swap(k, best);
        let (h, alpha) = Reflector::new(k, &cols[k][k..], bits);
        cols[k][k] = alpha;
        for v in &mut cols[k][k + 1..] {
            *v = T::zero_with(bits);
        }
        for col in &mut cols[k + 1..] {
            h.apply(col);
        }
        refl.push(h);
    }
    PivotedQr { cols, refl, perm }
}

/// Minimal-norm least-squares solution.
#[derive(Clone, Debug)]
pub struct LeastSquares<T> {
    pub solution: Vec<T>,
    /// `‖A x + b‖₂`.
    pub residual: Real,
    /// Numerical rank used for the solve.
    pub rank: usize,
}

/// Solve `min ‖A x + b‖₂` and among minimisers return the one of least norm.
///
/// The plus sign matches the Hankel system `H p + h`.
///
/// Rank is decided from the pivoted R factor with threshold
/// `10^-(P-10) |R₀₀|`. Rank-deficient systems go through a complete
/// orthogonal decomposition.
pub fn lstsq_min_norm<T: Scalar>(a: &DenseMatrix<T>, b: &[T], ctx: &Context) -> Result<LeastSquares<T>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::Dimension(format!("right-hand side of length {} for {m} rows", b.len())));
    }
    if let Some(i) = b.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { row: i, col: 0 });
    }
    let bits = ctx.bits();
    let qr = pivoted_qr(a);
    let mut c: Vec<T> = b.iter().map(Scalar::neg).collect();
    for h in &qr.refl {
        h.apply(&mut c);
    }
    let kmax = m.min(n);
    let thresh = ctx.tol(10) * qr.cols[0][0].abs();
    let rank = (0..kmax).take_while(|&k| qr.cols[k][k].abs() > thresh).count();
    let residual = norm2(&c[rank..], bits);
    if rank == 0 {
        return Ok(LeastSquares { solution: vec![T::zero_with(bits); n], residual, rank });
    }

    // Rows of the leading trapezoid [R11 R12].
    let mut t: Vec<Vec<T>> = (0..rank).map(|i| (0..n).map(|j| qr.cols[j][i].clone()).collect()).collect();
    let mut zs: Vec<(usize, Reflector<T>)> = Vec::new();
    if rank < n {
        let idx = |i: usize| core::iter::once(i).chain(rank..n);
        for i in (0..rank).rev() {
            let x: Vec<T> = idx(i).map(|j| t[i][j].conj()).collect();
            let (h, _) = Reflector::new(0, &x, bits);
            for row in t.iter_mut().take(i + 1) {
                let mut y: Vec<T> = idx(i).map(|j| row[j].conj()).collect();
                h.apply(&mut y);
                for (j, v) in idx(i).zip(y) {
                    row[j] = v.conj();
                }
            }
            zs.push((i, h));
        }
    }

    let mut w = vec![T::zero_with(bits); n];
    for i in (0..rank).rev() {
        let mut s = c[i].clone();
        for j in i + 1..rank {
            s = s.sub(&t[i][j].mul(&w[j]));
        }
        w[i] = s.div(&t[i][i]);
    }
    for (i, h) in zs.iter().rev() {
        let idx: Vec<usize> = core::iter::once(*i).chain(rank..n).collect();
        let mut y: Vec<T> = idx.iter().map(|&j| w[j].clone()).collect();
        h.apply(&mut y);
        for (&j, v) in idx.iter().zip(y) {
            w[j] = v;
        }
    }
    let mut solution = vec![T::zero_with(bits); n];
    for (j, v) in w.into_iter().enumerate() {
        solution[qr.perm[j]] = v;
    }
    Ok(LeastSquares { solution, residual, rank })
}

/// Householder QR that grows one column at a time, `A = Q R` with `A`
/// having a fixed number of rows.
#[derive(Clone, Debug)]
pub struct IncrementalQr<T> {
    rows: usize,
    bits: usize,
    refl: Vec<Reflector<T>>,
    /// `r[j]` holds the first `j + 1` entries of column `j` of R.
    r: Vec<Vec<T>>,
}

impl<T: Scalar> IncrementalQr<T> {
    pub fn new(rows: usize, bits: usize) -> Self {
        IncrementalQr { rows, bits, refl: Vec::new(), r: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.r.len()
    }

    /// `Q^H col` with the current reflectors.
    pub fn project(&self, col: &[T]) -> Result<Vec<T>> {
        if col.len() != self.rows {
            return Err(Error::Dimension(format!("column of length {} for {} rows", col.len(), self.rows)));
        }
        let mut c = col.to_vec();
        for h in &self.refl {
            h.apply(&mut c);
        }
        Ok(c)
    }

    /// Append a column given as the output of [`project`](Self::project).
    pub fn push_projected(&mut self, mut c: Vec<T>) -> Result<()> {
        let k = self.cols();
        if k >= self.rows {
            return Err(Error::Dimension(format!("QR already has {k} columns for {} rows", self.rows)));
        }
        let (h, alpha) = Reflector::new(k, &c[k..], self.bits);
        c.truncate(k);
        c.push(alpha);
        self.refl.push(h);
        self.r.push(c);
        Ok(())
    }

    pub fn push(&mut self, col: &[T]) -> Result<()> {
        let c = self.project(col)?;
        self.push_projected(c)
    }

    pub fn diag(&self, k: usize) -> &T {
        &self.r[k][k]
    }

    /// Smallest over largest `|R_kk|`, zero for an empty factor.
    pub fn diag_ratio(&self) -> Real {
        let mut lo: Option<Real> = None;
        let mut hi = Real::zero(self.bits);
        for k in 0..self.cols() {
            let a = self.diag(k).abs();
            if a > hi {
                hi = a.clone();
            }
            lo = Some(match lo {
                Some(l) if l < a => l,
                _ => a,
            });
        }
        match lo {
            Some(l) if !hi.is_zero() => l / hi,
            _ => Real::zero(self.bits),
        }
    }

    /// Solve `R x = rhs[..cols]` by back substitution.
    pub fn solve_r(&self, rhs: &[T]) -> Vec<T> {
        let n = self.cols();
        let mut x = vec![T::zero_with(self.bits); n];
        for i in (0..n).rev() {
            let mut s = rhs[i].clone();
            for j in i + 1..n {
                s = s.sub(&self.r[j][i].mul(&x[j]));
            }
            x[i] = s.div(&self.r[i][i]);
        }
        x
    }
}
