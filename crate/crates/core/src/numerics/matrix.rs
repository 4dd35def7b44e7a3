use alloc::format;
use alloc::vec::Vec;

use super::real::Real;
use super::scalar::Scalar;
use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    /// Build from a generator. Rejects empty shapes and non-finite entries.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(v);
            }
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_fn(r, c, |i, j| rows[i][j].clone())
    }

    pub fn zeros(rows: usize, cols: usize, bits: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| T::zero_with(bits))
    }

    pub fn identity(n: usize, bits: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { T::one_with(bits) } else { T::zero_with(bits) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// All columns, which is the layout the factorizations work in.
    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn bits(&self) -> usize {
        self.data.iter().map(Scalar::bits).max().unwrap_or(64)
    }

    pub fn conj_transpose(&self) -> Self {
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols)
                .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j).conj())
                .collect(),
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let bits = self.bits();
        Ok((0..self.rows)
            .map(|i| {
                let mut s = T::zero_with(bits);
                for (a, b) in self.row(i).iter().zip(x) {
                    s = s.add(&a.mul(b));
                }
                s
            })
            .collect())
    }

    pub fn mul(&self, o: &DenseMatrix<T>) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let bits = self.bits().max(o.bits());
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut s = T::zero_with(bits);
            for k in 0..self.cols {
                s = s.add(&self.get(i, k).mul(o.get(k, j)));
            }
            s
        })
    }

    pub fn frobenius_norm(&self) -> Real {
        let mut s = Real::zero(self.bits());
        for v in &self.data {
            s += v.norm_sqr();
        }
        s.sqrt()
    }
}
