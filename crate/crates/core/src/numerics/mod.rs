//! Multiprecision scalars and the dense kernels built on them.

mod complex;
mod lstsq;
mod matrix;
mod poly;
mod real;
mod roots;
mod scalar;
mod svd;
mod toeplitz;

pub use complex::Complex;
pub use lstsq::{lstsq_min_norm, IncrementalQr, LeastSquares};
pub use matrix::DenseMatrix;
pub use poly::Polynomial;
pub use real::{digits_to_bits, Context, Real, DEFAULT_DIGITS, EVAL_DIGITS};
pub use roots::{roots_monic, sort_lexicographic};
pub use scalar::{dot, norm2, norm_inf, Scalar};
pub use svd::{numerical_rank, rank_from_values, singular_values};
pub use toeplitz::{inverse_toeplitz_row, solve_unit_toeplitz_band, solve_upper_triangular_toeplitz};
