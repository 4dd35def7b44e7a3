use alloc::vec::Vec;

use crate::numerics::{inverse_toeplitz_row, solve_unit_toeplitz_band, Complex, DenseMatrix, Real};
use crate::{Error, Result};

/// A posteriori error bound for a rule built from `p` with residual `ε`.
///
/// For an integrand `q` of degree at most `N + d` the quadrature error is
/// at most `‖Γ₂⁻¹ q̄‖₁ ε` where `q̄ = (q_{d+1}, ..., q_{N+d})` and `Γ₂` is
/// the `N x N` unit upper triangular Toeplitz matrix with first row
/// `(1, p_d, p_{d-1}, ..., p_0, 0, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorCertificate {
    coeffs: Vec<Complex>,
    epsilon: Real,
    order: usize,
    /// `g_s = p_{d+1-s}` for `s = 1..=d+1`.
    band: Vec<Complex>,
}

impl ErrorCertificate {
    /// `coeffs` are `p_0..p_d` of the monic polynomial.
    pub fn new(coeffs: Vec<Complex>, epsilon: Real, order: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("certificate needs at least one coefficient".into()));
        }
        let band = coeffs.iter().rev().cloned().collect();
        Ok(ErrorCertificate { coeffs, epsilon, order, band })
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn epsilon(&self) -> &Real {
        &self.epsilon
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Highest integrand degree covered by the bound.
    pub fn max_degree(&self) -> usize {
        self.order + self.degree()
    }

    /// Dense `Γ₂`, entry `(j, k) = p_{d+1+j-k}` for `j ≤ k ≤ j+d+1`.
    pub fn gamma2(&self) -> Result<DenseMatrix<Complex>> {
        let n = self.order;
        let bits = self.epsilon.bits();
        DenseMatrix::from_fn(n, n, |j, k| {
            if k == j {
                Complex::one(bits)
            } else if k > j && k - j <= self.band.len() {
                self.band[k - j - 1].clone()
            } else {
                Complex::zero(bits)
            }
        })
    }

    /// Bound for the integrand with coefficients `q` (ascending).
    pub fn error_bound(&self, q: &[Complex]) -> Result<Real> {
        let bits = self.epsilon.bits();
        let deg = q.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        let d = self.degree();
        if deg > self.max_degree() {
            return Err(Error::BeyondCertifiedOrder { degree: deg, max: self.max_degree() });
        }
        if deg <= d {
            return Ok(Real::zero(bits));
        }
        let qbar: Vec<Complex> = (0..self.order)
            .map(|i| q.get(d + 1 + i).cloned().unwrap_or_else(|| Complex::zero(bits)))
            .collect();
        let r = solve_unit_toeplitz_band(&self.band, &qbar);
        let l1 = r.iter().fold(Real::zero(bits), |s, v| s + v.abs());
        Ok(l1 * &self.epsilon)
    }

    /// Bound for the monomial `x^n`.
    pub fn monomial_bound(&self, n: usize) -> Result<Real> {
        let b = self.monomial_bounds(n)?;
        Ok(b[n].clone())
    }

    /// Bounds for `x^0 .. x^n_max` sharing one pass over `Γ₂⁻¹`.
    pub fn monomial_bounds(&self, n_max: usize) -> Result<Vec<Real>> {
        if n_max > self.max_degree() {
            return Err(Error::BeyondCertifiedOrder { degree: n_max, max: self.max_degree() });
        }
        let bits = self.epsilon.bits();
        let d = self.degree();
        let len = n_max.saturating_sub(d);
        let t = inverse_toeplitz_row(&self.band, len, bits);
        let mut out = Vec::with_capacity(n_max + 1);
        let mut acc = Real::zero(bits);
        for n in 0..=n_max {
            if n <= d {
                out.push(Real::zero(bits));
            } else {
                acc += t[n - d - 1].abs();
                out.push(&acc * &self.epsilon);
            }
        }
        Ok(out)
    }
}
