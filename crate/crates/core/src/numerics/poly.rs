use alloc::vec;
use alloc::vec::Vec;

use super::complex::Complex;
use super::real::Real;
use super::scalar::Scalar;

/// Polynomial with coefficients in ascending order, `c[k]` multiplies `x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Polynomial { coeffs }
    }

    /// Monic polynomial `x^n + Σ lower[k] x^k` with `n = lower.len()`.
    pub fn monic(lower: &[T], bits: usize) -> Self {
        let mut c = lower.to_vec();
        c.push(T::one_with(bits));
        Polynomial { coeffs: c }
    }

    /// `Π (x - r)`.
    pub fn from_roots(roots: &[T], bits: usize) -> Self {
        let mut c = vec![T::one_with(bits)];
        for r in roots {
            let mut next = vec![T::zero_with(bits); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] = next[k + 1].add(ck);
                next[k] = next[k].sub(&ck.mul(r));
            }
            c = next;
        }
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Index of the highest stored coefficient; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == T::one_with(c.bits()))
    }

    pub fn eval(&self, x: &T) -> T {
        let bits = x.bits();
        let mut acc = T::zero_with(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, x: &T) -> (T, T) {
        let bits = x.bits();
        let mut p = T::zero_with(bits);
        let mut dp = T::zero_with(bits);
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(x).add(&p);
            p = p.mul(x).add(c);
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        let bits = self.coeffs.first().map_or(64, Scalar::bits);
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, v)| v.scale(&Real::from_u64(k as u64, bits)))
            .collect();
        Polynomial { coeffs: c }
    }

    /// Synthetic division by `(x - r)`: quotient and remainder.
    pub fn div_linear(&self, r: &T) -> (Self, T) {
        let n = self.coeffs.len();
        let bits = r.bits();
        if n == 0 {
            return (Polynomial { coeffs: Vec::new() }, T::zero_with(bits));
        }
        let mut q = vec![T::zero_with(bits); n - 1];
        let mut acc = T::zero_with(bits);
        for k in (0..n).rev() {
            acc = acc.mul(r).add(&self.coeffs[k]);
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Polynomial { coeffs: q }, acc)
    }

    pub fn to_complex(&self) -> Polynomial<Complex> {
        Polynomial { coeffs: self.coeffs.iter().map(Scalar::to_complex).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Context;

    #[test]
    fn from_roots_and_division() {
        let ctx = Context::new(30);
        let roots = [ctx.int(1), ctx.int(-2), ctx.int(3)];
        let p = Polynomial::from_roots(&roots, ctx.bits());
        let c: Vec<f64> = p.coeffs().iter().map(Real::to_f64).collect();
        assert_eq!(c, [6.0, -5.0, -2.0, 1.0]);
        assert!(p.is_monic());
        let (q, r) = p.div_linear(&ctx.int(3));
        assert!(r.is_zero());
        let qc: Vec<f64> = q.coeffs().iter().map(Real::to_f64).collect();
        assert_eq!(qc, [-2.0, 1.0, 1.0]);
    }

    #[test]
    fn derivative_agrees_with_horner() {
        let ctx = Context::new(30);
        let p = Polynomial::new(vec![ctx.int(1), ctx.int(-4), ctx.int(0), ctx.int(2)]);
        let x = ctx.ratio(3, 7);
        let (v, dv) = p.eval_with_derivative(&x);
        assert_eq!(v, p.eval(&x));
        assert!((dv - p.derivative().eval(&x)).abs().to_f64() < 1e-29);
    }
}
