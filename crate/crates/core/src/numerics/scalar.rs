use core::fmt::Debug;

use super::complex::Complex;
use super::real::Real;

/// Field element used by the dense kernels. Implemented for [`Real`] and
/// [`Complex`] so purely real problems skip complex arithmetic.
pub trait Scalar: Clone + Debug + PartialEq {
    fn zero_with(bits: usize) -> Self;
    fn one_with(bits: usize) -> Self;
    fn from_real(r: Real) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn abs(&self) -> Real;
    fn norm_sqr(&self) -> Real;
    fn scale(&self, k: &Real) -> Self;
    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    fn bits(&self) -> usize;
    fn with_bits(&self, bits: usize) -> Self;
    fn to_complex(&self) -> Complex;
    /// `conj(self) * o`, the building block of inner products.
    fn conj_mul(&self, o: &Self) -> Self {
        self.conj().mul(o)
    }
}

impl Scalar for Real {
    fn zero_with(bits: usize) -> Self {
        Real::zero(bits)
    }
    fn one_with(bits: usize) -> Self {
        Real::one(bits)
    }
    fn from_real(r: Real) -> Self {
        r
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn abs(&self) -> Real {
        Real::abs(self)
    }
    fn norm_sqr(&self) -> Real {
        self.sqr()
    }
    fn scale(&self, k: &Real) -> Self {
        self * k
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
    fn is_finite(&self) -> bool {
        Real::is_finite(self)
    }
    fn bits(&self) -> usize {
        Real::bits(self)
    }
    fn with_bits(&self, bits: usize) -> Self {
        Real::with_bits(self, bits)
    }
    fn to_complex(&self) -> Complex {
        Complex::from_real(self.clone())
    }
    fn conj_mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for Complex {
    fn zero_with(bits: usize) -> Self {
        Complex::zero(bits)
    }
    fn one_with(bits: usize) -> Self {
        Complex::one(bits)
    }
    fn from_real(r: Real) -> Self {
        Complex::from_real(r)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn abs(&self) -> Real {
        Complex::abs(self)
    }
    fn norm_sqr(&self) -> Real {
        Complex::norm_sqr(self)
    }
    fn scale(&self, k: &Real) -> Self {
        Complex::scale(self, k)
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn is_finite(&self) -> bool {
        Complex::is_finite(self)
    }
    fn bits(&self) -> usize {
        Complex::bits(self)
    }
    fn with_bits(&self, bits: usize) -> Self {
        Complex::with_bits(self, bits)
    }
    fn to_complex(&self) -> Complex {
        self.clone()
    }
    fn conj_mul(&self, o: &Self) -> Self {
        Complex::new(
            &self.re * &o.re + &self.im * &o.im,
            &self.re * &o.im - &self.im * &o.re,
        )
    }
}

/// Euclidean norm of a vector.
pub fn norm2<T: Scalar>(v: &[T], bits: usize) -> Real {
    let mut s = Real::zero(bits);
    for x in v {
        s += x.norm_sqr();
    }
    s.sqrt()
}

/// Largest absolute entry.
pub fn norm_inf<T: Scalar>(v: &[T], bits: usize) -> Real {
    let mut m = Real::zero(bits);
    for x in v {
        let a = x.abs();
        if a > m {
            m = a;
        }
    }
    m
}

/// `Σ conj(a_i) b_i`.
pub fn dot<T: Scalar>(a: &[T], b: &[T], bits: usize) -> T {
    let mut s = T::zero_with(bits);
    for (x, y) in a.iter().zip(b) {
        s = s.add(&x.conj_mul(y));
    }
    s
}
