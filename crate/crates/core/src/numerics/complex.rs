use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::real::{Context, Real};

/// Complex number over [`Real`].
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Complex {
        let im = Real::zero(re.bits());
        Complex { re, im }
    }

    pub fn zero(bits: usize) -> Complex {
        Complex::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: usize) -> Complex {
        Complex::new(Real::one(bits), Real::zero(bits))
    }

    pub fn i(bits: usize) -> Complex {
        Complex::new(Real::zero(bits), Real::one(bits))
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn with_bits(&self, bits: usize) -> Complex {
        Complex::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    /// Sum of absolute values of the parts, cheap norm-equivalent.
    pub fn abs1(&self) -> Real {
        self.re.abs() + self.im.abs()
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn unscale(&self, k: &Real) -> Complex {
        Complex::new(&self.re / k, &self.im / k)
    }

    pub fn recip(&self) -> Complex {
        if self.im.is_zero() {
            return Complex::new(self.re.recip(), Real::zero(self.bits()));
        }
        let n = self.norm_sqr();
        Complex::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn powi(&self, mut n: usize) -> Complex {
        let mut base = self.clone();
        let mut acc = Complex::one(self.bits());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self, ctx: &Context) -> Real {
        self.im.atan2(&self.re, ctx)
    }

    /// Principal logarithm. Zero gives a non-finite real part.
    pub fn ln(&self, ctx: &Context) -> Complex {
        Complex::new(self.abs().ln(ctx), self.arg(ctx))
    }

    pub fn exp(&self, ctx: &Context) -> Complex {
        let m = self.re.exp(ctx);
        if self.im.is_zero() {
            return Complex::new(m, Real::zero(self.bits()));
        }
        Complex::new(&m * self.im.cos(ctx), &m * self.im.sin(ctx))
    }

    /// `exp(i t)` for real `t`.
    pub fn cis(t: &Real, ctx: &Context) -> Complex {
        Complex::new(t.cos(ctx), t.sin(ctx))
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        let bits = self.bits();
        if self.is_zero() {
            return Complex::zero(bits);
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let t = ((&r + &self.re).ldexp(-1)).sqrt();
            Complex::new(t.clone(), &self.im / &t.ldexp(1))
        } else {
            let t = ((&r - &self.re).ldexp(-1)).sqrt();
            let im = if self.im.is_negative() { -&t } else { t.clone() };
            Complex::new(self.im.abs() / t.ldexp(1), im)
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}{:+e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

macro_rules! cplx_op {
    ($tr:ident, $m:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&Complex> for &Complex {
            type Output = Complex;
            fn $m(self, o: &Complex) -> Complex {
                let $a = self;
                let $b = o;
                $body
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: &Complex) -> Complex {
                (&self).$m(o)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                self.$m(&o)
            }
        }
    };
}

cplx_op!(Add, add, |a, b| Complex::new(&a.re + &b.re, &a.im + &b.im));
cplx_op!(Sub, sub, |a, b| Complex::new(&a.re - &b.re, &a.im - &b.im));
cplx_op!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        let re = &a.re * &b.re;
        let bits = re.bits();
        return Complex::new(re, Real::zero(bits));
    }
    Complex::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
});
cplx_op!(Div, div, |a, b| {
    if b.im.is_zero() {
        return a.unscale(&b.re);
    }
    // Smith's algorithm avoids overflow in |b|^2.
    if b.re.abs() >= b.im.abs() {
        let r = &b.im / &b.re;
        let den = &b.re + &r * &b.im;
        Complex::new((&a.re + &a.im * &r) / &den, (&a.im - &a.re * &r) / &den)
    } else {
        let r = &b.re / &b.im;
        let den = &b.im + &r * &b.re;
        Complex::new((&a.re * &r + &a.im) / &den, (&a.im * &r - &a.re) / &den)
    }
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ctx: &Context, re: f64, im: f64) -> Complex {
        Complex::new(ctx.from_f64(re), ctx.from_f64(im))
    }

    #[test]
    fn division_inverts_multiplication() {
        let ctx = Context::new(40);
        let a = c(&ctx, 1.5, -2.0);
        let b = c(&ctx, -0.25, 3.0);
        let q = &(&a * &b) / &b;
        assert!((&q - &a).abs().to_f64() < 1e-38);
        let b2 = c(&ctx, 3.0, -0.25);
        let q2 = &(&a * &b2) / &b2;
        assert!((&q2 - &a).abs().to_f64() < 1e-38);
    }

    #[test]
    fn sqrt_is_principal() {
        let ctx = Context::new(30);
        for (re, im) in [(-4.0, 0.0), (-4.0, -1e-30), (3.0, 4.0), (0.0, -2.0)] {
            let z = c(&ctx, re, im);
            let s = z.sqrt();
            assert!(!s.re.is_negative());
            assert!((&(&s * &s) - &z).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn log_exp_round_trip() {
        let ctx = Context::new(30);
        let z = c(&ctx, -0.3, 0.7);
        let back = z.ln(&ctx).exp(&ctx);
        assert!((&back - &z).abs().to_f64() < 1e-28);
        let neg = c(&ctx, -2.0, 0.0).ln(&ctx);
        assert!((neg.im.to_f64() - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let ctx = Context::new(30);
        let z = c(&ctx, 0.9, 0.2);
        let mut p = Complex::one(ctx.bits());
        for _ in 0..13 {
            p = &p * &z;
        }
        assert!((&z.powi(13) - &p).abs().to_f64() < 1e-28);
    }
}
