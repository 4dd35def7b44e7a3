use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::{RefCell, RefMut};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};

use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 100;
/// Precision used when evaluating a finished approximation.
pub const EVAL_DIGITS: u32 = 30;

/// Number of mantissa bits needed for `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> usize {
    // log2(10) = 3.3219280948...
    ((digits as u64 * 3_321_929).div_ceil(1_000_000)) as usize
}

/// Working precision together with a cache for π, ln 2 and friends.
pub struct Context {
    digits: u32,
    bits: usize,
    consts: RefCell<Consts>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("digits", &self.digits)
            .field("bits", &self.bits)
            .finish()
    }
}

impl Context {
    /// Context with `digits` significant decimal digits (at least 10).
    pub fn new(digits: u32) -> Self {
        let digits = digits.max(10);
        let bits = digits_to_bits(digits).div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE;
        Context {
            digits,
            bits,
            consts: RefCell::new(Consts::new().expect("constant cache allocation")),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub(crate) fn consts(&self) -> RefMut<'_, Consts> {
        self.consts.borrow_mut()
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.bits)
    }

    pub fn one(&self) -> Real {
        Real::from_i64(1, self.bits)
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits)
    }

    /// Correctly rounded `num / den`.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        self.int(num) / self.int(den)
    }

    pub fn from_f64(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits)
    }

    pub fn pi(&self) -> Real {
        Real(self.consts().pi(self.bits, RM))
    }

    /// `10^(-(digits - guard))`, the usual relative tolerance.
    pub fn tol(&self, guard: u32) -> Real {
        let e = self.digits.saturating_sub(guard).max(1);
        self.pow10(-(e as i64))
    }

    /// `10^e` at working precision.
    pub fn pow10(&self, e: i64) -> Real {
        let p = Real(BigFloat::from_word(10, self.bits).powi(e.unsigned_abs() as usize, self.bits, RM));
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// Parse a decimal string such as `-1.25e-3`.
    pub fn parse(&self, s: &str) -> Result<Real> {
        let t = s.trim();
        let valid = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::Parse(s.to_string()));
        }
        let v = BigFloat::parse(t, Radix::Dec, self.bits, RM, &mut self.consts());
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(Real(v))
    }
}

/// Multiprecision real number. Binary operations run at the larger of the
/// two operand precisions.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(bits: usize) -> Real {
        Real(BigFloat::from_word(0, bits))
    }

    pub fn one(bits: usize) -> Real {
        Real(BigFloat::from_word(1, bits))
    }

    pub fn from_i64(v: i64, bits: usize) -> Real {
        Real(BigFloat::from_i64(v, bits))
    }

    pub fn from_u64(v: u64, bits: usize) -> Real {
        Real(BigFloat::from_u64(v, bits))
    }

    pub fn from_f64(v: f64, bits: usize) -> Real {
        Real(BigFloat::from_f64(v, bits))
    }

    /// Mantissa length in bits.
    pub fn bits(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(WORD_BIT_SIZE)
    }

    fn p2(&self, o: &Real) -> usize {
        self.bits().max(o.bits())
    }

    /// Same value rounded to `bits` mantissa bits.
    pub fn with_bits(&self, bits: usize) -> Real {
        let mut v = self.0.clone();
        // Only fails for invalid precision, which callers never pass.
        let _ = v.set_precision(bits.max(WORD_BIT_SIZE), RM);
        Real(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.is_positive()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.reciprocal(self.bits(), RM))
    }

    pub fn sqr(&self) -> Real {
        Real(self.0.mul(&self.0, self.bits(), RM))
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.sqrt(self.bits(), RM))
    }

    pub fn powi(&self, n: usize) -> Real {
        Real(self.0.powi(n, self.bits(), RM))
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        self * &Real::from_i64(k, self.bits())
    }

    pub fn div_i64(&self, k: i64) -> Real {
        self / &Real::from_i64(k, self.bits())
    }

    /// Multiply by `2^k` exactly.
    pub fn ldexp(&self, k: i32) -> Real {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.0.clone();
        if let Some(e) = v.exponent() {
            v.set_exponent(e.saturating_add(k));
        }
        Real(v)
    }

    pub fn exp(&self, ctx: &Context) -> Real {
        Real(self.0.exp(self.bits(), RM, &mut ctx.consts()))
    }

    /// Natural logarithm. Non-positive input gives a non-finite value.
    pub fn ln(&self, ctx: &Context) -> Real {
        Real(self.0.ln(self.bits(), RM, &mut ctx.consts()))
    }

    pub fn sin(&self, ctx: &Context) -> Real {
        Real(self.0.sin(self.bits(), RM, &mut ctx.consts()))
    }

    pub fn cos(&self, ctx: &Context) -> Real {
        Real(self.0.cos(self.bits(), RM, &mut ctx.consts()))
    }

    pub fn atan(&self, ctx: &Context) -> Real {
        Real(self.0.atan(self.bits(), RM, &mut ctx.consts()))
    }

    /// Four-quadrant arctangent of `self / x`, in `(-π, π]`.
    pub fn atan2(&self, x: &Real, ctx: &Context) -> Real {
        let bits = self.p2(x);
        let pi = Real(ctx.consts().pi(bits, RM));
        if x.is_zero() {
            return match self.sign() {
                Ordering::Greater => pi.ldexp(-1),
                Ordering::Less => -pi.ldexp(-1),
                Ordering::Equal => Real::zero(bits),
            };
        }
        let a = (self / x).atan(ctx);
        if x.is_positive() {
            a
        } else if self.is_negative() {
            a - pi
        } else {
            a + pi
        }
    }

    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.0.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Total order for finite values; NaN compares equal to everything.
    pub fn cmp_total(&self, o: &Real) -> Ordering {
        match self.0.cmp(&o.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn max(self, o: Real) -> Real {
        if o > self {
            o
        } else {
            self
        }
    }

    pub fn min(self, o: Real) -> Real {
        if o < self {
            o
        } else {
            self
        }
    }

    /// Nearest `f64`. Values outside the `f64` range saturate to ±inf or 0.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if self.is_zero() {
            return 0.0;
        }
        let Some((m, _, s, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        // Mantissa is normalised with the top bit set in the last word.
        let mut top: u64 = 0;
        let mut taken = 0usize;
        for w in m.iter().rev() {
            if taken >= 64 {
                break;
            }
            top |= *w << (64 - WORD_BIT_SIZE - taken);
            taken += WORD_BIT_SIZE;
        }
        let v = ldexp_f64(top as f64, e as i64 - 64);
        if s == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering that parses back to the same value at this precision.
    pub fn to_decimal(&self, ctx: &Context) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // The formatter alone does not always emit enough digits to read
        // back the same value; widening first (exactly) fixes that.
        let mut wide = self.0.clone();
        let _ = wide.set_precision(self.bits() + 64, RM);
        match wide.format(Radix::Dec, RM, &mut ctx.consts()) {
            Ok(s) => s,
            Err(_) => "NaN".to_string(),
        }
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.25e-3`.
    pub fn to_sci(&self, sig: usize, ctx: &Context) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if !self.is_finite() {
            return self.to_decimal(ctx);
        }
        round_sci(&self.to_decimal(ctx), sig.max(1))
    }
}

/// `x * 2^k` without overflow in intermediate steps.
fn ldexp_f64(mut x: f64, mut k: i64) -> f64 {
    let step = |e: i64| f64::from_bits(((e + 1023) as u64) << 52);
    while k > 1000 {
        x *= step(1000);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= step(-1000);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * step(k)
}

/// Round a decimal string produced by the formatter to `sig` digits.
fn round_sci(s: &str, sig: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let point = mant.find('.').unwrap_or(mant.len());
    let mut digits: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    // Decimal exponent of the first digit.
    let mut e10 = exp + point as i64 - 1;
    let lead = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
    digits.drain(..lead);
    e10 -= lead as i64;
    if digits.is_empty() {
        return "0".to_string();
    }
    if digits.len() > sig {
        let up = digits[sig] >= 5;
        digits.truncate(sig);
        if up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    e10 += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((b'0' + digits[0]) as char);
    if digits.len() > 1 {
        out.push('.');
        for d in &digits[1..] {
            out.push((b'0' + d) as char);
        }
    }
    if e10 != 0 {
        out.push('e');
        out.push_str(&e10.to_string());
    }
    out
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialEq for Real {
    fn eq(&self, o: &Real) -> bool {
        self.0.cmp(&o.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Real) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $astro:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                Real(self.0.$astro(&o.0, self.p2(o), RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                (&self).$m(o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                self.$m(&o)
            }
        }
    };
}

bin_op!(Add, add, add);
bin_op!(Sub, sub, sub);
bin_op!(Mul, mul, mul);
bin_op!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, o: &Real) {
        *self = &*self + o;
    }
}

impl AddAssign<Real> for Real {
    fn add_assign(&mut self, o: Real) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, o: &Real) {
        *self = &*self - o;
    }
}

impl SubAssign<Real> for Real {
    fn sub_assign(&mut self, o: Real) {
        *self = &*self - &o;
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, o: &Real) {
        *self = &*self * o;
    }
}
