//! Classical Gaussian rules, closed-form integrals and an adaptive
//! integrator, used as independent oracles for AGQ.

use alloc::format;
use alloc::vec::Vec;

use crate::agq::compute_weights;
use crate::measures::{chebyshev1, lebesgue_pm1};
use crate::numerics::{roots_monic, Complex, Context, Polynomial, Real};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalFamily {
    GaussLegendre,
    GaussChebyshev1,
}

/// A Gaussian rule with real nodes and weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalRule {
    pub family: ClassicalFamily,
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
}

impl ClassicalRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(&Real) -> Real) -> Real {
        let bits = self.nodes.first().map_or(64, Real::bits);
        self.nodes.iter().zip(&self.weights).fold(Real::zero(bits), |s, (x, w)| s + w * &f(x))
    }

    /// `Σ w_n x_n^k` for `k = 0..=n_max`.
    pub fn monomial_sums(&self, n_max: usize) -> Vec<Real> {
        let bits = self.nodes.first().map_or(64, Real::bits);
        let mut pw = self.weights.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for _ in 0..=n_max {
            out.push(pw.iter().fold(Real::zero(bits), |s, p| s + p));
            for (p, x) in pw.iter_mut().zip(&self.nodes) {
                *p = &*p * x;
            }
        }
        out
    }
}

/// Monic orthogonal polynomial from `P_{k+1} = x P_k - b_k P_{k-1}`.
fn three_term(n: usize, bits: usize, mut b: impl FnMut(usize) -> Real) -> Polynomial<Real> {
    let mut prev = alloc::vec![Real::one(bits)];
    let mut cur = alloc::vec![Real::zero(bits), Real::one(bits)];
    if n == 0 {
        return Polynomial::new(prev);
    }
    for k in 1..n {
        let bk = b(k);
        let mut next = alloc::vec![Real::zero(bits)];
        next.extend(cur.iter().cloned());
        for (i, p) in prev.iter().enumerate() {
            next[i] = &next[i] - &(&bk * p);
        }
        prev = cur;
        cur = next;
    }
    Polynomial::new(cur)
}

/// Monic Legendre polynomial of degree `n`.
pub fn legendre_monic(n: usize, ctx: &Context) -> Polynomial<Real> {
    three_term(n, ctx.bits(), |k| {
        let k = k as i64;
        ctx.ratio(k * k, 4 * k * k - 1)
    })
}

fn real_roots(p: &Polynomial<Real>, ctx: &Context) -> Result<Vec<Real>> {
    Ok(roots_monic(&p.to_complex(), ctx)?.into_iter().map(|z| z.re).collect())
}

fn weights_for(nodes: &[Real], moments: &[Complex], ctx: &Context) -> Result<Vec<Real>> {
    let z: Vec<Complex> = nodes.iter().cloned().map(Complex::from_real).collect();
    Ok(compute_weights(&z, moments, ctx)?.into_iter().map(|w| w.re).collect())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("a rule needs at least one node".into()));
    }
    Ok(())
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` from the recurrence, with
/// weights fitted to the Lebesgue moments.
pub fn gauss_legendre(n: usize, ctx: &Context) -> Result<ClassicalRule> {
    check_n(n)?;
    let nodes = real_roots(&legendre_monic(n, ctx), ctx)?;
    let mu = lebesgue_pm1(n, ctx)?;
    let weights = weights_for(&nodes, mu.values(), ctx)?;
    Ok(ClassicalRule { family: ClassicalFamily::GaussLegendre, nodes, weights })
}

/// `n`-point Gauss–Chebyshev rule: `x_k = cos((2k+1)π/(2n))`, `w_k = π/n`,
/// nodes ascending.
pub fn gauss_chebyshev1(n: usize, ctx: &Context) -> Result<ClassicalRule> {
    check_n(n)?;
    let pi = ctx.pi();
    let w = pi.div_i64(n as i64);
    let mut nodes: Vec<Real> = (0..n)
        .map(|k| pi.mul_i64(2 * k as i64 + 1).div_i64(2 * n as i64).cos(ctx))
        .collect();
    nodes.reverse();
    Ok(ClassicalRule { family: ClassicalFamily::GaussChebyshev1, nodes, weights: alloc::vec![w; n] })
}

/// Same rule as [`gauss_chebyshev1`] built from the recurrence and the
/// Chebyshev moments, for cross-checking.
pub fn gauss_chebyshev1_recurrence(n: usize, ctx: &Context) -> Result<ClassicalRule> {
    check_n(n)?;
    let p = three_term(n, ctx.bits(), |k| if k == 1 { ctx.ratio(1, 2) } else { ctx.ratio(1, 4) });
    let nodes = real_roots(&p, ctx)?;
    let mu = chebyshev1(n, ctx)?;
    let weights = weights_for(&nodes, mu.values(), ctx)?;
    Ok(ClassicalRule { family: ClassicalFamily::GaussChebyshev1, nodes, weights })
}

/// Measures with closed-form moments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMeasure {
    /// `∫_{-1}^{1} x^n dx`.
    LebesguePm1,
    /// `∫_0^1 x^n dx`.
    Lebesgue01,
    /// `∫_{-1}^{1} x^n / sqrt(1-x^2) dx`.
    Chebyshev1,
    /// `∫_0^1 x^n log(x) dx`.
    LogWeight01,
    /// `∫_{-1}^{1} e^{inx} dx`.
    TrigLebesguePm1,
}

impl core::str::FromStr for OracleMeasure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lebesgue_pm1" => OracleMeasure::LebesguePm1,
            "lebesgue_01" => OracleMeasure::Lebesgue01,
            "chebyshev1" => OracleMeasure::Chebyshev1,
            "logweight" | "logweight_01" => OracleMeasure::LogWeight01,
            "trig" | "trig_lebesgue_pm1" => OracleMeasure::TrigLebesguePm1,
            _ => return Err(Error::InvalidArgument(format!("unknown measure {s:?}"))),
        })
    }
}

/// Exact `n`-th moment of `m`, computed independently of [`crate::measures`].
pub fn oracle_integral(m: OracleMeasure, n: usize, ctx: &Context) -> Complex {
    let k = n as i64;
    let v = match m {
        OracleMeasure::LebesguePm1 if n % 2 == 1 => ctx.zero(),
        OracleMeasure::LebesguePm1 => ctx.ratio(2, k + 1),
        OracleMeasure::Lebesgue01 => ctx.ratio(1, k + 1),
        OracleMeasure::Chebyshev1 if n % 2 == 1 => ctx.zero(),
        OracleMeasure::Chebyshev1 => {
            // π (n-1)!! / n!!
            let mut r = ctx.pi();
            for j in (2..=k).step_by(2) {
                r = r.mul_i64(j - 1).div_i64(j);
            }
            r
        }
        OracleMeasure::LogWeight01 => -ctx.ratio(1, (k + 1) * (k + 1)),
        OracleMeasure::TrigLebesguePm1 if n == 0 => ctx.int(2),
        OracleMeasure::TrigLebesguePm1 => ctx.int(k).sin(ctx).ldexp(1).div_i64(k),
    };
    Complex::from_real(v)
}

const PANEL_NODES: usize = 20;
const MAX_DEPTH: u32 = 50;

/// Adaptive bisection with a 20-point Gauss–Legendre panel. A panel is
/// accepted when it agrees with its two halves to `tol` scaled by its
/// share of `[a, b]`.
pub fn adaptive_integrate(
    mut f: impl FnMut(&Real) -> Complex,
    a: &Real,
    b: &Real,
    tol: &Real,
    ctx: &Context,
) -> Result<Complex> {
    if b <= a {
        return Err(Error::InvalidArgument("need a < b".into()));
    }
    let rule = gauss_legendre(PANEL_NODES, ctx)?;
    let width = b - a;
    let panel = |f: &mut dyn FnMut(&Real) -> Complex, lo: &Real, hi: &Real| {
        let half = (hi - lo).ldexp(-1);
        let mid = (hi + lo).ldexp(-1);
        let mut s = Complex::zero(ctx.bits());
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            s = s + f(&(&mid + &(&half * x))).scale(w);
        }
        s.scale(&half)
    };
    let mut total = Complex::zero(ctx.bits());
    let mut stack = alloc::vec![(a.clone(), b.clone(), panel(&mut f, a, b), 0u32)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = (&lo + &hi).ldexp(-1);
        let left = panel(&mut f, &lo, &mid);
        let right = panel(&mut f, &mid, &hi);
        let split = &left + &right;
        let share = tol * &((&hi - &lo) / &width);
        if (&split - &whole).abs() <= share {
            total = total + split;
        } else if depth >= MAX_DEPTH {
            return Err(Error::IntegrationFailed { estimate: (total + split).re.to_f64() });
        } else {
            stack.push((mid.clone(), hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn legendre_small_rules() {
        let ctx = Context::new(50);
        let r1 = gauss_legendre(1, &ctx).unwrap();
        assert!(r1.nodes[0].abs() < ctx.tol(15) && close(&r1.weights[0], 2.0, 1e-40));
        let r2 = gauss_legendre(2, &ctx).unwrap();
        let s = ctx.ratio(1, 3).sqrt();
        assert!((&r2.nodes[1] - &s).abs() < ctx.tol(15));
        assert!((&r2.nodes[0] + &s).abs() < ctx.tol(15));
        let r3 = gauss_legendre(3, &ctx).unwrap();
        let t = ctx.ratio(3, 5).sqrt();
        assert!((&r3.nodes[2] - &t).abs() < ctx.tol(15));
        assert!((&r3.weights[0] - &ctx.ratio(5, 9)).abs() < ctx.tol(15));
        assert!((&r3.weights[1] - &ctx.ratio(8, 9)).abs() < ctx.tol(15));
    }

    #[test]
    fn chebyshev_closed_form_and_recurrence_agree() {
        let ctx = Context::new(50);
        let one = gauss_chebyshev1(1, &ctx).unwrap();
        assert!(one.nodes[0].abs() < ctx.tol(10));
        assert_eq!(one.weights[0], ctx.pi());
        for n in [2, 5, 9] {
            let a = gauss_chebyshev1(n, &ctx).unwrap();
            let b = gauss_chebyshev1_recurrence(n, &ctx).unwrap();
            for k in 0..n {
                assert!((&a.nodes[k] - &b.nodes[k]).abs() < ctx.tol(15));
                assert!((&a.weights[k] - &b.weights[k]).abs() < ctx.tol(15));
            }
        }
        let r5 = gauss_chebyshev1(5, &ctx).unwrap();
        let m8 = &r5.monomial_sums(8)[8];
        let exact = ctx.pi().mul_i64(35).div_i64(128);
        assert!((m8 - &exact).abs() < ctx.tol(15));
    }

    #[test]
    fn oracle_values() {
        let ctx = Context::new(40);
        assert_eq!(oracle_integral(OracleMeasure::LebesguePm1, 700, &ctx).re, ctx.ratio(2, 701));
        let t = oracle_integral(OracleMeasure::TrigLebesguePm1, 500, &ctx).re;
        assert!(close(&t, 2.0 * 500f64.sin() / 500.0, 1e-15));
        assert_eq!(oracle_integral(OracleMeasure::LogWeight01, 700, &ctx).re, -ctx.ratio(1, 701 * 701));
    }

    #[test]
    fn adaptive_simple_integrals() {
        let ctx = Context::new(40);
        let tol = ctx.pow10(-30);
        let one = adaptive_integrate(|_| Complex::one(ctx.bits()), &ctx.zero(), &ctx.one(), &tol, &ctx).unwrap();
        assert!((one.re - ctx.one()).abs() < tol);
        let sq = adaptive_integrate(|x| Complex::from_real(x.sqr()), &ctx.int(-1), &ctx.one(), &tol, &ctx).unwrap();
        assert!((sq.re - ctx.ratio(2, 3)).abs() < tol);
    }
}
