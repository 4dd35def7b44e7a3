//! Bessel functions of the first kind for the exponential-sum demos.
//!
//! Large arguments use Miller's backward recurrence normalised by
//! `J_0 + 2 Σ J_{2k} = 1`; small ones use the ascending series.

use agq_core::numerics::{Context, Real};

/// Below this the ascending series loses fewer than about six digits.
const SERIES_LIMIT: f64 = 8.0;

/// `J_ν(x)`, `x ≥ 0`.
pub fn bessel_j(nu: usize, x: &Real, ctx: &Context) -> Real {
    if x.is_zero() {
        return if nu == 0 { ctx.one() } else { ctx.zero() };
    }
    if x.abs().to_f64() < SERIES_LIMIT {
        return bessel_j_series(nu, x, ctx);
    }
    miller(nu, x, ctx).swap_remove(nu)
}

/// `Σ_k (-1)^k (x/2)^{2k+ν} / (k! (k+ν)!)`.
pub fn bessel_j_series(nu: usize, x: &Real, ctx: &Context) -> Real {
    let h = x.ldexp(-1);
    let h2 = h.sqr();
    let mut term = h.powi(nu);
    for k in 1..=nu {
        term = term.div_i64(k as i64);
    }
    let mut sum = term.clone();
    let cut = ctx.tol(0);
    for k in 1.. {
        term = -(&term * &h2).div_i64((k * (k + nu)) as i64);
        sum += &term;
        if term.abs() <= &cut * &sum.abs() && k > 2 {
            break;
        }
    }
    sum
}

/// Starting index for the backward recurrence: far enough past `x` that
/// `J_n(x)` is below `10^-(P+20)`.
fn start_index(nu: usize, x: f64, digits: u32) -> usize {
    let target = -(digits as f64 + 20.0);
    let mut n = (x.ceil() as usize).max(nu) + 10;
    loop {
        let nf = n as f64;
        let est = nf * (std::f64::consts::E * x / (2.0 * nf)).log10() - 0.5 * (2.0 * std::f64::consts::PI * nf).log10();
        if est < target {
            return n + (n % 2);
        }
        n += 10;
    }
}

/// `J_0(x) .. J_nu(x)` by backward recurrence.
fn miller(nu: usize, x: &Real, ctx: &Context) -> Vec<Real> {
    let n0 = start_index(nu, x.to_f64(), ctx.digits());
    let two_over_x = x.recip().ldexp(1);
    let mut next = ctx.zero();
    let mut cur = ctx.pow10(-(ctx.digits() as i64));
    let mut out = vec![ctx.zero(); nu + 1];
    let mut norm = ctx.zero();
    for k in (0..=n0).rev() {
        if k <= nu {
            out[k] = cur.clone();
        }
        if k % 2 == 0 {
            norm += if k == 0 { cur.clone() } else { cur.ldexp(1) };
        }
        if k == 0 {
            break;
        }
        // J_{k-1} = (2k/x) J_k - J_{k+1}
        let prev = (&two_over_x * &cur).mul_i64(k as i64) - &next;
        next = cur;
        cur = prev;
    }
    let inv = norm.recip();
    out.into_iter().map(|v| v * &inv).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_values() {
        let ctx = Context::new(40);
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (0, 10.0, -0.245_935_764_451_348_3),
            (1, 1.0, 0.440_050_585_744_933_5),
            (0, 100.0, 0.019_985_850_304_223_12),
            (25, 30.0, 0.084_292_740_643_031_73),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, &ctx.from_f64(x), &ctx).to_f64();
            assert!((got - want).abs() < 1e-15, "J_{nu}({x}) = {got}");
        }
    }

    #[test]
    fn recurrence_matches_series() {
        let ctx = Context::new(60);
        for (nu, x) in [(0usize, 12.5), (3, 20.0), (25, 15.0)] {
            // The series loses about x/ln 10 digits at these arguments, so
            // run it with that many extra.
            let wide = Context::new(60 + 20);
            let xr = ctx.from_f64(x);
            let s = bessel_j_series(nu, &xr.with_bits(wide.bits()), &wide);
            let m = miller(nu, &xr, &ctx).swap_remove(nu);
            assert!((s.with_bits(ctx.bits()) - m).abs() < ctx.pow10(-50), "nu={nu} x={x}");
        }
    }
}
