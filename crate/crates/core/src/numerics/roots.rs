// Dense kernels read clearer with explicit indices.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::complex::Complex;
use super::poly::Polynomial;
use super::real::{Context, Real};
use crate::{Error, Result};

/// Precision of the companion-matrix seeds.
const SEED_BITS: usize = 128;
const MAX_QR_ITERS: usize = 60;
const MAX_ABERTH_ITERS: usize = 500;

/// All roots of a monic polynomial, sorted by real then imaginary part.
///
/// Seeds come from the eigenvalues of the balanced companion matrix at
/// 128 bits and are polished by Aberth–Ehrlich iteration at the working
/// precision. A root counts as converged when
/// `|p(z)| ≤ 10^-(P-15) Σ |c_k| |z|^k`.
pub fn roots_monic(p: &Polynomial<Complex>, ctx: &Context) -> Result<Vec<Complex>> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    let bits = ctx.bits();
    if n == 0 {
        return Ok(Vec::new());
    }
    let c: Vec<Complex> = p.coeffs().iter().map(|v| v.with_bits(bits)).collect();
    if n == 1 {
        return Ok(vec![-&c[0]]);
    }
    let seeds = companion_eigenvalues(&c).unwrap_or_else(|_| circle_seeds(&c, ctx));
    let mut z: Vec<Complex> = seeds.into_iter().map(|s| s.with_bits(bits)).collect();
    aberth(&c, &mut z, ctx)?;
    sort_lexicographic(&mut z);
    Ok(z)
}

/// Sort by real part, ties broken by imaginary part.
pub fn sort_lexicographic(z: &mut [Complex]) {
    z.sort_by(|a, b| match a.re.cmp_total(&b.re) {
        Ordering::Equal => a.im.cmp_total(&b.im),
        o => o,
    });
}

fn abs_coeffs(c: &[Complex]) -> Vec<Real> {
    c.iter().map(Complex::abs).collect()
}

fn horner_abs(a: &[Real], r: &Real) -> Real {
    let mut acc = Real::zero(r.bits());
    for v in a.iter().rev() {
        acc = acc * r + v;
    }
    acc
}

fn aberth(c: &[Complex], z: &mut [Complex], ctx: &Context) -> Result<()> {
    let n = z.len();
    let bits = ctx.bits();
    let p = Polynomial::new(c.to_vec());
    let ac = abs_coeffs(c);
    let tol = ctx.tol(15);
    let tiny = ctx.tol(25);
    let mut done = vec![false; n];
    let mut polished = vec![false; n];
    let mut worst = 0.0f64;
    for _ in 0..MAX_ABERTH_ITERS {
        let mut all = true;
        worst = 0.0;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pz, dpz) = p.eval_with_derivative(&z[i]);
            let scale = horner_abs(&ac, &z[i].abs());
            let ok = pz.abs() <= &tol * &scale;
            if ok && polished[i] {
                done[i] = true;
                continue;
            }
            if !ok {
                all = false;
                if !scale.is_zero() {
                    worst = worst.max((pz.abs() / &scale).to_f64());
                }
            }
            if pz.is_zero() {
                done[i] = true;
                continue;
            }
            let mut sum = Complex::zero(bits);
            let mut clash = false;
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = &z[i] - zj;
                    if d.is_zero() {
                        clash = true;
                        break;
                    }
                    sum = sum + d.recip();
                }
            }
            if clash || dpz.is_zero() {
                // Deterministic nudge off a coincident point or critical point.
                let k = ctx.int(i as i64 + 1);
                let bump = Complex::new(&tiny * &k, &tiny * &(&k + &ctx.one()));
                z[i] = &z[i] + &bump.scale(&(z[i].abs() + ctx.one()));
                all = false;
                continue;
            }
            let ratio = &pz / &dpz;
            let den = Complex::one(bits) - &ratio * &sum;
            let step = if den.is_zero() { ratio } else { &ratio / &den };
            z[i] = &z[i] - &step;
            if ok {
                polished[i] = true;
            }
        }
        // A root is marked done on the pass after its polishing step.
        if all && done.iter().all(|&d| d) {
            return Ok(());
        }
    }
    if done.iter().all(|&d| d) {
        return Ok(());
    }
    Err(Error::RootsNotConverged { worst })
}

fn circle_seeds(c: &[Complex], ctx: &Context) -> Vec<Complex> {
    let n = c.len() - 1;
    let bits = ctx.bits();
    let mut r = Real::zero(bits);
    for (k, ck) in c.iter().enumerate().take(n) {
        let a = ck.abs();
        if a.is_zero() {
            continue;
        }
        let root = (a.ln(ctx) / ctx.int((n - k) as i64)).exp(ctx);
        r = r.max(root);
    }
    let two_pi = ctx.pi().ldexp(1);
    (0..n)
        .map(|k| {
            let t = &two_pi * &ctx.ratio(k as i64, n as i64) + ctx.ratio(2, 5);
            Complex::cis(&t, ctx).scale(&r)
        })
        .collect()
}

/// Eigenvalues of the companion matrix of the monic polynomial `c`
/// computed in low precision.
fn companion_eigenvalues(c: &[Complex]) -> Result<Vec<Complex>> {
    let n = c.len() - 1;
    let zero = Complex::zero(SEED_BITS);
    let mut h = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        h[0][j] = -c[n - 1 - j].with_bits(SEED_BITS);
    }
    for i in 1..n {
        h[i][i - 1] = Complex::one(SEED_BITS);
    }
    balance(&mut h);
    hessenberg_eigenvalues(h)
}

/// Diagonal similarity by powers of two equalising row and column norms.
fn balance(h: &mut [Vec<Complex>]) {
    let n = h.len();
    for _ in 0..50 {
        let mut changed = false;
        for i in 0..n {
            let mut col = 0.0f64;
            let mut row = 0.0f64;
            for j in 0..n {
                if j != i {
                    col += h[j][i].abs1().to_f64();
                    row += h[i][j].abs1().to_f64();
                }
            }
            if col == 0.0 || row == 0.0 || !col.is_finite() || !row.is_finite() {
                continue;
            }
            // Find f = 2^e with col f ≈ row / f.
            let mut e = 0i32;
            let mut c = col;
            while c < row / 2.0 {
                c *= 4.0;
                e += 1;
            }
            while c >= row * 2.0 {
                c /= 4.0;
                e -= 1;
            }
            let f = f64::from_bits(((e + 1023) as u64) << 52);
            if e != 0 && (c + row) / f < 0.95 * (col + row) {
                changed = true;
                for j in 0..n {
                    h[i][j] = ldexp_c(&h[i][j], -e);
                    h[j][i] = ldexp_c(&h[j][i], e);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn ldexp_c(z: &Complex, k: i32) -> Complex {
    Complex::new(z.re.ldexp(k), z.im.ldexp(k))
}

fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex>>) -> Result<Vec<Complex>> {
    let n = h.len();
    let eps = Real::one(SEED_BITS).ldexp(-(SEED_BITS as i32) + 6);
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut norm = Real::zero(SEED_BITS);
    for row in &h {
        for v in row {
            norm = norm.max(v.abs1());
        }
    }
    loop {
        if hi == 0 {
            eig.push(h[0][0].clone());
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[lo - 1][lo - 1].abs1() + h[lo][lo].abs1();
            if s.is_zero() {
                s = norm.clone();
            }
            if h[lo][lo - 1].abs1() <= &eps * &s {
                h[lo][lo - 1] = Complex::zero(SEED_BITS);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig.push(h[hi][hi].clone());
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        if iters > MAX_QR_ITERS {
            return Err(Error::EigenNotConverged);
        }
        let mu = if iters.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            let bump = h[hi][hi - 1].abs1() + h[hi][hi].abs1();
            &h[hi][hi] + &Complex::new(bump.mul_i64(3).div_i64(4), bump.div_i64(3))
        } else {
            wilkinson(&h[hi - 1][hi - 1], &h[hi - 1][hi], &h[hi][hi - 1], &h[hi][hi])
        };
        qr_step(&mut h, lo, hi, &mu);
        if h.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::EigenNotConverged);
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson(a: &Complex, b: &Complex, c: &Complex, d: &Complex) -> Complex {
    let half = Real::one(SEED_BITS).ldexp(-1);
    let m = (a + d).scale(&half);
    let h = (a - d).scale(&half);
    let disc = (&(&h * &h) + &(b * c)).sqrt();
    let l1 = &m + &disc;
    let l2 = &m - &disc;
    if (&l1 - d).abs1() <= (&l2 - d).abs1() {
        l1
    } else {
        l2
    }
}

fn givens(x: &Complex, y: &Complex) -> (Real, Complex) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r.is_zero() {
        return (Real::one(SEED_BITS), Complex::zero(SEED_BITS));
    }
    if x.is_zero() {
        return (Real::zero(SEED_BITS), Complex::one(SEED_BITS));
    }
    let ax = x.abs();
    let c = &ax / &r;
    let s = (x.unscale(&ax) * y.conj()).unscale(&r);
    (c, s)
}

fn qr_step(h: &mut [Vec<Complex>], lo: usize, hi: usize, mu: &Complex) {
    for k in lo..=hi {
        h[k][k] = &h[k][k] - mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(&h[k][k], &h[k + 1][k]);
        let sc = s.conj();
        for j in k..=hi {
            let x = h[k][j].clone();
            let y = h[k + 1][j].clone();
            h[k][j] = x.scale(&c) + &s * &y;
            h[k + 1][j] = y.scale(&c) - &sc * &x;
        }
        rots.push((c, s));
    }
    for (k, (c, s)) in (lo..hi).zip(rots) {
        let sc = s.conj();
        for row in h.iter_mut().take(k + 2).skip(lo) {
            let x = row[k].clone();
            let y = row[k + 1].clone();
            row[k] = x.scale(&c) + &y * &sc;
            row[k + 1] = y.scale(&c) - &x * &s;
        }
    }
    for k in lo..=hi {
        h[k][k] = &h[k][k] + mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(ctx: &Context, re: f64, im: f64) -> Complex {
        Complex::new(ctx.from_f64(re), ctx.from_f64(im))
    }

    #[test]
    fn quadratic_complex_pair() {
        let ctx = Context::new(50);
        let p = Polynomial::monic(&[cx(&ctx, 1.0, 0.0), cx(&ctx, 0.0, 0.0)], ctx.bits());
        let r = roots_monic(&p, &ctx).unwrap();
        assert!((r[0].im.to_f64() + 1.0).abs() < 1e-45);
        assert!((r[1].im.to_f64() - 1.0).abs() < 1e-45);
    }

    #[test]
    fn triple_zero() {
        let ctx = Context::new(30);
        let z = cx(&ctx, 0.0, 0.0);
        let p = Polynomial::monic(&[z.clone(), z.clone(), z], ctx.bits());
        let r = roots_monic(&p, &ctx).unwrap();
        assert_eq!(r.len(), 3);
        for v in r {
            assert!(v.abs().to_f64() < 1e-9);
        }
    }

    #[test]
    fn not_monic_is_rejected() {
        let ctx = Context::new(20);
        let p = Polynomial::new(vec![cx(&ctx, 1.0, 0.0), cx(&ctx, 2.0, 0.0)]);
        assert_eq!(roots_monic(&p, &ctx).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn wilkinson_like_polynomial() {
        let ctx = Context::new(60);
        let want: Vec<Complex> = (1..=12).map(|k| Complex::from_real(ctx.int(k))).collect();
        let p = Polynomial::from_roots(&want, ctx.bits());
        let got = roots_monic(&p, &ctx).unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs().to_f64() < 1e-40, "{g:?} vs {w:?}");
        }
    }

    #[test]
    fn circle_fallback_converges() {
        let ctx = Context::new(40);
        let want: Vec<Complex> = [(0.5, 0.1), (-0.3, 0.0), (0.0, -0.9), (0.7, 0.7)]
            .iter()
            .map(|&(a, b)| cx(&ctx, a, b))
            .collect();
        let p = Polynomial::from_roots(&want, ctx.bits());
        let mut z = circle_seeds(p.coeffs(), &ctx);
        aberth(p.coeffs(), &mut z, &ctx).unwrap();
        sort_lexicographic(&mut z);
        let mut w = want.clone();
        sort_lexicographic(&mut w);
        for (g, e) in z.iter().zip(&w) {
            assert!((g - e).abs().to_f64() < 1e-30);
        }
    }
}
