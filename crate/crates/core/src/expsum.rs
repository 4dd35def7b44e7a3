//! Short exponential sums `f(x) ≈ Σ α_m e^{iβ_m x}` from uniform samples.
//!
//! The samples `f(x_n)`, `x_n = a + n(b-a)/M`, are read as trigonometric
//! moments. An AGQ rule for them gives nodes `z_m` and weights `w_m` with
//! `f(x_n) ≈ Σ w_m z_m^n`, and writing `z_m = e^{iξ_m}` turns the discrete
//! sum into a continuous one in `x`.

use alloc::format;
use alloc::vec::Vec;

use crate::agq::{find_quasiorthogonal, rule_from_poly, ErrorCertificate, RuleOptions, SearchOptions, Seed, Stopping};
use crate::measures::{moments_from_samples, SampleGrid};
use crate::numerics::{Complex, Context, Real};
use crate::{Error, Result};

/// Options for [`build_expsum`].
#[derive(Clone, Debug)]
pub struct ExpSumOptions {
    /// `Residual(ε)` picks the fewest terms whose least-squares residual is at
    /// most `ε`; `Nodes(k)` asks for exactly `k` terms.
    pub stopping: Stopping,
    /// Largest degree `d` tried, so at most `d_max + 1` terms. Defaults to
    /// `M/2 - 1`, the largest degree with a square or tall Hankel system.
    pub max_degree: Option<usize>,
}

impl ExpSumOptions {
    pub fn new(stopping: Stopping) -> Self {
        ExpSumOptions { stopping, max_degree: None }
    }
}

/// Non-fatal findings of [`build_expsum`].
#[derive(Clone, Debug, PartialEq)]
pub enum ExpSumWarning {
    /// Node `index` lies on the negative real axis; the principal branch
    /// `ξ = π` was used.
    BranchCut { index: usize },
    /// The sample residual is large relative to `max |f|`; the grid is
    /// probably too coarse for the bandwidth of `f`.
    Undersampled { relative_residual: f64 },
}

/// `f(x) ≈ Σ α_m e^{iβ_m x}` on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSumApprox {
    /// `(α_m, β_m)`.
    pub terms: Vec<(Complex, Complex)>,
    pub a: Real,
    pub b: Real,
    /// Sample budget: `M + 1` samples.
    pub m: usize,
    /// Internal AGQ order, `M - d - 1`.
    pub order: usize,
    pub degree: usize,
    /// `‖H p + h‖_∞` of the underlying rule.
    pub epsilon: Real,
    /// `max_n |f(x_n) - Σ w_m z_m^n|`.
    pub max_sample_residual: Real,
    /// Rule nodes `z_m` and weights `w_m`.
    pub nodes: Vec<Complex>,
    pub weights: Vec<Complex>,
    /// `p_0..p_d` of the quasiorthogonal polynomial.
    pub poly: Vec<Complex>,
    pub warnings: Vec<ExpSumWarning>,
}

impl ExpSumApprox {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Certificate of the underlying rule, valid for `z^n`, `n ≤ M - 1`.
    pub fn certificate(&self) -> Result<ErrorCertificate> {
        ErrorCertificate::new(self.poly.clone(), self.epsilon.clone(), self.order)
    }
}

/// Build an exponential sum for the samples in `grid`.
///
/// For degree `d` the internal order is `N = M - d - 1`, so every moment the
/// Hankel system touches is one of the `M + 1` samples. Degrees are first
/// screened with a single QR at the smallest order, then confirmed with the
/// full system.
pub fn build_expsum(grid: &SampleGrid, opts: &ExpSumOptions, ctx: &Context) -> Result<ExpSumApprox> {
    let m = grid.m();
    let d_max = opts.max_degree.unwrap_or((m / 2).saturating_sub(1));
    if m < d_max + 3 {
        return Err(Error::InvalidArgument(format!("M = {m} samples cannot support degree {d_max}; need M >= d_max + 3")));
    }
    let moments = moments_from_samples(grid, ctx)?;
    let order_of = |d: usize| m - d - 1;
    let (first, eps) = match &opts.stopping {
        Stopping::Nodes(k) => {
            if *k == 0 || k - 1 > d_max {
                return Err(Error::InvalidArgument(format!("{k} terms outside 1..={}", d_max + 1)));
            }
            (k - 1, None)
        }
        Stopping::Residual(eps) => {
            let mut so = SearchOptions::new(Stopping::Residual(eps.clone()));
            so.seed = Seed::Off;
            so.max_degree = Some(d_max);
            let q = find_quasiorthogonal(&moments, order_of(d_max), &so, ctx)?;
            (q.degree(), Some(eps))
        }
    };
    let mut history = Vec::new();
    for d in first..=d_max {
        let q = find_quasiorthogonal(&moments, order_of(d), &SearchOptions::new(Stopping::Nodes(d + 1)), ctx)?;
        let res = q.residual_2.clone();
        history.push((d, res.to_f64()));
        if eps.is_none_or(|e| res <= *e) {
            let (rule, _) = rule_from_poly(&q, &moments, &RuleOptions::new(Stopping::Nodes(d + 1)), ctx)?;
            return assemble(grid, rule.nodes, rule.weights, q.coeffs, q.order, rule.epsilon, ctx);
        }
    }
    Err(Error::DegreeExhausted { max_degree: d_max, history })
}

fn assemble(
    grid: &SampleGrid,
    nodes: Vec<Complex>,
    weights: Vec<Complex>,
    poly: Vec<Complex>,
    order: usize,
    epsilon: Real,
    ctx: &Context,
) -> Result<ExpSumApprox> {
    let bits = ctx.bits();
    let m = grid.m();
    let scale = Real::from_u64(m as u64, bits) / (grid.b() - grid.a());
    let cut = ctx.tol(20);
    let mut warnings = Vec::new();
    let mut terms = Vec::with_capacity(nodes.len());
    for (i, (z, w)) in nodes.iter().zip(&weights).enumerate() {
        if z.is_zero() {
            return Err(Error::ZeroNode { index: i });
        }
        if z.re.is_negative() && z.im.abs() <= &cut * &z.abs() {
            warnings.push(ExpSumWarning::BranchCut { index: i });
        }
        // ξ = -i log z, β = M ξ / (b - a), α = w e^{-i a β}.
        let lz = z.ln(ctx);
        let xi = Complex::new(lz.im, -lz.re);
        let beta = xi.scale(&scale);
        let phase = (&beta * &Complex::new(Real::zero(bits), -grid.a())).exp(ctx);
        terms.push((w * &phase, beta));
    }
    let resid = sample_residuals(grid, &nodes, &weights);
    let max_sample_residual = resid.iter().cloned().fold(Real::zero(bits), Real::max);
    let fmax = grid.samples().iter().map(Complex::abs).fold(Real::zero(bits), Real::max);
    if fmax.is_positive() {
        let rel = (&max_sample_residual / &fmax).to_f64();
        if rel > 1e-3 {
            warnings.push(ExpSumWarning::Undersampled { relative_residual: rel });
        }
    }
    Ok(ExpSumApprox {
        terms,
        a: grid.a().clone(),
        b: grid.b().clone(),
        m,
        order,
        degree: nodes.len() - 1,
        epsilon,
        max_sample_residual,
        nodes,
        weights,
        poly,
        warnings,
    })
}

/// `|f(x_n) - Σ w_m z_m^n|` for every sample.
fn sample_residuals(grid: &SampleGrid, nodes: &[Complex], weights: &[Complex]) -> Vec<Real> {
    let mut pw = weights.to_vec();
    grid.samples()
        .iter()
        .map(|f| {
            let mut s = f.clone();
            for p in &pw {
                s = s - p;
            }
            for (p, z) in pw.iter_mut().zip(nodes) {
                *p = &*p * z;
            }
            s.abs()
        })
        .collect()
}

/// `Σ α_m e^{iβ_m x}`.
pub fn eval_expsum(approx: &ExpSumApprox, x: &Real, ctx: &Context) -> Complex {
    let bits = ctx.bits();
    let ix = Complex::new(Real::zero(bits), x.clone());
    approx.terms.iter().fold(Complex::zero(bits), |s, (alpha, beta)| s + alpha * &(beta * &ix).exp(ctx))
}

/// Values at `x0 + k dx`, `k = 0..count`, using one exponential per term
/// and a running product.
pub fn eval_expsum_uniform(approx: &ExpSumApprox, x0: &Real, dx: &Real, count: usize, ctx: &Context) -> Vec<Complex> {
    let bits = ctx.bits();
    let i = Complex::i(bits);
    let mut cur: Vec<Complex> = Vec::with_capacity(approx.len());
    let mut step: Vec<Complex> = Vec::with_capacity(approx.len());
    for (alpha, beta) in &approx.terms {
        let ib = beta * &i;
        cur.push(alpha * &ib.scale(x0).exp(ctx));
        step.push(ib.scale(dx).exp(ctx));
    }
    (0..count)
        .map(|_| {
            let mut s = Complex::zero(bits);
            for (c, st) in cur.iter_mut().zip(&step) {
                s = s + &*c;
                *c = &*c * st;
            }
            s
        })
        .collect()
}

/// Per-sample absolute errors and their maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub max: Real,
    /// `(x_n, |f(x_n) - approx(x_n)|)`.
    pub per_sample: Vec<(Real, Real)>,
}

/// Compare `approx` against every sample of `grid`, evaluating the
/// continuous form.
pub fn residual_report(approx: &ExpSumApprox, grid: &SampleGrid, ctx: &Context) -> ResidualReport {
    let vals = eval_expsum_uniform(approx, grid.a(), &grid.step(), grid.m() + 1, ctx);
    let per_sample: Vec<(Real, Real)> = vals
        .iter()
        .zip(grid.samples())
        .enumerate()
        .map(|(n, (v, f))| (grid.point(n), (f - v).abs()))
        .collect();
    let max = per_sample.iter().map(|(_, e)| e.clone()).fold(Real::zero(ctx.bits()), Real::max);
    ResidualReport { max, per_sample }
}

/// `Σ_{k≥0} (-1)^k a_k` by the Cohen, Rodriguez Villegas and Zagier
/// acceleration. Accurate for totally monotone `a_k`; the term count is
/// chosen so the error is below `10^-(P-10) a_0`.
pub fn alternating_sum(mut a: impl FnMut(usize) -> Real, cap: usize, ctx: &Context) -> Result<Real> {
    let bits = ctx.bits();
    // Error is about 2 (3 + √8)^-n.
    let n = ((ctx.digits().saturating_sub(10) as f64 + 0.31) / 0.765_4).ceil() as usize + 1;
    if n > cap {
        return Err(Error::SeriesCap { needed: n, cap });
    }
    let rate = Real::from_u64(3, bits) + Real::from_u64(8, bits).sqrt();
    let mut dd = rate.powi(n);
    dd = (&dd + &dd.recip()).ldexp(-1);
    let mut b = Real::from_i64(-1, bits);
    let mut c = -&dd;
    let mut s = Real::zero(bits);
    let nn = n as i64;
    for k in 0..n {
        c = &b - &c;
        s += &c * &a(k);
        let k = k as i64;
        // b *= (k+n)(k-n) / ((k+1/2)(k+1))
        b = b.mul_i64(2 * (k + nn) * (k - nn)).div_i64((2 * k + 1) * (k + 1));
    }
    Ok(s / dd)
}

/// `G(y) = sin(Ω y)/π · Σ_{k≥0} (-1)^k/(y+k)` with `Ω = (2 N_k + 1)π`, the
/// half of the Dirichlet kernel `D(x) = G(x/2) + G(1 - x/2)` on `[0, 2]`.
pub fn dirichlet_half(nk: u32, y: &Real, ctx: &Context) -> Result<Real> {
    let bits = ctx.bits();
    let pi = ctx.pi();
    let w = 2 * nk as i64 + 1;
    if y.is_zero() {
        return Ok(Real::from_i64(w, bits));
    }
    let s = (&pi * y).mul_i64(w).sin(ctx);
    // Peel the k = 0 term so the remaining series starts at y + 1 ≥ 1.
    let y1 = y + &Real::one(bits);
    let tail = alternating_sum(|k| (&y1 + &Real::from_u64(k as u64, bits)).recip(), 100_000, ctx)?;
    Ok(&s / &pi * (y.recip() - tail))
}

/// `D_{N_k}(x) = sin(π(N_k + 1/2)x) / sin(πx/2)`, 401 at zero for `N_k = 200`.
pub fn dirichlet_kernel(nk: u32, x: &Real, ctx: &Context) -> Real {
    let bits = ctx.bits();
    let w = 2 * nk as i64 + 1;
    let half = (&ctx.pi() * x).ldexp(-1);
    if half.is_zero() {
        return Real::from_i64(w, bits);
    }
    half.mul_i64(w).sin(ctx) / half.sin(ctx)
}

/// Exponential sum for the Dirichlet kernel `D_{N_k}` on `[-1, 1]`.
///
/// A `terms/2`-term sum `E` for `G` on `[0, 1]` is fitted to `M + 1` samples
/// and composed as `D(x) = E(|x|/2) + E(1 - |x|/2)`. The returned
/// approximation lives on `[0, 2]`; evaluate `D(-x)` as `D(2 - x)` or by
/// symmetry. `max_sample_residual` is the maximum over the 2001-point grid
/// `x = -1 + k/1000`.
pub fn dirichlet_kernel_demo(nk: u32, terms: usize, m: usize, ctx: &Context) -> Result<ExpSumApprox> {
    if terms < 2 || !terms.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("term count must be even and positive, got {terms}")));
    }
    let bits = ctx.bits();
    let one = Real::one(bits);
    let mut samples = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let t = Real::from_u64(n as u64, bits) / Real::from_u64(m as u64, bits);
        samples.push(Complex::from_real(dirichlet_half(nk, &t, ctx)?));
    }
    let grid = SampleGrid::new(Real::zero(bits), one.clone(), m, samples)?;
    let half = build_expsum(&grid, &ExpSumOptions::new(Stopping::Nodes(terms / 2)), ctx)?;
    // E(1 - x/2) = Σ α e^{iβ} e^{-iβx/2} and E(x/2) = Σ α e^{iβx/2}.
    let mut out = Vec::with_capacity(terms);
    let i = Complex::i(bits);
    for (alpha, beta) in &half.terms {
        let shifted = alpha * &(beta * &i).exp(ctx);
        out.push((shifted, (-beta).scale(&one.ldexp(-1))));
    }
    for (alpha, beta) in &half.terms {
        out.push((alpha.clone(), beta.scale(&one.ldexp(-1))));
    }
    let mut d = ExpSumApprox { terms: out, a: Real::zero(bits), b: Real::from_u64(2, bits), ..half };
    d.max_sample_residual =
        dirichlet_residuals(&d, nk, ctx).into_iter().map(|(_, e)| e).fold(Real::zero(bits), Real::max);
    Ok(d)
}

/// `(x, |D(x) - approx(|x|)|)` over [`dirichlet_grid`].
pub fn dirichlet_residuals(approx: &ExpSumApprox, nk: u32, ctx: &Context) -> Vec<(Real, Real)> {
    let bits = ctx.bits();
    // D is even, so the 1001 values on [0, 1] cover the whole grid.
    let vals = eval_expsum_uniform(approx, &Real::zero(bits), &Real::one(bits).div_i64(1000), 1001, ctx);
    dirichlet_grid(ctx)
        .into_iter()
        .enumerate()
        .map(|(k, x)| {
            let v = &vals[k.abs_diff(1000)];
            let e = (v - &Complex::from_real(dirichlet_kernel(nk, &x, ctx))).abs();
            (x, e)
        })
        .collect()
}

/// `x = -1 + k/1000`, `k = 0..=2000`.
pub fn dirichlet_grid(ctx: &Context) -> Vec<Real> {
    let bits = ctx.bits();
    (0..=2000i64).map(|k| Real::from_i64(k - 1000, bits).div_i64(1000)).collect()
}
