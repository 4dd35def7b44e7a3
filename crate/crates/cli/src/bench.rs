//! Benchmark harness: AGQ against Gauss–Legendre on analytic integrands,
//! monomial sweeps, Hankel spectra and exponential-sum demos.

use std::time::{Duration, Instant};

use agq_core::agq::{build_rule, ErrorCertificate, QuadratureRule, RuleOptions, Stopping};
use agq_core::expsum::{build_expsum, ExpSumApprox, ExpSumOptions};
use agq_core::measures::{MomentSequence, SampleGrid};
use agq_core::numerics::{singular_values, Complex, Context, DenseMatrix, Real};
use agq_core::reference::{gauss_legendre, ClassicalRule};
use agq_core::Error;
use rayon::prelude::*;

use crate::bessel::bessel_j;
use crate::error::Result;
use crate::measure::MeasureSpec;

/// Integrands with a power series on the integration interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrand {
    /// `log(1 - x/1.05)` on `[-1, 1]`.
    Log,
    /// `1/(1 - x/1.05)` on `[-1, 1]`.
    Geometric,
    /// `e^{-10x}` on `[0, 1]`.
    Exp,
}

impl Integrand {
    pub fn name(self) -> &'static str {
        match self {
            Integrand::Log => "log(1-x/1.05)",
            Integrand::Geometric => "1/(1-x/1.05)",
            Integrand::Exp => "exp(-10x)",
        }
    }

    pub fn measure(self) -> MeasureSpec {
        match self {
            Integrand::Exp => MeasureSpec::Lebesgue01,
            _ => MeasureSpec::LebesguePm1,
        }
    }

    /// Taylor coefficients at 0, truncated once the remaining terms are
    /// below `10^-(P-10)`.
    pub fn series(self, ctx: &Context) -> Vec<Real> {
        let cut = ctx.tol(10);
        let mut out = vec![ctx.zero()];
        match self {
            Integrand::Log | Integrand::Geometric => {
                let r = ctx.ratio(20, 21);
                if self == Integrand::Geometric {
                    out[0] = ctx.one();
                }
                let mut p = ctx.one();
                // Tail after n is below r^n / (1 - r) = 21 r^n.
                for n in 1.. {
                    p = &p * &r;
                    let c = if self == Integrand::Log { -p.div_i64(n) } else { p.clone() };
                    out.push(c);
                    if p.mul_i64(21) < cut {
                        break;
                    }
                }
            }
            Integrand::Exp => {
                out[0] = ctx.one();
                let mut t = ctx.one();
                for n in 1.. {
                    t = t.mul_i64(-10).div_i64(n);
                    out.push(t.clone());
                    if t.abs().mul_i64(2) < cut && n > 20 {
                        break;
                    }
                }
            }
        }
        out
    }
}

/// One published row: node count, listed order and the published errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableSpec {
    pub nodes: usize,
    /// Listed as the number of Hankel rows, so the order is one less.
    pub listed_order: usize,
    pub ref_agq: f64,
    pub ref_gl: f64,
}

const fn row(nodes: usize, listed_order: usize, ref_agq: f64, ref_gl: f64) -> TableSpec {
    TableSpec { nodes, listed_order, ref_agq, ref_gl }
}

pub const TABLE_LOG: [TableSpec; 5] = [
    row(10, 75, 2.16e-8, 1.39e-4),
    row(15, 100, 1.08e-8, 3.94e-6),
    row(20, 150, 2.05e-11, 1.26e-7),
    row(25, 200, 3.99e-14, 4.31e-9),
    row(30, 250, 1.61e-15, 1.54e-10),
];

pub const TABLE_GEOMETRIC: [TableSpec; 6] = [
    row(10, 75, 5.81e-5, 8.15e-3),
    row(15, 100, 2.20e-6, 3.60e-4),
    row(20, 150, 4.26e-9, 1.56e-5),
    row(25, 200, 1.58e-11, 6.76e-7),
    row(30, 250, 4.01e-13, 2.92e-8),
    row(35, 300, 1.77e-15, 1.25e-9),
];

pub const TABLE_EXP: [TableSpec; 4] = [
    row(5, 15, 1.09e-6, 8.82e-5),
    row(7, 7, 1.29e-7, 1.29e-7),
    row(10, 10, 1.02e-12, 1.02e-12),
    row(12, 12, 4.44e-16, 4.44e-16),
];

/// Integrand and published rows for benchmark `id` (2, 3 or 4).
pub fn table(id: u8) -> Option<(Integrand, &'static [TableSpec])> {
    match id {
        2 => Some((Integrand::Log, &TABLE_LOG)),
        3 => Some((Integrand::Geometric, &TABLE_GEOMETRIC)),
        4 => Some((Integrand::Exp, &TABLE_EXP)),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub integrand: Integrand,
    pub spec: TableSpec,
    pub order: usize,
    pub agq_error: Real,
    pub classical_error: Real,
    /// Certificate on the degree `≤ N + d` part of the series plus the
    /// measured error of the remainder.
    pub bound: Real,
    pub runtime: Duration,
    pub rule: QuadratureRule,
    pub certificate: ErrorCertificate,
}

/// `|Σ c_n (Q_n - μ_n)|` with `Q_n` the quadrature of `x^n`.
fn series_error(c: &[Real], q: &[Complex], mu: &[Complex], bits: usize) -> Complex {
    c.iter()
        .zip(q.iter().zip(mu))
        .fold(Complex::zero(bits), |s, (c, (q, m))| s + (q - m).scale(c))
}

/// Gauss–Legendre moved to `[0, 1]` when the integrand lives there.
fn classical_sums(gl: &ClassicalRule, integrand: Integrand, n_max: usize, ctx: &Context) -> Vec<Complex> {
    let (nodes, weights): (Vec<Real>, Vec<Real>) = match integrand {
        Integrand::Exp => gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(x, w)| ((x + &ctx.one()).ldexp(-1), w.ldexp(-1)))
            .unzip(),
        _ => (gl.nodes.clone(), gl.weights.clone()),
    };
    ClassicalRule { family: gl.family, nodes, weights }
        .monomial_sums(n_max)
        .into_iter()
        .map(Complex::from_real)
        .collect()
}

/// One table row at `digits` digits.
pub fn bench_row(integrand: Integrand, spec: TableSpec, digits: u32) -> Result<BenchRow> {
    let start = Instant::now();
    let ctx = Context::new(digits);
    let bits = ctx.bits();
    let order = spec.listed_order - 1;
    let c = integrand.series(&ctx);
    let n_max = c.len() - 1;
    let mu = integrand.measure().moments(n_max.max(order + spec.nodes + 1), &ctx)?;
    let (rule, cert) = build_rule(&mu, order, &RuleOptions::new(Stopping::Nodes(spec.nodes)), &ctx)?;
    let q = rule.monomial_sums(n_max);
    let agq_error = series_error(&c, &q, mu.values(), bits).abs();
    let gl = gauss_legendre(spec.nodes, &ctx)?;
    let g = classical_sums(&gl, integrand, n_max, &ctx);
    let classical_error = series_error(&c, &g, mu.values(), bits).abs();
    let top = cert.max_degree().min(n_max);
    let b = cert.monomial_bounds(top)?;
    let mut bound = Real::zero(bits);
    for n in 0..=n_max {
        let term = if n <= top { &b[n] * &c[n].abs() } else { (&q[n] - &mu.values()[n]).abs() * c[n].abs() };
        bound += term;
    }
    Ok(BenchRow {
        integrand,
        spec,
        order,
        agq_error,
        classical_error,
        bound,
        runtime: start.elapsed(),
        rule,
        certificate: cert,
    })
}

/// All rows of a table, computed in parallel and returned in table order.
pub fn bench_table(id: u8, digits: u32) -> Result<Vec<BenchRow>> {
    let (integrand, rows) = table(id).ok_or_else(|| crate::error::CliError::Usage(format!("no table {id}; expected 2, 3 or 4")))?;
    rows.par_iter().map(|s| bench_row(integrand, *s, digits)).collect()
}

/// Measured error and certificate for `x^n` (or `e^{inx}`), `n = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub n: usize,
    pub error: Real,
    /// `None` past the certified degree `N + d`.
    pub bound: Option<Real>,
}

pub fn sweep(rule: &QuadratureRule, cert: &ErrorCertificate, exact: &MomentSequence, n_max: usize) -> Result<Vec<SweepPoint>> {
    if exact.len() <= n_max {
        return Err(Error::NotEnoughMoments { needed: n_max + 1, available: exact.len() }.into());
    }
    let q = rule.monomial_sums(n_max);
    let top = cert.max_degree().min(n_max);
    let b = cert.monomial_bounds(top)?;
    Ok(q.iter()
        .zip(exact.values())
        .enumerate()
        .map(|(n, (q, m))| SweepPoint { n, error: (q - m).abs(), bound: b.get(n).cloned() })
        .collect())
}

/// Singular values of the `rows x cols` Hankel matrix `m_{i+j}`.
pub fn hankel_spectrum(measure: &MeasureSpec, rows: usize, cols: usize, ctx: &Context) -> Result<Vec<Real>> {
    if rows == 0 || cols == 0 {
        return Err(crate::error::CliError::Usage("matrix size must be positive".into()));
    }
    let mu = measure.moments(rows + cols - 2, ctx)?;
    if mu.is_zero_measure() {
        return Err(Error::ZeroMeasure.into());
    }
    if mu.len() < rows + cols - 1 {
        return Err(Error::NotEnoughMoments { needed: rows + cols - 1, available: mu.len() }.into());
    }
    let v = mu.values();
    Ok(if mu.is_real() {
        singular_values(&DenseMatrix::from_fn(rows, cols, |i, j| v[i + j].re.clone())?, ctx)?
    } else {
        singular_values(&DenseMatrix::from_fn(rows, cols, |i, j| v[i + j].clone())?, ctx)?
    })
}

/// Exponential-sum demos.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    Bessel0,
    Bessel25,
    Dirichlet,
}

impl std::str::FromStr for Demo {
    type Err = crate::error::CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel0" => Ok(Demo::Bessel0),
            "bessel25" => Ok(Demo::Bessel25),
            "dirichlet" => Ok(Demo::Dirichlet),
            _ => Err(crate::error::CliError::Usage(format!("unknown demo {s:?}; expected bessel0, bessel25 or dirichlet"))),
        }
    }
}

pub const BESSEL_SAMPLES: usize = 800;
pub const BESSEL_TERMS: usize = 40;
pub const DIRICHLET_ORDER: u32 = 200;
pub const DIRICHLET_TERMS: usize = 80;
pub const DIRICHLET_SAMPLES: usize = 1000;

/// `J_ν(100πx)` at `x = n/M`, `n = 0..=M`.
pub fn bessel_grid(nu: usize, m: usize, ctx: &Context) -> Result<SampleGrid> {
    let k = ctx.pi().mul_i64(100);
    let grid = SampleGrid::from_fn(ctx.zero(), ctx.one(), m, |x| Complex::from_real(bessel_j(nu, &(&k * x), ctx)))?;
    Ok(grid)
}

/// Build a demo approximation. Bessel demos honour `stopping` and
/// `max_degree`; the Dirichlet demo always uses its fixed term count.
pub fn run_demo(
    demo: Demo,
    stopping: Stopping,
    max_degree: Option<usize>,
    ctx: &Context,
) -> Result<(ExpSumApprox, Option<SampleGrid>)> {
    match demo {
        Demo::Bessel0 | Demo::Bessel25 => {
            let nu = if demo == Demo::Bessel0 { 0 } else { 25 };
            let grid = bessel_grid(nu, BESSEL_SAMPLES, ctx)?;
            let mut opts = ExpSumOptions::new(stopping);
            opts.max_degree = max_degree;
            let e = build_expsum(&grid, &opts, ctx)?;
            Ok((e, Some(grid)))
        }
        Demo::Dirichlet => Ok((
            agq_core::expsum::dirichlet_kernel_demo(DIRICHLET_ORDER, DIRICHLET_TERMS, DIRICHLET_SAMPLES, ctx)?,
            None,
        )),
    }
}
