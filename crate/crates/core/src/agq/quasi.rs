use alloc::format;
use alloc::vec::Vec;

use super::hankel::{check_len, dense, Moments};
use crate::measures::MomentSequence;
use crate::numerics::{
    lstsq_min_norm, norm2, numerical_rank, roots_monic, Complex, Context, IncrementalQr, Polynomial, Real, Scalar,
};
use crate::{Error, Result};

/// When the degree search stops.
#[derive(Clone, Debug, PartialEq)]
pub enum Stopping {
    /// Smallest degree whose least-squares residual `‖H p + h‖₂` is at most this.
    Residual(Real),
    /// Fixed node count `d + 1`.
    Nodes(usize),
}

/// Where the degree search starts.
#[derive(Clone, Debug, PartialEq)]
pub enum Seed {
    /// Numerical rank of the Hankel matrix at a relative threshold equal
    /// to the residual target.
    Epsilon,
    /// Numerical rank at the given relative threshold.
    Delta(Real),
    /// Start from degree 0.
    Off,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub stopping: Stopping,
    pub seed: Seed,
    /// Largest degree tried; defaults to `N - 1`.
    pub max_degree: Option<usize>,
}

impl SearchOptions {
    pub fn new(stopping: Stopping) -> Self {
        SearchOptions { stopping, seed: Seed::Epsilon, max_degree: None }
    }
}

/// Monic `p(x) = x^{d+1} + Σ p_k x^k` with its quasiorthogonality residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiPoly {
    /// `p_0..p_d`; the leading 1 is implicit.
    pub coeffs: Vec<Complex>,
    pub order: usize,
    /// `‖H p̄ + h‖_∞`.
    pub residual_inf: Real,
    /// `‖H p̄ + h‖₂`.
    pub residual_2: Real,
    /// Least-squares residual per degree tried.
    pub history: Vec<(usize, f64)>,
}

impl QuasiPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn polynomial(&self) -> Polynomial<Complex> {
        let bits = self.coeffs[0].bits();
        Polynomial::monic(&self.coeffs, bits)
    }
}

/// Search for a low-degree ε-quasiorthogonal polynomial of order `N`.
///
/// Degrees are tried upwards from the seed. Each step appends one Hankel
/// column to a Householder QR, so a step costs `O(N d)`. Near rank
/// deficiency the step falls back to a minimal-norm solve.
pub fn find_quasiorthogonal(
    moments: &MomentSequence,
    order: usize,
    opts: &SearchOptions,
    ctx: &Context,
) -> Result<QuasiPoly> {
    if moments.is_zero_measure() {
        return Err(Error::ZeroMeasure);
    }
    let (start, end, eps) = match &opts.stopping {
        Stopping::Nodes(k) => {
            if *k == 0 {
                return Err(Error::InvalidArgument("node count must be at least 1".into()));
            }
            if let Some(m) = opts.max_degree {
                if k - 1 > m {
                    return Err(Error::InvalidArgument(format!("{k} nodes exceed degree cap {m}")));
                }
            }
            (k - 1, k - 1, None)
        }
        Stopping::Residual(eps) => {
            if !eps.is_positive() {
                return Err(Error::InvalidArgument("residual target must be positive".into()));
            }
            let end = opts.max_degree.unwrap_or(order.saturating_sub(1));
            let start = match &opts.seed {
                Seed::Off => 0,
                Seed::Epsilon => seed_degree(moments, order, eps, end, ctx)?,
                Seed::Delta(d) => seed_degree(moments, order, d, end, ctx)?,
            };
            (start.min(end), end, Some(eps))
        }
    };
    check_len(moments.len(), order, start)?;
    let (coeffs, history) = match Moments::of(moments) {
        Moments::Real(v) => {
            let (c, h) = search(&v, order, start, end, eps, ctx)?;
            (c.into_iter().map(Complex::from_real).collect(), h)
        }
        Moments::Complex(v) => search(&v, order, start, end, eps, ctx)?,
    };
    let r = residual_vector(&coeffs, moments.values(), order);
    let bits = ctx.bits();
    let residual_inf = r.iter().fold(Real::zero(bits), |m, v| m.max(v.abs()));
    let residual_2 = norm2(&r, bits);
    Ok(QuasiPoly { coeffs, order, residual_inf, residual_2, history })
}

/// Numerical rank of a growing leading column block, minus one.
fn seed_degree(moments: &MomentSequence, order: usize, delta: &Real, max_degree: usize, ctx: &Context) -> Result<usize> {
    let avail = moments.len().saturating_sub(order + 1);
    let cap = (max_degree + 1).min(avail);
    if cap == 0 {
        return Ok(0);
    }
    let mut cols = 16.min(cap);
    loop {
        let r = match Moments::of(moments) {
            Moments::Real(v) => numerical_rank(&dense(&v, order + 1, cols)?, delta, ctx)?,
            Moments::Complex(v) => numerical_rank(&dense(&v, order + 1, cols)?, delta, ctx)?,
        };
        if r < cols || cols == cap {
            return Ok(r.saturating_sub(1));
        }
        cols = (2 * cols).min(cap);
    }
}

type Found<T> = (Vec<T>, Vec<(usize, f64)>);

fn search<T: Scalar>(
    v: &[T],
    order: usize,
    start: usize,
    end: usize,
    eps: Option<&Real>,
    ctx: &Context,
) -> Result<Found<T>> {
    let rows = order + 1;
    let bits = ctx.bits();
    let rank_tol = ctx.tol(10);
    let col = |j: usize| v[j..j + rows].to_vec();
    let mut qr = IncrementalQr::new(rows, bits);
    qr.push(&col(0))?;
    let mut history = Vec::new();
    for d in 0..=end {
        check_len(v.len(), order, d)?;
        let c = qr.project(&col(d + 1))?;
        if d >= start {
            let solved = if qr.cols() == d + 1 && qr.diag_ratio() > rank_tol {
                let rhs: Vec<T> = c[..=d].iter().map(Scalar::neg).collect();
                Some((qr.solve_r(&rhs), norm2(&c[d + 1..], bits)))
            } else {
                None
            };
            let (p, res) = match solved {
                Some(s) => s,
                None => {
                    let ls = lstsq_min_norm(&dense(v, rows, d + 1)?, &col(d + 1), ctx)?;
                    (ls.solution, ls.residual)
                }
            };
            history.push((d, res.to_f64()));
            if eps.is_none_or(|e| res <= *e) {
                return Ok((p, history));
            }
        }
        if d < end && qr.cols() < rows {
            qr.push_projected(c)?;
        }
    }
    Err(Error::DegreeExhausted { max_degree: end, history })
}

fn residual_vector(coeffs: &[Complex], mu: &[Complex], order: usize) -> Vec<Complex> {
    let d = coeffs.len() - 1;
    (0..=order)
        .map(|j| {
            let mut s = mu[d + 1 + j].clone();
            for (k, p) in coeffs.iter().enumerate() {
                s = s + p * &mu[k + j];
            }
            s
        })
        .collect()
}

/// `max_j |Σ_k p_k m_{k+j}|` over `j = 0..=N`, monic term included.
pub fn quasiorthogonality_residual(p: &QuasiPoly, moments: &MomentSequence, order: usize) -> Result<Real> {
    check_len(moments.len(), order, p.degree())?;
    let r = residual_vector(&p.coeffs, moments.values(), order);
    let bits = p.coeffs[0].bits();
    Ok(r.iter().fold(Real::zero(bits), |m, v| m.max(v.abs())))
}

/// Zeros of `p`, sorted by real then imaginary part.
pub fn nodes_from_poly(p: &QuasiPoly, ctx: &Context) -> Result<Vec<Complex>> {
    roots_monic(&p.polynomial(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{discrete, lebesgue_pm1, MomentKind};

    fn two_atoms(ctx: &Context, l: usize) -> MomentSequence {
        let one = Complex::one(ctx.bits());
        discrete(MomentKind::Power, &[-&one, one.clone()], &[one.clone(), one], l, ctx).unwrap()
    }

    #[test]
    fn two_atom_measure_is_annihilated() {
        let ctx = Context::new(60);
        let mu = two_atoms(&ctx, 30);
        let q = find_quasiorthogonal(&mu, 10, &SearchOptions::new(Stopping::Residual(ctx.pow10(-30))), &ctx).unwrap();
        assert_eq!(q.node_count(), 2);
        assert!((q.coeffs[0].re.to_f64() + 1.0).abs() < 1e-50);
        assert!(q.coeffs[1].abs().to_f64() < 1e-50);
        assert!(q.residual_inf.to_f64() < 1e-50);
        let nodes = nodes_from_poly(&q, &ctx).unwrap();
        assert!((nodes[0].re.to_f64() + 1.0).abs() < 1e-50);
        assert!((nodes[1].re.to_f64() - 1.0).abs() < 1e-50);
    }

    #[test]
    fn seed_off_gives_same_polynomial() {
        let ctx = Context::new(60);
        let mu = two_atoms(&ctx, 30);
        let mut o = SearchOptions::new(Stopping::Residual(ctx.pow10(-30)));
        o.seed = Seed::Off;
        let q = find_quasiorthogonal(&mu, 10, &o, &ctx).unwrap();
        assert_eq!(q.node_count(), 2);
        assert_eq!(q.history.len(), 2);
    }

    #[test]
    fn exhaustion_reports_history() {
        let ctx = Context::new(40);
        let mu = lebesgue_pm1(60, &ctx).unwrap();
        let mut o = SearchOptions::new(Stopping::Residual(ctx.pow10(-35)));
        o.seed = Seed::Off;
        o.max_degree = Some(3);
        match find_quasiorthogonal(&mu, 20, &o, &ctx) {
            Err(Error::DegreeExhausted { max_degree: 3, history }) => assert_eq!(history.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_measure_rejected() {
        let ctx = Context::new(20);
        let mu = MomentSequence::new(MomentKind::Power, alloc::vec![Complex::zero(ctx.bits()); 10], "zero").unwrap();
        let e = find_quasiorthogonal(&mu, 3, &SearchOptions::new(Stopping::Nodes(2)), &ctx).unwrap_err();
        assert_eq!(e, Error::ZeroMeasure);
    }

    #[test]
    fn legendre_from_square_system() {
        // With N = d the system is square and the solution is the monic
        // Legendre polynomial x^2 - 1/3.
        let ctx = Context::new(40);
        let mu = lebesgue_pm1(10, &ctx).unwrap();
        let q = find_quasiorthogonal(&mu, 1, &SearchOptions::new(Stopping::Nodes(2)), &ctx).unwrap();
        assert!((q.coeffs[0].re.to_f64() + 1.0 / 3.0).abs() < 1e-30);
        assert!(q.coeffs[1].abs().to_f64() < 1e-30);
        assert!(q.residual_2.to_f64() < 1e-35);
    }
}
