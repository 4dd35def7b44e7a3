use alloc::string::String;
use alloc::vec::Vec;

use super::certificate::ErrorCertificate;
use super::quasi::{find_quasiorthogonal, nodes_from_poly, QuasiPoly, SearchOptions, Seed, Stopping};
use crate::measures::{MomentKind, MomentSequence};
use crate::numerics::{Complex, Context, DenseMatrix, Polynomial, Real};
use crate::{Error, Result};

/// Options for [`build_rule`].
#[derive(Clone, Debug)]
pub struct RuleOptions {
    pub stopping: Stopping,
    pub seed: Seed,
    pub max_degree: Option<usize>,
    /// Drop pairs with `|w_n| < prune_tol max |w_m|`. Zero disables pruning.
    pub prune_tol: Real,
}

impl RuleOptions {
    pub fn new(stopping: Stopping) -> Self {
        RuleOptions { stopping, seed: Seed::Epsilon, max_degree: None, prune_tol: Real::zero(64) }
    }

    fn search(&self) -> SearchOptions {
        SearchOptions { stopping: self.stopping.clone(), seed: self.seed.clone(), max_degree: self.max_degree }
    }
}

/// Nodes and weights of an approximate Gaussian quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<Complex>,
    pub weights: Vec<Complex>,
    pub order: usize,
    pub degree: usize,
    /// `‖H p̄ + h‖_∞`, the ε used by the certificate.
    pub epsilon: Real,
    pub residual_2: Real,
    pub kind: MomentKind,
    pub descriptor: String,
    pub precision_digits: u32,
    /// `p_0..p_d` of the quasiorthogonal polynomial.
    pub poly: Vec<Complex>,
    /// `(node, weight)` pairs removed by pruning.
    pub pruned: Vec<(Complex, Complex)>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_n f(x_n)`. For trigonometric rules `f` receives `z_n` and the
    /// monomial `e^{inx}` corresponds to `z^n`.
    pub fn integrate(&self, mut f: impl FnMut(&Complex) -> Complex) -> Complex {
        let bits = self.nodes.first().map_or(64, Complex::bits);
        let mut s = Complex::zero(bits);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s = s + w * &f(x);
        }
        s
    }

    /// `Σ w_n x_n^k` for `k = 0..=n_max` in one pass.
    pub fn monomial_sums(&self, n_max: usize) -> Vec<Complex> {
        let bits = self.nodes.first().map_or(64, Complex::bits);
        let mut pw: Vec<Complex> = self.weights.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for _ in 0..=n_max {
            let mut s = Complex::zero(bits);
            for p in &pw {
                s = s + p;
            }
            out.push(s);
            for (p, x) in pw.iter_mut().zip(&self.nodes) {
                *p = &*p * x;
            }
        }
        out
    }
}

/// Coefficients of the Lagrange basis; row `n` holds `[ℓ_n]_0..[ℓ_n]_d`.
pub fn lagrange_coefficients(nodes: &[Complex], ctx: &Context) -> Result<DenseMatrix<Complex>> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("no nodes".into()));
    }
    let bits = ctx.bits();
    let tol = ctx.tol(20);
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let scale = nodes[i].abs().max(Real::one(bits));
            if (&nodes[i] - &nodes[j]).abs() <= &tol * &scale {
                return Err(Error::NodeCollision { first: i, second: j });
            }
        }
    }
    let full = Polynomial::from_roots(nodes, bits);
    let rows: Vec<Vec<Complex>> = nodes
        .iter()
        .enumerate()
        .map(|(n, xn)| {
            let (q, _) = full.div_linear(xn);
            let mut den = Complex::one(bits);
            for (m, xm) in nodes.iter().enumerate() {
                if m != n {
                    den = &den * &(xn - xm);
                }
            }
            let inv = den.recip();
            q.coeffs().iter().map(|c| c * &inv).collect()
        })
        .collect();
    DenseMatrix::from_rows(rows)
}

/// `w_n = Σ_k [ℓ_n]_k m_k`.
pub fn compute_weights(nodes: &[Complex], moments: &[Complex], ctx: &Context) -> Result<Vec<Complex>> {
    let l = lagrange_coefficients(nodes, ctx)?;
    if moments.len() < nodes.len() {
        return Err(Error::NotEnoughMoments { needed: nodes.len(), available: moments.len() });
    }
    Ok((0..l.rows())
        .map(|n| {
            let mut s = Complex::zero(ctx.bits());
            for (c, m) in l.row(n).iter().zip(moments) {
                s = s + c * m;
            }
            s
        })
        .collect())
}

/// Quasiorthogonal polynomial, its zeros as nodes, Lagrange weights, and
/// the matching certificate.
pub fn build_rule(
    moments: &MomentSequence,
    order: usize,
    opts: &RuleOptions,
    ctx: &Context,
) -> Result<(QuadratureRule, ErrorCertificate)> {
    let q = find_quasiorthogonal(moments, order, &opts.search(), ctx)?;
    rule_from_poly(&q, moments, opts, ctx)
}

/// Finish a rule from an already computed polynomial.
pub fn rule_from_poly(
    q: &QuasiPoly,
    moments: &MomentSequence,
    opts: &RuleOptions,
    ctx: &Context,
) -> Result<(QuadratureRule, ErrorCertificate)> {
    let nodes = nodes_from_poly(q, ctx)?;
    let weights = compute_weights(&nodes, moments.values(), ctx)?;
    let cert = ErrorCertificate::new(q.coeffs.clone(), q.residual_inf.clone(), q.order)?;
    let (nodes, weights, pruned) = prune(nodes, weights, &opts.prune_tol);
    let rule = QuadratureRule {
        nodes,
        weights,
        order: q.order,
        degree: q.degree(),
        epsilon: q.residual_inf.clone(),
        residual_2: q.residual_2.clone(),
        kind: moments.kind(),
        descriptor: moments.descriptor().into(),
        precision_digits: ctx.digits(),
        poly: q.coeffs.clone(),
        pruned,
    };
    Ok((rule, cert))
}

type Pruned = (Vec<Complex>, Vec<Complex>, Vec<(Complex, Complex)>);

fn prune(nodes: Vec<Complex>, weights: Vec<Complex>, tol: &Real) -> Pruned {
    if !tol.is_positive() {
        return (nodes, weights, Vec::new());
    }
    let wmax = weights.iter().map(Complex::abs).fold(Real::zero(tol.bits()), Real::max);
    let cut = tol * &wmax;
    let mut keep_x = Vec::new();
    let mut keep_w = Vec::new();
    let mut dropped = Vec::new();
    for (x, w) in nodes.into_iter().zip(weights) {
        if w.abs() < cut {
            dropped.push((x, w));
        } else {
            keep_x.push(x);
            keep_w.push(w);
        }
    }
    (keep_x, keep_w, dropped)
}
