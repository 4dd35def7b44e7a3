//! JSON files for rules and exponential sums, and a small CSV writer.
//!
//! Every number is a decimal string at the precision of the run, so a
//! file read back at the same precision reproduces the values exactly.

use std::fmt::Write as _;
use std::path::Path;

use agq_core::agq::{ErrorCertificate, QuadratureRule};
use agq_core::expsum::{ExpSumApprox, ExpSumWarning};
use agq_core::numerics::{Complex, Context};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::measure::{parse_pairs, to_pair, MeasureSpec};

pub const RULE_FORMAT: &str = "agq-rule/1";
pub const EXPSUM_FORMAT: &str = "agq-expsum/1";

type Pair = [String; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrunedPair {
    pub node: Pair,
    pub weight: Pair,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleFile {
    pub format: String,
    pub precision_digits: u32,
    pub measure: MeasureSpec,
    pub kind: String,
    pub descriptor: String,
    pub order: usize,
    pub degree: usize,
    /// Highest monomial degree covered by the certificate.
    pub certified_degree: usize,
    pub epsilon: String,
    pub residual_2: String,
    pub poly: Vec<Pair>,
    pub nodes: Vec<Pair>,
    pub weights: Vec<Pair>,
    #[serde(default)]
    pub pruned: Vec<PrunedPair>,
}

impl RuleFile {
    pub fn new(rule: &QuadratureRule, measure: MeasureSpec, ctx: &Context) -> Self {
        let pairs = |v: &[Complex]| v.iter().map(|z| to_pair(z, ctx)).collect();
        RuleFile {
            format: RULE_FORMAT.into(),
            precision_digits: rule.precision_digits,
            measure,
            kind: rule.kind.as_str().into(),
            descriptor: rule.descriptor.clone(),
            order: rule.order,
            degree: rule.degree,
            certified_degree: rule.order + rule.degree,
            epsilon: rule.epsilon.to_decimal(ctx),
            residual_2: rule.residual_2.to_decimal(ctx),
            poly: pairs(&rule.poly),
            nodes: pairs(&rule.nodes),
            weights: pairs(&rule.weights),
            pruned: rule
                .pruned
                .iter()
                .map(|(x, w)| PrunedPair { node: to_pair(x, ctx), weight: to_pair(w, ctx) })
                .collect(),
        }
    }

    /// Context at the stored precision.
    pub fn context(&self) -> Context {
        Context::new(self.precision_digits)
    }

    pub fn to_rule(&self, ctx: &Context) -> Result<(QuadratureRule, ErrorCertificate)> {
        if self.format != RULE_FORMAT {
            return Err(CliError::Usage(format!("unsupported rule format {:?}", self.format)));
        }
        let poly = parse_pairs(&self.poly, ctx)?;
        let epsilon = ctx.parse(&self.epsilon)?;
        let cert = ErrorCertificate::new(poly.clone(), epsilon.clone(), self.order)?;
        let mut pruned = Vec::with_capacity(self.pruned.len());
        for p in &self.pruned {
            let x = parse_pairs(std::slice::from_ref(&p.node), ctx)?.remove(0);
            let w = parse_pairs(std::slice::from_ref(&p.weight), ctx)?.remove(0);
            pruned.push((x, w));
        }
        let rule = QuadratureRule {
            nodes: parse_pairs(&self.nodes, ctx)?,
            weights: parse_pairs(&self.weights, ctx)?,
            order: self.order,
            degree: self.degree,
            epsilon,
            residual_2: ctx.parse(&self.residual_2)?,
            kind: self.kind.parse()?,
            descriptor: self.descriptor.clone(),
            precision_digits: self.precision_digits,
            poly,
            pruned,
        };
        Ok((rule, cert))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpSumFile {
    pub format: String,
    pub precision_digits: u32,
    pub a: String,
    pub b: String,
    pub samples: usize,
    pub order: usize,
    pub degree: usize,
    pub epsilon: String,
    pub max_sample_residual: String,
    pub alpha: Vec<Pair>,
    pub beta: Vec<Pair>,
    pub nodes: Vec<Pair>,
    pub weights: Vec<Pair>,
    pub poly: Vec<Pair>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ExpSumFile {
    pub fn new(e: &ExpSumApprox, ctx: &Context) -> Self {
        let pairs = |v: &[Complex]| v.iter().map(|z| to_pair(z, ctx)).collect();
        ExpSumFile {
            format: EXPSUM_FORMAT.into(),
            precision_digits: ctx.digits(),
            a: e.a.to_decimal(ctx),
            b: e.b.to_decimal(ctx),
            samples: e.m,
            order: e.order,
            degree: e.degree,
            epsilon: e.epsilon.to_decimal(ctx),
            max_sample_residual: e.max_sample_residual.to_decimal(ctx),
            alpha: e.terms.iter().map(|(a, _)| to_pair(a, ctx)).collect(),
            beta: e.terms.iter().map(|(_, b)| to_pair(b, ctx)).collect(),
            nodes: pairs(&e.nodes),
            weights: pairs(&e.weights),
            poly: pairs(&e.poly),
            warnings: e.warnings.iter().map(describe_warning).collect(),
        }
    }

    /// Rebuilds the approximation; warnings are not parsed back.
    pub fn to_approx(&self, ctx: &Context) -> Result<ExpSumApprox> {
        if self.format != EXPSUM_FORMAT {
            return Err(CliError::Usage(format!("unsupported exponential sum format {:?}", self.format)));
        }
        let alpha = parse_pairs(&self.alpha, ctx)?;
        let beta = parse_pairs(&self.beta, ctx)?;
        if alpha.len() != beta.len() {
            return Err(CliError::Usage("alpha and beta differ in length".into()));
        }
        Ok(ExpSumApprox {
            terms: alpha.into_iter().zip(beta).collect(),
            a: ctx.parse(&self.a)?,
            b: ctx.parse(&self.b)?,
            m: self.samples,
            order: self.order,
            degree: self.degree,
            epsilon: ctx.parse(&self.epsilon)?,
            max_sample_residual: ctx.parse(&self.max_sample_residual)?,
            nodes: parse_pairs(&self.nodes, ctx)?,
            weights: parse_pairs(&self.weights, ctx)?,
            poly: parse_pairs(&self.poly, ctx)?,
            warnings: Vec::new(),
        })
    }
}

pub fn describe_warning(w: &ExpSumWarning) -> String {
    match w {
        ExpSumWarning::BranchCut { index } => {
            format!("node {index} lies on the negative real axis; principal branch used")
        }
        ExpSumWarning::Undersampled { relative_residual } => {
            format!("relative sample residual {relative_residual:.3e}; the grid may be too coarse")
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Format { path: path.into(), msg: e.to_string() })?;
    write_text(path, &(text + "\n"))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Format { path: path.into(), msg: e.to_string() })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(CliError::io(path))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(CliError::io(path))
}

/// Rows of already formatted cells under a header. Cells must not contain
/// commas.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use agq_core::agq::{build_rule, RuleOptions, Stopping};
    use agq_core::measures::lebesgue_pm1;

    #[test]
    fn rule_file_round_trip_is_exact() {
        let ctx = Context::new(40);
        let mu = lebesgue_pm1(30, &ctx).unwrap();
        let (rule, cert) = build_rule(&mu, 12, &RuleOptions::new(Stopping::Nodes(4)), &ctx).unwrap();
        let f = RuleFile::new(&rule, MeasureSpec::LebesguePm1, &ctx);
        let json = serde_json::to_string(&f).unwrap();
        let back: RuleFile = serde_json::from_str(&json).unwrap();
        let (r2, c2) = back.to_rule(&back.context()).unwrap();
        assert_eq!(r2, rule);
        assert_eq!(c2, cert);
    }

    #[test]
    fn csv_layout() {
        let mut c = Csv::new(&["n", "x"]);
        c.push(vec!["0".into(), "1.5".into()]);
        assert_eq!(c.render(), "n,x\n0,1.5\n");
    }
}
