//! Moment sequences of the built-in measures and of sampled functions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::numerics::{Complex, Context, Real};
use crate::{Error, Result};

/// Whether the values are power moments `∫ x^n dα` or trigonometric
/// moments `∫ e^{inx} dα`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    Power,
    Trigonometric,
}

impl MomentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentKind::Power => "power",
            MomentKind::Trigonometric => "trigonometric",
        }
    }
}

impl core::str::FromStr for MomentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(MomentKind::Power),
            "trigonometric" | "trig" => Ok(MomentKind::Trigonometric),
            _ => Err(Error::InvalidArgument(format!("unknown moment kind {s:?}"))),
        }
    }
}

/// Moments `m_0..m_L` of a measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    kind: MomentKind,
    values: Vec<Complex>,
    descriptor: String,
}

impl MomentSequence {
    /// Rejects empty or non-finite input.
    pub fn new(kind: MomentKind, values: Vec<Complex>, descriptor: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("moment sequence is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("moment {i} is not finite")));
        }
        Ok(MomentSequence { kind, values, descriptor: descriptor.into() })
    }

    fn real(kind: MomentKind, values: Vec<Real>, descriptor: String) -> Result<Self> {
        Self::new(kind, values.into_iter().map(Complex::from_real).collect(), descriptor)
    }

    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Complex> {
        self.values.get(n)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// True when every moment is exactly zero.
    pub fn is_zero_measure(&self) -> bool {
        self.values.iter().all(Complex::is_zero)
    }

    /// True when every moment has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(Complex::is_real)
    }
}

/// Lebesgue measure on `[-1, 1]`: `2/(n+1)` for even `n`, 0 for odd.
pub fn lebesgue_pm1(l: usize, ctx: &Context) -> Result<MomentSequence> {
    let v = (0..=l)
        .map(|n| if n % 2 == 0 { ctx.ratio(2, n as i64 + 1) } else { ctx.zero() })
        .collect();
    MomentSequence::real(MomentKind::Power, v, "lebesgue on [-1,1]".into())
}

/// Lebesgue measure on `[0, 1]`: `1/(n+1)`.
pub fn lebesgue_01(l: usize, ctx: &Context) -> Result<MomentSequence> {
    let v = (0..=l).map(|n| ctx.ratio(1, n as i64 + 1)).collect();
    MomentSequence::real(MomentKind::Power, v, "lebesgue on [0,1]".into())
}

/// Weight `1/sqrt(1-x^2)` on `[-1, 1]`: `π binom(n, n/2) / 2^n` for even `n`.
pub fn chebyshev1(l: usize, ctx: &Context) -> Result<MomentSequence> {
    let mut v = Vec::with_capacity(l + 1);
    let mut even = ctx.pi();
    for n in 0..=l {
        if n % 2 == 0 {
            v.push(even.clone());
            // μ_{n+2} = μ_n (n+1)/(n+2)
            even = even * ctx.ratio(n as i64 + 1, n as i64 + 2);
        } else {
            v.push(ctx.zero());
        }
    }
    MomentSequence::real(MomentKind::Power, v, "chebyshev first kind on [-1,1]".into())
}

/// Signed measure `log(x) dx` on `[0, 1]`: `-1/(n+1)^2`.
pub fn logweight_01(l: usize, ctx: &Context) -> Result<MomentSequence> {
    let v = (0..=l)
        .map(|n| {
            let k = n as i64 + 1;
            -ctx.ratio(1, k * k)
        })
        .collect();
    MomentSequence::real(MomentKind::Power, v, "log(x) on [0,1]".into())
}

/// Trigonometric moments of Lebesgue measure on `[-1, 1]`:
/// `τ_0 = 2`, `τ_n = 2 sin(n)/n`.
pub fn trig_lebesgue_pm1(l: usize, ctx: &Context) -> Result<MomentSequence> {
    let v = (0..=l)
        .map(|n| {
            if n == 0 {
                ctx.int(2)
            } else {
                let x = ctx.int(n as i64);
                x.sin(ctx).ldexp(1) / x
            }
        })
        .collect();
    MomentSequence::real(MomentKind::Trigonometric, v, "trigonometric lebesgue on [-1,1]".into())
}

/// Finite combination of point masses, `m_n = Σ w_k a_k^n`.
pub fn discrete(kind: MomentKind, atoms: &[Complex], weights: &[Complex], l: usize, ctx: &Context) -> Result<MomentSequence> {
    if atoms.len() != weights.len() || atoms.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} atoms with {} weights",
            atoms.len(),
            weights.len()
        )));
    }
    let mut pw: Vec<Complex> = weights.iter().map(|w| w.with_bits(ctx.bits())).collect();
    let mut v = Vec::with_capacity(l + 1);
    for _ in 0..=l {
        let mut s = Complex::zero(ctx.bits());
        for p in &pw {
            s = s + p;
        }
        v.push(s);
        for (p, a) in pw.iter_mut().zip(atoms) {
            *p = &*p * a;
        }
    }
    MomentSequence::new(kind, v, format!("discrete measure with {} atoms", atoms.len()))
}

/// Moments from a caller-supplied closed form.
pub fn custom(
    kind: MomentKind,
    l: usize,
    descriptor: &str,
    mut moment: impl FnMut(usize) -> Complex,
) -> Result<MomentSequence> {
    MomentSequence::new(kind, (0..=l).map(&mut moment).collect(), descriptor)
}

/// Uniform samples `f(a + n(b-a)/M)` for `n = 0..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    a: Real,
    b: Real,
    m: usize,
    samples: Vec<Complex>,
}

impl SampleGrid {
    pub fn new(a: Real, b: Real, m: usize, samples: Vec<Complex>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("need M >= 2, got {m}")));
        }
        if b <= a || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidArgument("need a < b".into()));
        }
        if samples.len() != m + 1 {
            return Err(Error::InvalidArgument(format!("M = {m} needs {} samples, got {}", m + 1, samples.len())));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("sample {i} is not finite")));
        }
        Ok(SampleGrid { a, b, m, samples })
    }

    /// Sample `f` at the `M + 1` grid points.
    pub fn from_fn(a: Real, b: Real, m: usize, mut f: impl FnMut(&Real) -> Complex) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("need M >= 2, got {m}")));
        }
        let h = (&b - &a) / Real::from_u64(m as u64, a.bits());
        let samples = (0..=m).map(|n| f(&(&a + &(&h * &Real::from_u64(n as u64, a.bits()))))).collect();
        Self::new(a, b, m, samples)
    }

    pub fn a(&self) -> &Real {
        &self.a
    }

    pub fn b(&self) -> &Real {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn samples(&self) -> &[Complex] {
        &self.samples
    }

    pub fn step(&self) -> Real {
        (&self.b - &self.a) / Real::from_u64(self.m as u64, self.a.bits())
    }

    /// Grid point `x_n`.
    pub fn point(&self, n: usize) -> Real {
        &self.a + &(self.step() * Real::from_u64(n as u64, self.a.bits()))
    }

    /// Parse the sample format: `a,<dec>`, `b,<dec>`, `M,<int>` then
    /// `M + 1` lines `<re>[,<im>]`. Blank trailing lines are ignored.
    pub fn parse_csv(text: &str, ctx: &Context) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (no, line) = lines.next().ok_or(Error::Csv { line: 0, msg: format!("missing {key} line") })?;
            let rest = line
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(','))
                .ok_or(Error::Csv { line: no, msg: format!("expected `{key},<value>`") })?;
            Ok((no, rest.trim().to_string()))
        };
        let (la, sa) = header("a")?;
        let (lb, sb) = header("b")?;
        let (lm, sm) = header("M")?;
        let num = |no: usize, s: &str| ctx.parse(s).map_err(|_| Error::Csv { line: no, msg: format!("bad number {s:?}") });
        let a = num(la, &sa)?;
        let b = num(lb, &sb)?;
        let m: usize = sm.parse().map_err(|_| Error::Csv { line: lm, msg: format!("bad integer {sm:?}") })?;
        if m < 2 {
            return Err(Error::Csv { line: lm, msg: format!("need M >= 2, got {m}") });
        }
        if b <= a {
            return Err(Error::Csv { line: lb, msg: "need a < b".into() });
        }
        let mut samples = Vec::with_capacity(m + 1);
        let mut last = lm;
        for (no, line) in lines {
            if line.is_empty() {
                last = no;
                continue;
            }
            if samples.len() == m + 1 {
                return Err(Error::Csv { line: no, msg: format!("more than M + 1 = {} samples", m + 1) });
            }
            let mut parts = line.split(',');
            let re = num(no, parts.next().unwrap_or(""))?;
            let im = match parts.next() {
                Some(s) => num(no, s)?,
                None => ctx.zero(),
            };
            if parts.next().is_some() {
                return Err(Error::Csv { line: no, msg: "expected `<re>[,<im>]`".into() });
            }
            samples.push(Complex::new(re, im));
            last = no;
        }
        if samples.len() != m + 1 {
            return Err(Error::Csv {
                line: last,
                msg: format!("expected {} samples, found {}", m + 1, samples.len()),
            });
        }
        Self::new(a, b, m, samples)
    }

    /// Inverse of [`parse_csv`](Self::parse_csv); purely real samples are
    /// written without an imaginary column.
    pub fn to_csv(&self, ctx: &Context) -> String {
        let mut out = format!("a,{}\nb,{}\nM,{}\n", self.a.to_decimal(ctx), self.b.to_decimal(ctx), self.m);
        for s in &self.samples {
            out.push_str(&s.re.to_decimal(ctx));
            if !s.im.is_zero() {
                out.push(',');
                out.push_str(&s.im.to_decimal(ctx));
            }
            out.push('\n');
        }
        out
    }
}

/// Trigonometric moments of a sampled function: `τ_n = f(x_n)` unchanged.
pub fn moments_from_samples(grid: &SampleGrid, ctx: &Context) -> Result<MomentSequence> {
    let desc = format!(
        "samples on [{}, {}] with M={}",
        grid.a.to_sci(17, ctx),
        grid.b.to_sci(17, ctx),
        grid.m
    );
    MomentSequence::new(MomentKind::Trigonometric, grid.samples.clone(), desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &Complex) -> f64 {
        v.re.to_f64()
    }

    #[test]
    fn closed_forms() {
        let ctx = Context::new(40);
        let leb = lebesgue_pm1(4, &ctx).unwrap();
        assert_eq!(f(&leb.values()[0]), 2.0);
        assert!(leb.values()[1].is_zero() && leb.values()[3].is_zero());
        assert!((f(&leb.values()[2]) - 2.0 / 3.0).abs() < 1e-16);
        let l01 = lebesgue_01(9, &ctx).unwrap();
        assert_eq!(f(&l01.values()[1]), 0.5);
        assert!((f(&l01.values()[9]) - 0.1).abs() < 1e-17);
        let ch = chebyshev1(4, &ctx).unwrap();
        let pi = core::f64::consts::PI;
        assert!((f(&ch.values()[0]) - pi).abs() < 1e-15);
        assert!((f(&ch.values()[4]) - 3.0 * pi / 8.0).abs() < 1e-15);
        let lw = logweight_01(3, &ctx).unwrap();
        assert_eq!(f(&lw.values()[0]), -1.0);
        assert_eq!(f(&lw.values()[1]), -0.25);
        assert_eq!(f(&lw.values()[3]), -1.0 / 16.0);
        let tr = trig_lebesgue_pm1(500, &ctx).unwrap();
        assert_eq!(tr.kind(), MomentKind::Trigonometric);
        assert!((f(&tr.values()[1]) - 2.0 * 1f64.sin()).abs() < 1e-15);
        assert!((f(&tr.values()[500]) - 2.0 * 500f64.sin() / 500.0).abs() < 1e-15);
    }

    #[test]
    fn discrete_two_atoms() {
        let ctx = Context::new(30);
        let one = Complex::one(ctx.bits());
        let atoms = [-&one, one.clone()];
        let mu = discrete(MomentKind::Power, &atoms, &[one.clone(), one], 5, &ctx).unwrap();
        let v: Vec<f64> = mu.values().iter().map(f).collect();
        assert_eq!(v, [2.0, 0.0, 2.0, 0.0, 2.0, 0.0]);
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let ctx = Context::new(30);
        let text = "a,0\nb,1\nM,2\n1\n2\n3\n";
        let g = SampleGrid::parse_csv(text, &ctx).unwrap();
        let v: Vec<f64> = g.samples().iter().map(f).collect();
        assert_eq!(v, [1.0, 2.0, 3.0]);
        let back = SampleGrid::parse_csv(&g.to_csv(&ctx), &ctx).unwrap();
        assert_eq!(back, g);

        assert!(matches!(SampleGrid::parse_csv("", &ctx), Err(Error::Csv { .. })));
        let short = SampleGrid::parse_csv("a,0\nb,1\nM,2\n1\n2\n", &ctx).unwrap_err();
        assert!(matches!(short, Error::Csv { line: 5, .. }), "{short:?}");
        let bad = SampleGrid::parse_csv("a,0\nb,1\nM,2\n1\nx\n3\n", &ctx).unwrap_err();
        assert!(matches!(bad, Error::Csv { line: 5, .. }));
        let order = SampleGrid::parse_csv("b,1\na,0\nM,2\n1\n2\n3\n", &ctx).unwrap_err();
        assert!(matches!(order, Error::Csv { line: 1, .. }));
        let complex = SampleGrid::parse_csv("a,0\nb,1\nM,2\n1,2\n2\n3,-1.5\n", &ctx).unwrap();
        assert_eq!(complex.samples()[2].im.to_f64(), -1.5);
    }

    #[test]
    fn grid_points_and_validation() {
        let ctx = Context::new(30);
        let g = SampleGrid::from_fn(ctx.int(1), ctx.int(3), 4, |x| Complex::from_real(x.clone())).unwrap();
        assert_eq!(g.point(3).to_f64(), 2.5);
        assert_eq!(f(&g.samples()[4]), 3.0);
        assert!(SampleGrid::from_fn(ctx.int(1), ctx.int(1), 4, |x| Complex::from_real(x.clone())).is_err());
        assert!(SampleGrid::from_fn(ctx.int(0), ctx.int(1), 1, |x| Complex::from_real(x.clone())).is_err());
        let mu = moments_from_samples(&g, &ctx).unwrap();
        assert_eq!(mu.values(), g.samples());
    }
}
