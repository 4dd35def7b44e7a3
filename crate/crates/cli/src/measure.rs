//! Measures selectable from the command line and stored in rule files.

use agq_core::measures::{self, MomentKind, MomentSequence};
use agq_core::numerics::{Complex, Context};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// A measure description that can be turned back into moments at any
/// precision. Numbers are kept as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum MeasureSpec {
    LebesguePm1,
    Lebesgue01,
    Chebyshev1,
    Logweight,
    Trig,
    Discrete { kind: String, atoms: Vec<[String; 2]>, weights: Vec<[String; 2]> },
    Moments { kind: String, values: Vec<[String; 2]> },
}

impl MeasureSpec {
    /// Built-in measure by name.
    pub fn builtin(name: &str) -> Result<Self> {
        Ok(match name {
            "lebesgue_pm1" | "lebesgue" => MeasureSpec::LebesguePm1,
            "lebesgue_01" => MeasureSpec::Lebesgue01,
            "chebyshev1" => MeasureSpec::Chebyshev1,
            "logweight" | "logweight_01" => MeasureSpec::Logweight,
            "trig" | "trig_lebesgue_pm1" => MeasureSpec::Trig,
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown measure {name:?}; expected lebesgue_pm1, lebesgue_01, chebyshev1, logweight, trig, discrete or moments"
                )))
            }
        })
    }

    /// Point masses from comma separated lists; complex entries are written
    /// `re:im`.
    pub fn discrete(kind: MomentKind, atoms: &str, weights: &str) -> Result<Self> {
        let a = split_list(atoms)?;
        let w = split_list(weights)?;
        if a.len() != w.len() || a.is_empty() {
            return Err(CliError::Usage(format!("{} atoms but {} weights", a.len(), w.len())));
        }
        Ok(MeasureSpec::Discrete { kind: kind.as_str().into(), atoms: a, weights: w })
    }

    /// Moments read from text, one `re[,im]` per line.
    pub fn from_moment_lines(kind: MomentKind, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut it = line.split(',').map(str::trim);
            let re = it.next().unwrap_or("").to_string();
            let im = it.next().unwrap_or("0").to_string();
            if it.next().is_some() {
                return Err(CliError::Usage(format!("bad moment line {line:?}")));
            }
            values.push([re, im]);
        }
        if values.is_empty() {
            return Err(CliError::Usage("moment file is empty".into()));
        }
        Ok(MeasureSpec::Moments { kind: kind.as_str().into(), values })
    }

    pub fn kind(&self) -> Result<MomentKind> {
        match self {
            MeasureSpec::Trig => Ok(MomentKind::Trigonometric),
            MeasureSpec::Discrete { kind, .. } | MeasureSpec::Moments { kind, .. } => Ok(kind.parse()?),
            _ => Ok(MomentKind::Power),
        }
    }

    /// Moments `m_0..m_l`. Tabulated moments are truncated to what is
    /// available.
    pub fn moments(&self, l: usize, ctx: &Context) -> Result<MomentSequence> {
        Ok(match self {
            MeasureSpec::LebesguePm1 => measures::lebesgue_pm1(l, ctx)?,
            MeasureSpec::Lebesgue01 => measures::lebesgue_01(l, ctx)?,
            MeasureSpec::Chebyshev1 => measures::chebyshev1(l, ctx)?,
            MeasureSpec::Logweight => measures::logweight_01(l, ctx)?,
            MeasureSpec::Trig => measures::trig_lebesgue_pm1(l, ctx)?,
            MeasureSpec::Discrete { atoms, weights, .. } => {
                let a = parse_pairs(atoms, ctx)?;
                let w = parse_pairs(weights, ctx)?;
                measures::discrete(self.kind()?, &a, &w, l, ctx)?
            }
            MeasureSpec::Moments { values, .. } => {
                let v = parse_pairs(&values[..values.len().min(l + 1)], ctx)?;
                MomentSequence::new(self.kind()?, v, "tabulated moments")?
            }
        })
    }
}

fn split_list(s: &str) -> Result<Vec<[String; 2]>> {
    s.split(',')
        .map(str::trim)
        .map(|t| {
            if t.is_empty() {
                return Err(CliError::Usage(format!("empty entry in list {s:?}")));
            }
            Ok(match t.split_once(':') {
                Some((re, im)) => [re.into(), im.into()],
                None => [t.into(), "0".into()],
            })
        })
        .collect()
}

pub fn parse_pairs(v: &[[String; 2]], ctx: &Context) -> Result<Vec<Complex>> {
    v.iter().map(|[re, im]| Ok(Complex::new(ctx.parse(re)?, ctx.parse(im)?))).collect()
}

pub fn to_pair(z: &Complex, ctx: &Context) -> [String; 2] {
    [z.re.to_decimal(ctx), z.im.to_decimal(ctx)]
}
