//! Weight sequences (`α`, `β`, `γ`) and their textual spec syntax.
//!
//! Accepted strings:
//!
//! | spec            | term `s_n`                                   |
//! |-----------------|----------------------------------------------|
//! | `poly:p`        | `n^p`; `s_0 = 1` if `p = 0`, else `s_0 = 0`  |
//! | `sqrt-poly:p`   | `√(n^p)`, i.e. `poly:p/2`                    |
//! | `harmonic`      | `1/n` with `s_0 = 0`                         |
//! | `geometric:r`   | `r^n`                                        |
//! | `affine:a,b`    | `a·n + b`                                    |
//! | `list:v0,v1,..` | explicit, entries may be complex (`1+2i`)    |
//!
//! Any spec may carry a complex scale factor as a suffix, `poly:1*0+1i`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind {
    Explicit(Vec<Complex64>),
    Power { exponent: f64 },
    Geometric { ratio: f64 },
    Affine { slope: f64, intercept: f64 },
}

/// A finite or closed-form complex sequence `scale · base_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceSpec {
    kind: SequenceKind,
    scale: Complex64,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind) -> Self {
        Self {
            kind,
            scale: Complex64::new(1.0, 0.0),
        }
    }

    pub fn explicit(values: Vec<Complex64>) -> Self {
        Self::new(SequenceKind::Explicit(values))
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::explicit(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `n^p`.
    pub fn power(exponent: f64) -> Self {
        Self::new(SequenceKind::Power { exponent })
    }

    /// The constant sequence `1`.
    pub fn ones() -> Self {
        Self::power(0.0)
    }

    pub fn geometric(ratio: f64) -> Self {
        Self::new(SequenceKind::Geometric { ratio })
    }

    pub fn affine(slope: f64, intercept: f64) -> Self {
        Self::new(SequenceKind::Affine { slope, intercept })
    }

    pub fn with_scale(mut self, scale: Complex64) -> Self {
        self.scale *= scale;
        self
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    /// Number of terms, `None` for closed forms.
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    fn base_term(&self, n: usize) -> Option<Complex64> {
        let x = n as f64;
        let re = |v: f64| Some(Complex64::new(v, 0.0));
        match &self.kind {
            SequenceKind::Explicit(v) => v.get(n).copied(),
            SequenceKind::Power { exponent } => {
                if n == 0 {
                    re(if *exponent == 0.0 { 1.0 } else { 0.0 })
                } else {
                    re(x.powf(*exponent))
                }
            }
            SequenceKind::Geometric { ratio } => re(ratio.powi(n as i32)),
            SequenceKind::Affine { slope, intercept } => re(slope * x + intercept),
        }
    }

    /// Term `s_n`, or `None` past the end of an explicit list.
    pub fn term(&self, n: usize) -> Option<Complex64> {
        self.base_term(n).map(|z| z * self.scale)
    }

    /// The first `n` terms.
    pub fn take(&self, n: usize) -> Result<Vec<Complex64>> {
        if let Some(available) = self.len() {
            if available < n {
                return Err(Error::SequenceTooShort { needed: n, available });
            }
        }
        Ok((0..n).map(|k| self.term(k).expect("checked length")).collect())
    }

    /// Whether every term is real.
    pub fn is_real(&self) -> bool {
        let kind_real = match &self.kind {
            SequenceKind::Explicit(v) => v.iter().all(|z| z.im == 0.0),
            _ => true,
        };
        self.scale.im == 0.0 && (kind_real || self.scale == Complex64::new(0.0, 0.0))
    }

    /// Whether `|s_0| ≤ |s_1| ≤ …` over the whole sequence.
    pub fn is_abs_monotone(&self) -> bool {
        if self.scale.norm() == 0.0 {
            return true;
        }
        match &self.kind {
            SequenceKind::Explicit(v) => v.windows(2).all(|w| w[0].norm() <= w[1].norm()),
            SequenceKind::Power { exponent } => *exponent >= 0.0,
            SequenceKind::Geometric { ratio } => ratio.abs() >= 1.0,
            SequenceKind::Affine { slope, intercept } => intercept.abs() <= (slope + intercept).abs(),
        }
    }

    /// Checks `|s_n| ≤ |s_{n+1}|` over the first `n` terms.
    pub fn check_abs_monotone(&self, n: usize) -> bool {
        (1..n).all(|k| match (self.term(k - 1), self.term(k)) {
            (Some(a), Some(b)) => a.norm() <= b.norm(),
            _ => true,
        })
    }

    /// Checks that the first `n` terms have zero imaginary part.
    pub fn check_real(&self, n: usize) -> bool {
        (0..n).filter_map(|k| self.term(k)).all(|z| z.im == 0.0)
    }

    /// Termwise complex conjugate.
    pub fn conj(&self) -> Self {
        let kind = match &self.kind {
            SequenceKind::Explicit(v) => SequenceKind::Explicit(v.iter().map(|z| z.conj()).collect()),
            other => other.clone(),
        };
        Self {
            kind,
            scale: self.scale.conj(),
        }
    }

    /// Explicit sequence `f(s_0), …, f(s_{n-1})`.
    pub fn map_take(&self, n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Ok(Self::explicit(self.take(n)?.into_iter().map(f).collect()))
    }
}

fn parse_f64(spec: &str, s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::InvalidSequence {
        spec: spec.to_string(),
        reason: format!("`{s}`: {e}"),
    })
}

fn parse_complex(spec: &str, s: &str) -> Result<Complex64> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    // num-complex wants an explicit coefficient on the imaginary unit.
    let normalized = match s {
        "i" | "+i" => "1i".to_string(),
        "-i" => "-1i".to_string(),
        _ => s.replace("+i", "+1i").replace("-i", "-1i"),
    };
    Complex64::from_str(&normalized).map_err(|e| Error::InvalidSequence {
        spec: spec.to_string(),
        reason: format!("`{s}`: {e}"),
    })
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSequence {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = spec.trim();
        let (base, scale) = match trimmed.split_once('*') {
            Some((b, s)) => (b, Some(parse_complex(spec, s)?)),
            None => (trimmed, None),
        };
        let (name, arg) = match base.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (base.trim(), None),
        };
        let need_arg = || arg.ok_or_else(|| invalid("missing argument"));
        let seq = match name {
            "poly" => Self::power(parse_f64(spec, need_arg()?)?),
            "sqrt-poly" => Self::power(parse_f64(spec, need_arg()?)? / 2.0),
            "harmonic" => {
                if arg.is_some() {
                    return Err(invalid("`harmonic` takes no argument"));
                }
                Self::power(-1.0)
            }
            "geometric" => Self::geometric(parse_f64(spec, need_arg()?)?),
            "affine" => {
                let (a, b) = need_arg()?
                    .split_once(',')
                    .ok_or_else(|| invalid("expected `affine:a,b`"))?;
                Self::affine(parse_f64(spec, a)?, parse_f64(spec, b)?)
            }
            "list" => {
                let values = need_arg()?
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_complex(spec, s))
                    .collect::<Result<Vec<_>>>()?;
                if values.is_empty() {
                    return Err(invalid("empty list"));
                }
                Self::explicit(values)
            }
            _ => return Err(invalid("unknown sequence kind")),
        };
        Ok(match scale {
            Some(z) => seq.with_scale(z),
            None => seq,
        })
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SequenceKind::Explicit(v) => {
                let items: Vec<String> = v.iter().map(|z| fmt_complex(*z)).collect();
                write!(f, "list:{}", items.join(","))?;
            }
            SequenceKind::Power { exponent } => write!(f, "poly:{exponent}")?,
            SequenceKind::Geometric { ratio } => write!(f, "geometric:{ratio}")?,
            SequenceKind::Affine { slope, intercept } => write!(f, "affine:{slope},{intercept}")?,
        }
        if self.scale != Complex64::new(1.0, 0.0) {
            write!(f, "*{}", fmt_complex(self.scale))?;
        }
        Ok(())
    }
}
