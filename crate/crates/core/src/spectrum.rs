//! Eigenvalue sequences of the positive operator `A`.
//!
//! Every enumeration in the crate reads eigenvalues through [`Spectrum`]. The
//! values for `1..=n_max` are materialised once at construction, so a
//! `Spectrum` is immutable and cheap to share between threads.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on mode indices for set scans.
pub const DEFAULT_N_MAX: usize = 64;

/// How the eigenvalues are generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// `-d²/dx²` on `(0,1)` with hinged ends: `λₙ = n²π²`.
    DirichletLaplacian,
    /// The same operator divided by `π²`: `λₙ = n²`.
    ScaledDirichlet,
    /// Fractional power `L^{(p+1)/2}`: `λₙ = (nπ)^{p+1}`.
    Power { p: u32 },
    /// User-supplied eigenvalues.
    Explicit { values: Vec<f64> },
}

impl Generator {
    fn value(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Generator::DirichletLaplacian => (x * PI).powi(2),
            Generator::ScaledDirichlet => x * x,
            Generator::Power { p } => (x * PI).powi(*p as i32 + 1),
            Generator::Explicit { values } => values[n - 1],
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::DirichletLaplacian => write!(f, "dirichlet"),
            Generator::ScaledDirichlet => write!(f, "scaled"),
            Generator::Power { p } => write!(f, "power:{p}"),
            Generator::Explicit { values } => write!(f, "explicit[{}]", values.len()),
        }
    }
}

/// Parses `dirichlet`, `scaled` and `power:p`. Explicit lists are built with
/// [`Spectrum::explicit`] or [`Spectrum::parse_explicit`].
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dirichlet" | "dirichlet-laplacian" => Ok(Generator::DirichletLaplacian),
            "scaled" | "scaled-dirichlet" => Ok(Generator::ScaledDirichlet),
            other => {
                if let Some(p) = other.strip_prefix("power:") {
                    let p: u32 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidSpectrum(format!("bad power exponent {p:?}")))?;
                    if p == 0 {
                        return Err(Error::InvalidSpectrum("power exponent must be positive".into()));
                    }
                    Ok(Generator::Power { p })
                } else {
                    Err(Error::InvalidSpectrum(format!("unknown spectrum {other:?}")))
                }
            }
        }
    }
}

/// A strictly increasing sequence of positive simple eigenvalues, truncated
/// at `n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    generator: Generator,
    n_max: usize,
    #[serde(skip)]
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(generator: Generator, n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidSpectrum("n_max must be positive".into()));
        }
        if let Generator::Power { p: 0 } = generator {
            return Err(Error::InvalidSpectrum("power exponent must be positive".into()));
        }
        let n_max = match &generator {
            Generator::Explicit { values } => {
                if values.is_empty() {
                    return Err(Error::InvalidSpectrum("explicit list is empty".into()));
                }
                n_max.min(values.len())
            }
            _ => n_max,
        };
        let values: Vec<f64> = (1..=n_max).map(|n| generator.value(n)).collect();
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue {} = {v} is not a positive finite number",
                    i + 1
                )));
            }
            if i > 0 && v <= values[i - 1] {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalues must be simple and strictly increasing (λ{} = {} ≥ λ{} = {v})",
                    i,
                    values[i - 1],
                    i + 1
                )));
            }
        }
        Ok(Spectrum { generator, n_max, values })
    }

    pub fn dirichlet(n_max: usize) -> Result<Self> {
        Self::new(Generator::DirichletLaplacian, n_max)
    }

    pub fn scaled(n_max: usize) -> Result<Self> {
        Self::new(Generator::ScaledDirichlet, n_max)
    }

    pub fn power(p: u32, n_max: usize) -> Result<Self> {
        Self::new(Generator::Power { p }, n_max)
    }

    /// Uses the whole list; `n_max` is the list length.
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::new(Generator::Explicit { values }, n.max(1))
    }

    /// One eigenvalue per line; blank lines and `#` comments are skipped.
    pub fn parse_explicit(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: f64 = line.parse().map_err(|_| {
                Error::InvalidSpectrum(format!("line {}: cannot parse {line:?}", lineno + 1))
            })?;
            values.push(v);
        }
        Self::explicit(values)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `λₙ` for `1 ≤ n ≤ n_max`.
    pub fn eigenvalue(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.n_max {
            return Err(Error::IndexOutOfRange { n, n_max: self.n_max });
        }
        Ok(self.values[n - 1])
    }

    /// Unchecked access for indices already validated by a scan.
    pub(crate) fn lambda(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
