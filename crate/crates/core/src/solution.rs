//! Parameters, modal solutions and the tag-blind verifier.
//!
//! A stationary solution is stored by its modal coefficients
//! `u = Σ αₙ eₙ`, `v = Σ γₙ eₙ`. Everything the verifier needs (the axial
//! coefficients `C_u`, `C_v`, the per-mode residuals, the cubic `P(λ)`) is
//! recomputed from those coefficients; the branch tag is carried along for
//! reporting only.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Dimensionless parameters: axial load `β`, extensibility `ϱ`, coupling `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub beta: f64,
    pub varrho: f64,
    pub k: f64,
}

impl Params {
    pub fn new(beta: f64, varrho: f64, k: f64) -> Result<Self> {
        let p = Params { beta, varrho, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() {
            return Err(Error::InvalidParams(format!("beta must be finite, got {}", self.beta)));
        }
        if !(self.varrho.is_finite() && self.varrho > 0.0) {
            return Err(Error::InvalidParams(format!("varrho must be positive, got {}", self.varrho)));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::InvalidParams(format!("k must be positive, got {}", self.k)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.symbol())
    }
}

/// Resonant index sets carrying continua of equidistributed-energy solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    B1,
    B2,
    T,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::B1 => "B1",
            FamilyKind::B2 => "B2",
            FamilyKind::T => "T",
        })
    }
}

/// Which circle–ellipse system an isolated non-EE bimodal solution solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BimodalBranch {
    /// `v = rX e₁ + tW e₂`
    XW,
    /// `v = rY e₁ + tZ e₂`
    YZ,
}

/// Branch label. Informational only; the verifier never reads it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Trivial,
    Unimodal { i: u8, sign: Sign },
    EeBimodal(FamilyKind),
    EeTrimodal,
    GeneralBimodal(BimodalBranch),
    Oracle,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Trivial => write!(f, "trivial"),
            Tag::Unimodal { i, sign } => write!(f, "unimodal({i},{})", sign.symbol()),
            Tag::EeBimodal(kind) => write!(f, "ee-bimodal({kind})"),
            Tag::EeTrimodal => write!(f, "ee-trimodal"),
            Tag::GeneralBimodal(BimodalBranch::XW) => write!(f, "general-bimodal(XW)"),
            Tag::GeneralBimodal(BimodalBranch::YZ) => write!(f, "general-bimodal(YZ)"),
            Tag::Oracle => write!(f, "oracle"),
        }
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSolution(format!("unknown tag {s:?}"));
        Ok(match s {
            "trivial" => Tag::Trivial,
            "ee-trimodal" => Tag::EeTrimodal,
            "oracle" => Tag::Oracle,
            "ee-bimodal(B1)" => Tag::EeBimodal(FamilyKind::B1),
            "ee-bimodal(B2)" => Tag::EeBimodal(FamilyKind::B2),
            "general-bimodal(XW)" => Tag::GeneralBimodal(BimodalBranch::XW),
            "general-bimodal(YZ)" => Tag::GeneralBimodal(BimodalBranch::YZ),
            other => {
                let inner = other
                    .strip_prefix("unimodal(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (i, sign) = inner.split_once(',').ok_or_else(bad)?;
                let i: u8 = i.parse().map_err(|_| bad())?;
                if !(1..=4).contains(&i) {
                    return Err(bad());
                }
                let sign = match sign {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(bad()),
                };
                Tag::Unimodal { i, sign }
            }
        })
    }
}

impl Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coefficients of one eigenmode in `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCoeff {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
}

/// A stationary solution in modal form. Modes are kept sorted by index.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSolution {
    modes: Vec<ModeCoeff>,
    pub tag: Tag,
}

impl ModalSolution {
    pub fn new(tag: Tag, modes: impl IntoIterator<Item = (usize, f64, f64)>) -> Self {
        let mut modes: Vec<ModeCoeff> = modes
            .into_iter()
            .map(|(n, alpha, gamma)| ModeCoeff { n, alpha, gamma })
            .collect();
        modes.sort_by_key(|m| m.n);
        ModalSolution { modes, tag }
    }

    pub fn trivial() -> Self {
        ModalSolution { modes: Vec::new(), tag: Tag::Trivial }
    }

    pub fn modes(&self) -> &[ModeCoeff] {
        &self.modes
    }

    pub fn coeff(&self, n: usize) -> Option<&ModeCoeff> {
        self.modes.iter().find(|m| m.n == n)
    }

    /// Indices with `(α, γ) ≠ (0, 0)`.
    pub fn active_indices(&self) -> Vec<usize> {
        self.modes
            .iter()
            .filter(|m| m.alpha != 0.0 || m.gamma != 0.0)
            .map(|m| m.n)
            .collect()
    }

    /// Indices whose coefficients exceed `threshold` in magnitude.
    pub fn active_above(&self, threshold: f64) -> Vec<usize> {
        self.modes
            .iter()
            .filter(|m| m.alpha.abs() > threshold || m.gamma.abs() > threshold)
            .map(|m| m.n)
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.active_indices().is_empty()
    }

    /// Largest coefficient gap to `other`, over the union of both mode sets.
    pub fn max_coeff_distance(&self, other: &ModalSolution) -> f64 {
        let mut d: f64 = 0.0;
        for m in &self.modes {
            let (a, g) = other.coeff(m.n).map_or((0.0, 0.0), |o| (o.alpha, o.gamma));
            d = d.max((m.alpha - a).abs()).max((m.gamma - g).abs());
        }
        for o in &other.modes {
            if self.coeff(o.n).is_none() {
                d = d.max(o.alpha.abs()).max(o.gamma.abs());
            }
        }
        d
    }

    /// `(u(x), v(x))` for the hinged-beam eigenfunctions `eₙ(x) = √2 sin(nπx)`.
    pub fn profile_at(&self, x: f64) -> (f64, f64) {
        self.modes.iter().fold((0.0, 0.0), |(u, v), m| {
            let e = std::f64::consts::SQRT_2 * (m.n as f64 * PI * x).sin();
            (u + m.alpha * e, v + m.gamma * e)
        })
    }

    /// Serializable view with the axial coefficients filled in.
    pub fn to_record(&self, p: &Params, spec: &Spectrum) -> Result<SolutionRecord> {
        let (c_u, c_v) = axial_coefficients(self, p, spec)?;
        Ok(SolutionRecord { modes: self.modes.clone(), tag: self.tag, c_u, c_v })
    }
}

/// Coefficients and tag only; [`SolutionRecord`] adds the axial coefficients.
impl Serialize for ModalSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModalSolution", 2)?;
        st.serialize_field("modes", self.modes())?;
        st.serialize_field("tag", &self.tag)?;
        st.end()
    }
}

/// JSON shape of a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub modes: Vec<ModeCoeff>,
    pub tag: Tag,
    #[serde(rename = "C_u")]
    pub c_u: f64,
    #[serde(rename = "C_v")]
    pub c_v: f64,
}

impl From<SolutionRecord> for ModalSolution {
    fn from(r: SolutionRecord) -> Self {
        ModalSolution::new(r.tag, r.modes.into_iter().map(|m| (m.n, m.alpha, m.gamma)))
    }
}

/// `C_u = β + ϱ Σ λₙ αₙ²`, `C_v = β + ϱ Σ λₙ γₙ²`.
pub fn axial_coefficients(sol: &ModalSolution, p: &Params, spec: &Spectrum) -> Result<(f64, f64)> {
    let mut su = 0.0;
    let mut sv = 0.0;
    for m in &sol.modes {
        let lambda = spec.eigenvalue(m.n)?;
        su += lambda * m.alpha * m.alpha;
        sv += lambda * m.gamma * m.gamma;
    }
    Ok((p.beta + p.varrho * su, p.beta + p.varrho * sv))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeResidual {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub modes: Vec<ModeResidual>,
    pub max_abs: f64,
    /// `max_abs / max(1, largest individual term)`.
    pub relative: f64,
}

/// Residual of the modal system
/// `λ²α + C_u λα + k(α−γ) = 0`, `λ²γ + C_v λγ − k(α−γ) = 0`
/// on every stored mode, with `C_u`, `C_v` taken from the solution itself.
pub fn modal_residual(sol: &ModalSolution, p: &Params, spec: &Spectrum) -> Result<ResidualReport> {
    let (c_u, c_v) = axial_coefficients(sol, p, spec)?;
    let mut modes = Vec::with_capacity(sol.modes.len());
    let mut max_abs: f64 = 0.0;
    let mut max_term: f64 = 1.0;
    for m in &sol.modes {
        let l = spec.lambda(m.n);
        let (a, g) = (m.alpha, m.gamma);
        let terms = [l * l * a, c_u * l * a, p.k * a, p.k * g, l * l * g, c_v * l * g];
        let r1 = terms[0] + terms[1] + p.k * (a - g);
        let r2 = terms[4] + terms[5] - p.k * (a - g);
        for t in terms {
            max_term = max_term.max(t.abs());
        }
        max_abs = max_abs.max(r1.abs()).max(r2.abs());
        modes.push(ModeResidual { n: m.n, r1, r2 });
    }
    Ok(ResidualReport { modes, max_abs, relative: max_abs / max_term })
}

/// Problem-wide residual scale `max(1, λ_max², k, |β| λ_max)` over the
/// solution's modes.
pub fn residual_scale(sol: &ModalSolution, p: &Params, spec: &Spectrum) -> Result<f64> {
    let mut lmax: f64 = 0.0;
    for m in &sol.modes {
        lmax = lmax.max(spec.eigenvalue(m.n)?);
    }
    Ok(1f64.max(lmax * lmax).max(p.k).max(p.beta.abs() * lmax))
}

/// Equidistributed energy: `|C_u − C_v| ≤ tol · max(1, |C_u|, |C_v|)`.
pub fn is_ee(sol: &ModalSolution, p: &Params, spec: &Spectrum, tol: f64) -> Result<bool> {
    let (c_u, c_v) = axial_coefficients(sol, p, spec)?;
    Ok((c_u - c_v).abs() <= tol * 1f64.max(c_u.abs()).max(c_v.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicValue {
    pub n: usize,
    pub lambda: f64,
    pub value: f64,
    /// `|P(λ)|` over the largest of its four terms (at least 1).
    pub relative: f64,
    /// `(λ + C_u)(λ² + C_u λ + 2k)`, present when the solution is EE.
    pub factorized: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicReport {
    pub c_u: f64,
    pub c_v: f64,
    pub values: Vec<CubicValue>,
    pub max_relative: f64,
    /// Largest relative gap between the expanded and factorized forms.
    pub factorization_gap: Option<f64>,
}

/// Evaluates `P(λ) = λ³ + (C_u+C_v)λ² + (C_uC_v+2k)λ + k(C_u+C_v)` at every
/// active eigenvalue.
pub fn cubic_check(sol: &ModalSolution, p: &Params, spec: &Spectrum) -> Result<CubicReport> {
    let (c_u, c_v) = axial_coefficients(sol, p, spec)?;
    let ee = is_ee(sol, p, spec, 1e-10)?;
    let s = c_u + c_v;
    let q = c_u * c_v + 2.0 * p.k;
    let mut values = Vec::new();
    let mut max_relative: f64 = 0.0;
    let mut gap: Option<f64> = None;
    for n in sol.active_indices() {
        let l = spec.lambda(n);
        let terms = [l * l * l, s * l * l, q * l, p.k * s];
        let value: f64 = terms.iter().sum();
        let scale = terms.iter().fold(1f64, |acc, t| acc.max(t.abs()));
        let relative = value.abs() / scale;
        max_relative = max_relative.max(relative);
        let factorized = ee.then(|| (l + c_u) * (l * l + c_u * l + 2.0 * p.k));
        if let Some(fv) = factorized {
            // the factorization uses C_u for both coefficients; recompute the
            // expanded form on the same footing so only algebra is compared
            let se = 2.0 * c_u;
            let qe = c_u * c_u + 2.0 * p.k;
            let te = [l * l * l, se * l * l, qe * l, p.k * se];
            let expanded: f64 = te.iter().sum();
            let sc = te.iter().fold(1f64, |acc, t| acc.max(t.abs()));
            let g = (expanded - fv).abs() / sc;
            gap = Some(gap.map_or(g, |x: f64| x.max(g)));
        }
        values.push(CubicValue { n, lambda: l, value, relative, factorized });
    }
    Ok(CubicReport { c_u, c_v, values, max_relative, factorization_gap: gap })
}

/// Largest relative defect of `λₙ = −(C_u αₙ + C_v γₙ)/(αₙ + γₙ)` over modes
/// with `αₙ + γₙ ≠ 0`.
pub fn eigen_relation_defect(sol: &ModalSolution, p: &Params, spec: &Spectrum) -> Result<f64> {
    let (c_u, c_v) = axial_coefficients(sol, p, spec)?;
    let mut worst: f64 = 0.0;
    for m in &sol.modes {
        let sum = m.alpha + m.gamma;
        if sum.abs() <= 1e-9 * m.alpha.abs().max(m.gamma.abs()) {
            continue;
        }
        let l = spec.lambda(m.n);
        let rhs = -(c_u * m.alpha + c_v * m.gamma) / sum;
        worst = worst.max((l - rhs).abs() / l.max(1.0));
    }
    Ok(worst)
}

/// Structural checks every solution must pass: indices unique and in range,
/// `αₙ = 0 ⇔ γₙ = 0`, at most three active modes.
pub fn validate(sol: &ModalSolution, spec: &Spectrum) -> Result<()> {
    for w in sol.modes.windows(2) {
        if w[0].n == w[1].n {
            return Err(Error::InvalidSolution(format!("mode {} listed twice", w[0].n)));
        }
    }
    for m in &sol.modes {
        spec.eigenvalue(m.n)?;
        if !(m.alpha.is_finite() && m.gamma.is_finite()) {
            return Err(Error::InvalidSolution(format!("mode {} has non-finite coefficients", m.n)));
        }
        if (m.alpha == 0.0) != (m.gamma == 0.0) {
            return Err(Error::InvalidSolution(format!(
                "mode {}: alpha and gamma must vanish together",
                m.n
            )));
        }
    }
    let active = sol.active_indices().len();
    if active > 3 {
        return Err(Error::InvalidSolution(format!("{active} active modes; at most 3 are possible")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaled() -> Spectrum {
        Spectrum::scaled(16).unwrap()
    }

    fn unimodal_sample() -> (ModalSolution, Params) {
        let a = 14.5f64.sqrt();
        let sol = ModalSolution::new(Tag::Unimodal { i: 1, sign: Sign::Plus }, [(1, a, a)]);
        (sol, Params::new(-15.5, 1.0, 3.0).unwrap())
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(-3.0, 1.0, 2.0).is_ok());
        assert!(Params::new(5.0, 0.0, 2.0).is_err());
        assert!(Params::new(5.0, 1.0, -2.0).is_err());
        assert!(Params::new(f64::NAN, 1.0, 2.0).is_err());
    }

    #[test]
    fn axial_of_trivial_is_beta() {
        let p = Params::new(-7.25, 2.0, 1.0).unwrap();
        assert_eq!(axial_coefficients(&ModalSolution::trivial(), &p, &scaled()).unwrap(), (-7.25, -7.25));
    }

    #[test]
    fn axial_of_in_phase_sample() {
        let (sol, p) = unimodal_sample();
        let (cu, cv) = axial_coefficients(&sol, &p, &scaled()).unwrap();
        assert!((cu + 1.0).abs() < 1e-14 && (cv + 1.0).abs() < 1e-14);
    }

    #[test]
    fn axial_out_of_range() {
        let p = Params::new(-1.0, 1.0, 1.0).unwrap();
        let sol = ModalSolution::new(Tag::Oracle, [(99, 1.0, 1.0)]);
        assert!(axial_coefficients(&sol, &p, &scaled()).is_err());
    }

    #[test]
    fn residual_trivial_and_sample() {
        let p = Params::new(-15.5, 1.0, 3.0).unwrap();
        let r = modal_residual(&ModalSolution::trivial(), &p, &scaled()).unwrap();
        assert_eq!(r.max_abs, 0.0);

        let (sol, p) = unimodal_sample();
        let r = modal_residual(&sol, &p, &scaled()).unwrap();
        assert!(r.max_abs < 1e-10, "{r:?}");
    }

    #[test]
    fn residual_grows_off_solution() {
        let (_, p) = unimodal_sample();
        let a = 14.5f64.sqrt();
        let mut last = 0.0;
        // finite-difference style check: residual increases with the offset
        for step in [0.025, 0.05, 0.1] {
            let sol = ModalSolution::new(Tag::Oracle, [(1, a + step, a)]);
            let r = modal_residual(&sol, &p, &scaled()).unwrap().max_abs;
            assert!(r > last);
            last = r;
        }
        assert!(last > 0.1);
    }

    #[test]
    fn ee_classification() {
        let p = Params::new(-10.0, 1.0, 2.0).unwrap();
        let sym = ModalSolution::new(Tag::Oracle, [(1, 0.3, 0.3), (2, -1.2, -1.2)]);
        assert!(is_ee(&sym, &p, &scaled(), 1e-12).unwrap());
        let anti = ModalSolution::new(Tag::Oracle, [(1, 1.0, -1.0), (2, 1.0, -1.0)]);
        assert!(is_ee(&anti, &p, &scaled(), 1e-12).unwrap());
        let skew = ModalSolution::new(Tag::Oracle, [(1, 1.0, 0.5)]);
        assert!(!is_ee(&skew, &p, &scaled(), 1e-6).unwrap());
    }

    #[test]
    fn cubic_vanishes_on_sample() {
        let (sol, p) = unimodal_sample();
        let rep = cubic_check(&sol, &p, &scaled()).unwrap();
        assert_eq!(rep.values.len(), 1);
        assert!(rep.values[0].value.abs() < 1e-9);
        assert!(rep.factorization_gap.unwrap() < 1e-12);
    }

    #[test]
    fn cubic_detects_random_non_solutions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = Params::new(-20.0, 1.0, 3.0).unwrap();
        for _ in 0..200 {
            let sol = ModalSolution::new(
                Tag::Oracle,
                [(1, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)), (2, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))],
            );
            let rep = cubic_check(&sol, &p, &scaled()).unwrap();
            assert!(rep.values.iter().any(|v| v.relative > 1e-6));
        }
    }

    #[test]
    fn validator_rejects_structural_violations() {
        let spec = scaled();
        let four = ModalSolution::new(Tag::Oracle, (1..=4).map(|n| (n, 1.0, 1.0)));
        assert!(validate(&four, &spec).is_err());
        let lopsided = ModalSolution::new(Tag::Oracle, [(1, 1.0, 0.0)]);
        assert!(validate(&lopsided, &spec).is_err());
        let dup = ModalSolution::new(Tag::Oracle, [(1, 1.0, 1.0), (1, 2.0, 2.0)]);
        assert!(validate(&dup, &spec).is_err());
        let three = ModalSolution::new(Tag::Oracle, (1..=3).map(|n| (n, 1.0, -1.0)));
        assert!(validate(&three, &spec).is_ok());
    }

    #[test]
    fn tag_text_round_trip() {
        let tags = [
            Tag::Trivial,
            Tag::Unimodal { i: 3, sign: Sign::Minus },
            Tag::EeBimodal(FamilyKind::B2),
            Tag::EeTrimodal,
            Tag::GeneralBimodal(BimodalBranch::YZ),
            Tag::Oracle,
        ];
        for t in tags {
            assert_eq!(t.to_string().parse::<Tag>().unwrap(), t);
        }
        assert!("unimodal(5,+)".parse::<Tag>().is_err());
        assert!("bimodal".parse::<Tag>().is_err());
    }

    #[test]
    fn record_json_shape() {
        let (sol, p) = unimodal_sample();
        let rec = sol.to_record(&p, &scaled()).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["tag"], "unimodal(1,+)");
        assert_eq!(json["modes"][0]["n"], 1);
        assert!(json.get("C_u").is_some() && json.get("C_v").is_some());
        let back: SolutionRecord = serde_json::from_value(json).unwrap();
        assert_eq!(ModalSolution::from(back), sol);
    }

    #[test]
    fn profile_vanishes_at_hinges() {
        let sol = ModalSolution::new(Tag::Oracle, [(1, 1.0, -1.0), (3, 0.5, 0.5)]);
        let (u0, v0) = sol.profile_at(0.0);
        let (u1, v1) = sol.profile_at(1.0);
        assert!(u0.abs() < 1e-12 && v0.abs() < 1e-12 && u1.abs() < 1e-12 && v1.abs() < 1e-12);
        let (u, _) = sol.profile_at(0.5);
        assert!((u - std::f64::consts::SQRT_2 * (1.0 - 0.5)).abs() < 1e-12);
    }
}
