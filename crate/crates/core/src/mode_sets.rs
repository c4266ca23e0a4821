//! Effective modes and the resonant index sets.
//!
//! `E = {n : λₙ < −β}` is always an initial segment `{1, …, n⋆}` and is split
//! by the thresholds `μₙ = 2k/λₙ + λₙ` and `νₙ = 3k/λₙ + λₙ`:
//!
//! * `E1`: `λₙ < −β ≤ μₙ`
//! * `E2`: `μₙ < −β ≤ νₙ`
//! * `E3`: `νₙ < −β`
//!
//! Resonant pairs (`B1`, `B2`) and triples (`T`) are defined by equality
//! constraints on the eigenvalues, which are tested with a relative tolerance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solution::{FamilyKind, Params};
use crate::spectrum::Spectrum;

/// Default relative tolerance for the resonance equalities.
pub const DEFAULT_TOL_COND: f64 = 1e-9;

/// `−β` within this relative distance of a threshold counts as on it.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `μ = 2k/λ + λ`
pub fn mu(k: f64, lambda: f64) -> f64 {
    2.0 * k / lambda + lambda
}

/// `ν = 3k/λ + λ`
pub fn nu(k: f64, lambda: f64) -> f64 {
    3.0 * k / lambda + lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModeClass {
    Outside,
    E1,
    E2,
    E3,
}

/// `a ≤ b` with the boundary slack applied on the side of `b`.
fn at_most(a: f64, b: f64) -> bool {
    a <= b + BOUNDARY_TOL * b.abs()
}

/// Class of a mode with eigenvalue `lambda`. Values of `−β` on a threshold
/// (within [`BOUNDARY_TOL`]) fall into the lower class.
pub fn classify(p: &Params, lambda: f64) -> ModeClass {
    let load = -p.beta;
    if at_most(load, lambda) {
        ModeClass::Outside
    } else if at_most(load, mu(p.k, lambda)) {
        ModeClass::E1
    } else if at_most(load, nu(p.k, lambda)) {
        ModeClass::E2
    } else {
        ModeClass::E3
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSetPartition {
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "E1")]
    pub e1: Vec<usize>,
    #[serde(rename = "E2")]
    pub e2: Vec<usize>,
    #[serde(rename = "E3")]
    pub e3: Vec<usize>,
    pub n_star: usize,
    /// Scan bound actually used.
    pub n_max: usize,
    /// `λ_{n_max} < −β`: the true set extends past the scan bound.
    pub truncated: bool,
}

impl ModeSetPartition {
    pub fn class_of(&self, n: usize) -> ModeClass {
        if self.e1.contains(&n) {
            ModeClass::E1
        } else if self.e2.contains(&n) {
            ModeClass::E2
        } else if self.e3.contains(&n) {
            ModeClass::E3
        } else {
            ModeClass::Outside
        }
    }

    /// `2|E1| + 4|E2| + 8|E3|`
    pub fn unimodal_count(&self) -> usize {
        2 * self.e1.len() + 4 * self.e2.len() + 8 * self.e3.len()
    }
}

/// `|E| = ⌈√(−β/π²)⌉ − 1` for the hinged Laplacian, `0` when `β ≥ 0`.
pub fn dirichlet_effective_count(beta: f64) -> usize {
    if beta >= 0.0 {
        return 0;
    }
    let c = (-beta / (std::f64::consts::PI * std::f64::consts::PI)).sqrt().ceil();
    (c as usize).saturating_sub(1)
}

pub fn effective_modes(p: &Params, spec: &Spectrum) -> ModeSetPartition {
    let mut part = ModeSetPartition {
        e: Vec::new(),
        e1: Vec::new(),
        e2: Vec::new(),
        e3: Vec::new(),
        n_star: 0,
        n_max: spec.n_max(),
        truncated: false,
    };
    for n in 1..=spec.n_max() {
        let class = classify(p, spec.lambda(n));
        match class {
            ModeClass::Outside => break,
            ModeClass::E1 => part.e1.push(n),
            ModeClass::E2 => part.e2.push(n),
            ModeClass::E3 => part.e3.push(n),
        }
        part.e.push(n);
    }
    part.n_star = part.e.last().copied().unwrap_or(0);
    part.truncated = part.n_star == spec.n_max();
    if matches!(spec.generator(), crate::spectrum::Generator::DirichletLaplacian) && !part.truncated {
        // the closed count and the tolerant scan may differ only when −β sits
        // on an eigenvalue
        let next = ((part.n_star + 1) as f64 * std::f64::consts::PI).powi(2);
        let on_edge = [spec.lambda(part.n_star.max(1)), next]
            .iter()
            .any(|l| (l + p.beta).abs() <= 1e-9 * l);
        debug_assert!(on_edge || part.e.len() == dirichlet_effective_count(p.beta));
    }
    part
}

fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn check_increasing(indices: &[usize], spec: &Spectrum) -> Result<()> {
    for &n in indices {
        spec.eigenvalue(n)?;
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndices(format!("{indices:?} must be strictly increasing")));
    }
    Ok(())
}

/// `B1`: `λ₁λ₂ = 2k`, `λ₁+λ₂ < −β`. `B2`: `λ₁(λ₂−λ₁) = 2k`, `λ₂ < −β`.
pub fn ee_bimodal_membership(
    p: &Params,
    spec: &Spectrum,
    pair: (usize, usize),
    tol: f64,
) -> Result<Option<FamilyKind>> {
    check_increasing(&[pair.0, pair.1], spec)?;
    let (l1, l2) = (spec.lambda(pair.0), spec.lambda(pair.1));
    let two_k = 2.0 * p.k;
    let load = -p.beta;
    if approx_eq(l1 * l2, two_k, tol) && l1 + l2 < load {
        return Ok(Some(FamilyKind::B1));
    }
    if approx_eq(l1 * (l2 - l1), two_k, tol) && l2 < load {
        return Ok(Some(FamilyKind::B2));
    }
    Ok(None)
}

/// `T`: `λ₃ < −β` and `λ₁(λ₃−λ₁) = λ₂(λ₃−λ₂) = 2k`.
pub fn ee_trimodal_membership(
    p: &Params,
    spec: &Spectrum,
    triple: (usize, usize, usize),
    tol: f64,
) -> Result<bool> {
    check_increasing(&[triple.0, triple.1, triple.2], spec)?;
    let (l1, l2, l3) = (spec.lambda(triple.0), spec.lambda(triple.1), spec.lambda(triple.2));
    let two_k = 2.0 * p.k;
    let member = l3 < -p.beta
        && approx_eq(l1 * (l3 - l1), two_k, tol)
        && approx_eq(l2 * (l3 - l2), two_k, tol);
    if member {
        // the two equalities force λ₁ + λ₂ = λ₃
        debug_assert!(approx_eq(l1 + l2, l3, 10.0 * tol.max(1e-12)));
    }
    Ok(member)
}

/// Coupling `k` at which the given indices form a family of the given kind.
pub fn required_k(spec: &Spectrum, indices: &[usize], kind: FamilyKind) -> Result<Option<f64>> {
    check_increasing(indices, spec)?;
    let expected = if kind == FamilyKind::T { 3 } else { 2 };
    if indices.len() != expected {
        return Err(Error::InvalidIndices(format!(
            "{kind} needs {expected} indices, got {}",
            indices.len()
        )));
    }
    let l: Vec<f64> = indices.iter().map(|&n| spec.lambda(n)).collect();
    Ok(match kind {
        FamilyKind::B1 => Some(l[0] * l[1] / 2.0),
        FamilyKind::B2 => Some(l[0] * (l[1] - l[0]) / 2.0),
        FamilyKind::T => {
            let a = l[0] * (l[2] - l[0]);
            let b = l[1] * (l[2] - l[1]);
            approx_eq(a, b, 1e-12).then_some(a / 2.0)
        }
    })
}

/// All pairs in `E × E` belonging to `B1` or `B2`.
pub fn ee_pairs(p: &Params, spec: &Spectrum, tol: f64) -> Vec<((usize, usize), FamilyKind)> {
    let n_star = effective_modes(p, spec).n_star;
    let mut out = Vec::new();
    for n1 in 1..=n_star {
        for n2 in n1 + 1..=n_star {
            if let Ok(Some(kind)) = ee_bimodal_membership(p, spec, (n1, n2), tol) {
                out.push(((n1, n2), kind));
            }
        }
    }
    out
}

/// All triples in `T`.
pub fn ee_triples(p: &Params, spec: &Spectrum, tol: f64) -> Vec<(usize, usize, usize)> {
    let n_star = effective_modes(p, spec).n_star;
    let mut out = Vec::new();
    for n1 in 1..=n_star {
        for n2 in n1 + 1..=n_star {
            for n3 in n2 + 1..=n_star {
                if ee_trimodal_membership(p, spec, (n1, n2, n3), tol).unwrap_or(false) {
                    out.push((n1, n2, n3));
                }
            }
        }
    }
    out
}

/// Triples `n₁ < n₂ < n₃ ≤ up_to` for which some coupling makes them a `T`
/// triple, with that coupling. Independent of `β`.
pub fn resonant_triples(spec: &Spectrum, up_to: usize) -> Vec<((usize, usize, usize), f64)> {
    let top = up_to.min(spec.n_max());
    let mut out = Vec::new();
    for n1 in 1..=top {
        for n2 in n1 + 1..=top {
            for n3 in n2 + 1..=top {
                if let Ok(Some(k)) = required_k(spec, &[n1, n2, n3], FamilyKind::T) {
                    out.push(((n1, n2, n3), k));
                }
            }
        }
    }
    out
}
