//! Single extensible beam, free or resting on an elastic foundation:
//! `A²u + C_u Au (+ k u) = 0`, `C_u = β + ϱ Σ λₙ αₙ²`.

use serde::Serialize;

use crate::mode_sets::effective_modes;
use crate::solution::{Params, Sign};
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Plain,
    Foundation,
}

impl std::str::FromStr for Model {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "plain" => Ok(Model::Plain),
            "foundation" => Ok(Model::Foundation),
            other => Err(crate::Error::InvalidParams(format!("unknown single-beam model {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleUnimodal {
    pub n: usize,
    pub sign: Sign,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundationFamily {
    pub pair: (usize, usize),
    /// `ϱλ₁, ϱλ₂`
    pub coeffs: (f64, f64),
    /// `λ₁ + λ₂ + β`
    pub constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingleBeamSolutionSet {
    pub model: Model,
    pub unimodal: Vec<SingleUnimodal>,
    pub bimodal_families: Vec<FoundationFamily>,
}

fn both_signs(n: usize, a: f64) -> [SingleUnimodal; 2] {
    [
        SingleUnimodal { n, sign: Sign::Plus, amplitude: a },
        SingleUnimodal { n, sign: Sign::Minus, amplitude: -a },
    ]
}

/// `±√((−β−λₙ)/(ϱλₙ))` for every `n` with `λₙ < −β`. `k` is ignored.
pub fn enumerate_plain(p: &Params, spec: &Spectrum) -> SingleBeamSolutionSet {
    let unimodal = effective_modes(p, spec)
        .e
        .iter()
        .flat_map(|&n| {
            let l = spec.lambda(n);
            both_signs(n, ((-p.beta - l) / (p.varrho * l)).sqrt())
        })
        .collect();
    SingleBeamSolutionSet { model: Model::Plain, unimodal, bimodal_families: Vec::new() }
}

/// Unimodal `±√((−β − k/λₙ − λₙ)/(ϱλₙ))` where `k/λₙ + λₙ < −β`, and the
/// families on pairs with `λ₁λ₂ = k` (relative `tol`) and `λ₁ + λ₂ < −β`.
pub fn enumerate_foundation(p: &Params, spec: &Spectrum, tol: f64) -> SingleBeamSolutionSet {
    let n_star = effective_modes(p, spec).n_star;
    let mut unimodal = Vec::new();
    for n in 1..=n_star {
        let l = spec.lambda(n);
        let rad = -p.beta - p.k / l - l;
        if rad > 0.0 {
            unimodal.extend(both_signs(n, (rad / (p.varrho * l)).sqrt()));
        }
    }
    let mut bimodal_families = Vec::new();
    for n1 in 1..=n_star {
        for n2 in n1 + 1..=n_star {
            let (l1, l2) = (spec.lambda(n1), spec.lambda(n2));
            let prod = l1 * l2;
            if (prod - p.k).abs() <= tol * prod.max(p.k) && l1 + l2 < -p.beta {
                bimodal_families.push(FoundationFamily {
                    pair: (n1, n2),
                    coeffs: (p.varrho * l1, p.varrho * l2),
                    constant: l1 + l2 + p.beta,
                });
            }
        }
    }
    SingleBeamSolutionSet { model: Model::Foundation, unimodal, bimodal_families }
}

/// Largest relative residual of `λₙ² + C λₙ (+ k) = 0` over active modes of
/// `u = Σ αₙ eₙ`, `C = β + ϱ Σ λₙ αₙ²`.
pub fn single_residual(p: &Params, spec: &Spectrum, model: Model, modes: &[(usize, f64)]) -> f64 {
    let c = p.beta + p.varrho * modes.iter().map(|&(n, a)| spec.lambda(n) * a * a).sum::<f64>();
    let kk = if model == Model::Foundation { p.k } else { 0.0 };
    modes
        .iter()
        .filter(|&&(_, a)| a != 0.0)
        .map(|&(n, _)| {
            let l = spec.lambda(n);
            let terms = [l * l, c * l, kk];
            let r: f64 = terms.iter().sum();
            r.abs() / terms.iter().fold(1f64, |m, t| m.max(t.abs()))
        })
        .fold(0.0, f64::max)
}
