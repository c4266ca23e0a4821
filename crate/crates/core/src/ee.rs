//! Continua of equidistributed-energy (EE) solutions.
//!
//! On a resonant pair or triple the solutions fill the quadric
//! `ϱ Σ λᵢ xᵢ² + c = 0` with `u = Σ xᵢ eᵢ` and `v = Σ sᵢ xᵢ eᵢ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mode_sets::{ee_bimodal_membership, ee_pairs, ee_triples, ee_trimodal_membership};
use crate::solution::{FamilyKind, ModalSolution, Params, Tag};
use crate::spectrum::Spectrum;

/// Coordinates closer than this fraction of the semi-axis to zero are
/// resampled.
pub const AXIS_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quadric {
    /// `ϱλᵢ`
    pub coeffs: Vec<f64>,
    pub constant: f64,
}

impl Quadric {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(c, x)| c * x * x).sum::<f64>() + self.constant
    }

    /// Semi-axes `√(−c/coeffᵢ)`.
    pub fn semi_axes(&self) -> Result<Vec<f64>> {
        if self.constant >= 0.0 {
            return Err(Error::DegenerateFamily { constant: self.constant });
        }
        Ok(self.coeffs.iter().map(|c| (-self.constant / c).sqrt()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EEFamily {
    pub kind: FamilyKind,
    pub modes: Vec<usize>,
    pub quadric: Quadric,
    pub sign_pattern: Vec<i8>,
}

impl EEFamily {
    fn tag(&self) -> Tag {
        match self.kind {
            FamilyKind::T => Tag::EeTrimodal,
            kind => Tag::EeBimodal(kind),
        }
    }

    /// The family member with u-coordinates `x`.
    pub fn member(&self, x: &[f64]) -> Result<ModalSolution> {
        if x.len() != self.modes.len() {
            return Err(Error::InvalidSolution(format!(
                "{} coordinates for a {}-mode family",
                x.len(),
                self.modes.len()
            )));
        }
        let defect = self.quadric.evaluate(x).abs() / self.quadric.constant.abs().max(f64::MIN_POSITIVE);
        if defect > 1e-9 {
            return Err(Error::OffQuadric { defect });
        }
        Ok(self.assemble(x))
    }

    fn assemble(&self, x: &[f64]) -> ModalSolution {
        ModalSolution::new(
            self.tag(),
            self.modes
                .iter()
                .zip(x)
                .zip(&self.sign_pattern)
                .map(|((&n, &x), &s)| (n, x, s as f64 * x)),
        )
    }

    /// Relative quadric defect of `sol` and whether its signs match the
    /// pattern, both within `tol`. `None` if the active modes differ.
    pub fn contains(&self, sol: &ModalSolution, tol: f64, active_threshold: f64) -> Option<f64> {
        if sol.active_above(active_threshold) != self.modes {
            return None;
        }
        let mut x = Vec::with_capacity(self.modes.len());
        for (&n, &s) in self.modes.iter().zip(&self.sign_pattern) {
            let c = sol.coeff(n)?;
            if (c.gamma - s as f64 * c.alpha).abs() > tol * c.alpha.abs().max(1.0) {
                return None;
            }
            x.push(c.alpha);
        }
        Some(self.quadric.evaluate(&x).abs() / self.quadric.constant.abs())
    }

    /// `count` members drawn by uniform angles on the quadric, each with all
    /// coordinates at least [`AXIS_MARGIN`] of their semi-axis away from zero.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<ModalSolution>> {
        let axes = self.quadric.semi_axes()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = std::f64::consts::TAU;
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let x: Vec<f64> = if axes.len() == 2 {
                let th: f64 = rng.gen_range(0.0..tau);
                vec![axes[0] * th.cos(), axes[1] * th.sin()]
            } else {
                let th: f64 = rng.gen_range(0.0..tau);
                let ph: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                vec![axes[0] * ph.sin() * th.cos(), axes[1] * ph.sin() * th.sin(), axes[2] * ph.cos()]
            };
            if x.iter().zip(&axes).any(|(x, a)| x.abs() < AXIS_MARGIN * a) {
                continue;
            }
            out.push(self.assemble(&x));
        }
        Ok(out)
    }
}

fn build(p: &Params, spec: &Spectrum, kind: FamilyKind, modes: Vec<usize>) -> EEFamily {
    let lambdas: Vec<f64> = modes.iter().map(|&n| spec.lambda(n)).collect();
    let constant = p.beta
        + match kind {
            FamilyKind::B1 => lambdas[0] + lambdas[1],
            FamilyKind::B2 => lambdas[1],
            FamilyKind::T => lambdas[2],
        };
    let sign_pattern = match kind {
        FamilyKind::B1 => vec![-1, -1],
        FamilyKind::B2 => vec![-1, 1],
        FamilyKind::T => vec![-1, -1, 1],
    };
    EEFamily {
        kind,
        quadric: Quadric { coeffs: lambdas.iter().map(|l| p.varrho * l).collect(), constant },
        modes,
        sign_pattern,
    }
}

/// The family on `indices` (a pair or a triple), if they are resonant.
pub fn ee_family(p: &Params, spec: &Spectrum, indices: &[usize], tol: f64) -> Result<Option<EEFamily>> {
    match *indices {
        [a, b] => Ok(ee_bimodal_membership(p, spec, (a, b), tol)?
            .map(|kind| build(p, spec, kind, indices.to_vec()))),
        [a, b, c] => Ok(ee_trimodal_membership(p, spec, (a, b, c), tol)?
            .then(|| build(p, spec, FamilyKind::T, indices.to_vec()))),
        _ => Err(Error::InvalidIndices(format!("expected 2 or 3 indices, got {}", indices.len()))),
    }
}

/// Every EE family within the effective modes.
pub fn enumerate_families(p: &Params, spec: &Spectrum, tol: f64) -> Vec<EEFamily> {
    let mut out: Vec<EEFamily> = ee_pairs(p, spec, tol)
        .into_iter()
        .map(|((a, b), kind)| build(p, spec, kind, vec![a, b]))
        .collect();
    out.extend(ee_triples(p, spec, tol).into_iter().map(|(a, b, c)| build(p, spec, FamilyKind::T, vec![a, b, c])));
    out
}
