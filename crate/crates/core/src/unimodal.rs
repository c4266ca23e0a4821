//! Unimodal solutions `u = α eₙ`, `v = γ eₙ`.

use serde::Serialize;

use crate::error::Result;
use crate::mode_sets::{classify, effective_modes, mu, nu, ModeClass};
use crate::solution::{ModalSolution, Params, Sign, Tag};
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UAmplitude {
    pub i: u8,
    pub sign: Sign,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UAmplitudeSet {
    pub n: usize,
    pub class: ModeClass,
    pub entries: Vec<UAmplitude>,
}

impl UAmplitudeSet {
    /// Value of `α_{n,i}^±`, if present.
    pub fn get(&self, i: u8, sign: Sign) -> Option<f64> {
        self.entries.iter().find(|e| e.i == i && e.sign == sign).map(|e| e.value)
    }
}

/// Magnitudes `|α_{n,1}|, …, |α_{n,4}|` for a mode of eigenvalue `lambda`,
/// without class gating. Entries with a negative radicand are `None`.
pub fn amplitude_magnitudes(p: &Params, lambda: f64) -> [Option<f64>; 4] {
    let (beta, rho, k) = (p.beta, p.varrho, p.k);
    let (m, v) = (mu(k, lambda), nu(k, lambda));
    let root = |x: f64| (x >= 0.0).then(|| x.sqrt());
    let a1 = root((-beta - lambda) / (rho * lambda));
    let a2 = root((-beta - m) / (rho * lambda));
    // (β+λ+μ−ν)(β+ν), kept as a product of the two signed factors
    let disc = (beta + lambda + m - v) * (beta + v);
    let s = -beta - lambda - k / lambda;
    let (a3, a4) = if disc >= 0.0 && s > 0.0 {
        let big = (s + disc.sqrt()) / (2.0 * rho * lambda);
        // a3² a4² = k² / (ϱ²λ⁴)
        let small = k * k / (rho * rho * lambda.powi(4) * big);
        (Some(big.sqrt()), Some(small.sqrt()))
    } else {
        (None, None)
    };
    [a1, a2, a3, a4]
}

/// `ηₙ = 1 + β/λₙ + k/λₙ²`
pub fn eta(p: &Params, lambda: f64) -> f64 {
    1.0 + p.beta / lambda + p.k / (lambda * lambda)
}

/// `ωₙ = λₙ²/k`
pub fn omega(p: &Params, lambda: f64) -> f64 {
    lambda * lambda / p.k
}

/// The nontrivial u-amplitudes of mode `n`: 2 in `E1`, 4 in `E2`, 8 in `E3`,
/// none outside `E`.
pub fn u_amplitudes(p: &Params, spec: &Spectrum, n: usize) -> Result<UAmplitudeSet> {
    let lambda = spec.eigenvalue(n)?;
    let class = classify(p, lambda);
    let count = match class {
        ModeClass::Outside => 0,
        ModeClass::E1 => 1,
        ModeClass::E2 => 2,
        ModeClass::E3 => 4,
    };
    let mags = amplitude_magnitudes(p, lambda);
    let mut entries = Vec::with_capacity(2 * count);
    for (idx, mag) in mags.iter().enumerate().take(count) {
        // class gating already guarantees a nonnegative radicand up to roundoff
        let a = mag.unwrap_or(0.0);
        for sign in [Sign::Plus, Sign::Minus] {
            entries.push(UAmplitude { i: idx as u8 + 1, sign, value: sign.value() * a });
        }
    }
    Ok(UAmplitudeSet { n, class, entries })
}

/// γ partner of `α_{n,i}^±`: `α₁^±`, `α₂^∓`, `α₄^∓`, `α₃^∓` for `i = 1..4`.
fn partner(i: u8, sign: Sign) -> (u8, Sign) {
    match i {
        1 => (1, sign),
        2 => (2, sign.flip()),
        3 => (4, sign.flip()),
        _ => (3, sign.flip()),
    }
}

/// Unimodal solutions supported on mode `n`.
pub fn unimodal_solutions(p: &Params, spec: &Spectrum, n: usize) -> Result<Vec<ModalSolution>> {
    let set = u_amplitudes(p, spec, n)?;
    let mut out = Vec::with_capacity(set.entries.len());
    for e in &set.entries {
        let (j, s) = partner(e.i, e.sign);
        let gamma = set.get(j, s).expect("partner amplitude present in the same class");
        out.push(ModalSolution::new(Tag::Unimodal { i: e.i, sign: e.sign }, [(n, e.value, gamma)]));
    }
    Ok(out)
}

/// All nontrivial unimodal solutions, `2|E1| + 4|E2| + 8|E3|` of them.
pub fn enumerate_unimodal(p: &Params, spec: &Spectrum) -> Vec<ModalSolution> {
    effective_modes(p, spec)
        .e
        .iter()
        .flat_map(|&n| unimodal_solutions(p, spec, n).expect("index from the effective set"))
        .collect()
}
