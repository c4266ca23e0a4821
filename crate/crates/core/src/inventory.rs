//! Full closed-form inventory and parameter sweeps.

use serde::Serialize;

use crate::bimodal::{bstar_pairs, compute_invariants, pair_solutions, BimodalInvariants};
use crate::ee::{enumerate_families, EEFamily};
use crate::error::Result;
use crate::mode_sets::{effective_modes, mu, nu, ModeSetPartition};
use crate::solution::{cubic_check, modal_residual, validate, ModalSolution, Params};
use crate::spectrum::Spectrum;
use crate::unimodal::{enumerate_unimodal, unimodal_solutions};

/// Default bound on the relative modal residual of emitted solutions.
pub const DEFAULT_TOL_RES: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Inventory {
    pub partition: ModeSetPartition,
    pub unimodal: Vec<ModalSolution>,
    pub families: Vec<EEFamily>,
    pub bstar: Vec<BimodalInvariants>,
    pub general_bimodal: Vec<ModalSolution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub unimodal: usize,
    pub ee_families: usize,
    pub general_bimodal: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verification {
    pub checked: usize,
    pub max_relative_residual: f64,
    pub max_cubic_relative: f64,
    pub tol_res: f64,
    pub passed: bool,
}

impl Inventory {
    pub fn counts(&self) -> Counts {
        Counts {
            unimodal: self.unimodal.len(),
            ee_families: self.families.len(),
            general_bimodal: self.general_bimodal.len(),
        }
    }

    /// Trivial, unimodal and general bimodal solutions.
    pub fn isolated(&self) -> Vec<ModalSolution> {
        let mut out = vec![ModalSolution::trivial()];
        out.extend(self.unimodal.iter().cloned());
        out.extend(self.general_bimodal.iter().cloned());
        out
    }

    /// Tag-blind check of every isolated solution plus `samples` members of
    /// each family.
    pub fn verify(&self, p: &Params, spec: &Spectrum, samples: usize, seed: u64, tol_res: f64) -> Result<Verification> {
        let mut all = self.isolated();
        for fam in &self.families {
            all.extend(fam.sample(samples, seed)?);
        }
        verify_solutions(&all, p, spec, tol_res)
    }
}

pub fn verify_solutions(sols: &[ModalSolution], p: &Params, spec: &Spectrum, tol_res: f64) -> Result<Verification> {
    let mut max_res: f64 = 0.0;
    let mut max_cubic: f64 = 0.0;
    let mut structural = true;
    for s in sols {
        structural &= validate(s, spec).is_ok();
        max_res = max_res.max(modal_residual(s, p, spec)?.relative);
        if !s.is_trivial() {
            max_cubic = max_cubic.max(cubic_check(s, p, spec)?.max_relative);
        }
    }
    Ok(Verification {
        checked: sols.len(),
        max_relative_residual: max_res,
        max_cubic_relative: max_cubic,
        tol_res,
        passed: structural && max_res < tol_res && max_cubic < 1e-9,
    })
}

pub fn enumerate_all(p: &Params, spec: &Spectrum, tol_cond: f64) -> Inventory {
    let bstar = bstar_pairs(p, spec);
    Inventory {
        partition: effective_modes(p, spec),
        unimodal: enumerate_unimodal(p, spec),
        families: enumerate_families(p, spec, tol_cond),
        general_bimodal: bstar.iter().flat_map(|inv| pair_solutions(inv, p)).collect(),
        bstar,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub branch_id: String,
    /// `n` or `n1-n2`.
    pub modes: String,
    pub alpha1: f64,
    pub gamma1: f64,
    pub alpha2: f64,
    pub gamma2: f64,
    pub n_effective: usize,
    pub n_unimodal: usize,
    pub n_ee_families: usize,
    pub n_general_bimodal: usize,
}

/// `count` evenly spaced loads `−β` from `from` to `to`, plus every fork
/// value `λₙ, μₙ, νₙ` of the tracked modes inside that range. Returned as
/// `β` values, monotone in `−β`.
pub fn sweep_grid(from: f64, to: f64, count: usize, spec: &Spectrum, k: f64, tracked: &[usize]) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut loads: Vec<f64> = if count == 1 {
        vec![from]
    } else {
        (0..count).map(|i| from + (to - from) * i as f64 / (count - 1) as f64).collect()
    };
    let (lo, hi) = (from.min(to), from.max(to));
    for &n in tracked {
        let l = spec.eigenvalue(n)?;
        for b in [l, mu(k, l), nu(k, l)] {
            if (lo..=hi).contains(&b) {
                loads.push(b);
            }
        }
    }
    if to >= from {
        loads.sort_by(f64::total_cmp);
    } else {
        loads.sort_by(|a, b| b.total_cmp(a));
    }
    loads.dedup();
    Ok(loads.into_iter().map(|l| -l).collect())
}

/// Branch data on each `β` for the tracked modes (unimodal branches) and
/// pairs (general bimodal branches). Every `β` gets at least a `trivial` row.
pub fn sweep(
    base: &Params,
    spec: &Spectrum,
    betas: &[f64],
    tracked_modes: &[usize],
    tracked_pairs: &[(usize, usize)],
    tol_cond: f64,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &beta in betas {
        let p = Params::new(beta, base.varrho, base.k)?;
        let counts = enumerate_all(&p, spec, tol_cond).counts();
        let n_effective = effective_modes(&p, spec).e.len();
        let row = |branch_id: String, modes: String, c: [f64; 4]| SweepRow {
            beta,
            branch_id,
            modes,
            alpha1: c[0],
            gamma1: c[1],
            alpha2: c[2],
            gamma2: c[3],
            n_effective,
            n_unimodal: counts.unimodal,
            n_ee_families: counts.ee_families,
            n_general_bimodal: counts.general_bimodal,
        };
        let mut block = vec![row("trivial".into(), String::new(), [0.0; 4])];
        for &n in tracked_modes {
            for s in unimodal_solutions(&p, spec, n)? {
                let m = s.modes()[0];
                block.push(row(s.tag.to_string(), n.to_string(), [m.alpha, m.gamma, 0.0, 0.0]));
            }
        }
        for &pair in tracked_pairs {
            if let Some(inv) = compute_invariants(&p, spec, pair)? {
                for (i, s) in pair_solutions(&inv, &p).iter().enumerate() {
                    let (a, b) = (s.modes()[0], s.modes()[1]);
                    block.push(row(
                        format!("{}#{}", s.tag, i % 4),
                        format!("{}-{}", pair.0, pair.1),
                        [a.alpha, a.gamma, b.alpha, b.gamma],
                    ));
                }
            }
        }
        block.sort_by(|a, b| a.branch_id.cmp(&b.branch_id).then(a.modes.cmp(&b.modes)));
        rows.extend(block);
    }
    Ok(rows)
}
