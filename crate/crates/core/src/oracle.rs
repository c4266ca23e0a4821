//! Brute-force Galerkin solver for the modal system truncated to modes
//! `1..=N`, used to cross-check the closed forms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::ee::EEFamily;
use crate::error::{Error, Result};
use crate::inventory::enumerate_all;
use crate::solution::{ModalSolution, Params, Tag};
use crate::spectrum::Spectrum;

/// Coefficients at or below this magnitude count as inactive.
pub const ACTIVE_THRESHOLD: f64 = 1e-7;
/// Default per-coefficient matching tolerance.
pub const DEFAULT_MATCH_TOL: f64 = 1e-6;

const MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 40;
const ARMIJO_C: f64 = 1e-4;
const NEWTON_TOL: f64 = 1e-11;
const SVD_CUTOFF: f64 = 1e-13;
const LU_PIVOT_RATIO: f64 = 1e-6;
const DEDUP_TOL: f64 = 1e-8;
const POLISH_ITER: usize = 40;
/// Reach of each deflated pass over the same starts, as a fraction of the
/// box radius.
const DEFLATION_REACH: [f64; 6] = [0.1, 0.2, 0.05, 0.3, 0.15, 0.4];
const DEFLATED_ITER: usize = 50;
/// Runs leaving the box scaled by this factor are abandoned.
const ESCAPE: f64 = 10.0;
/// `σ_min/σ_max` above which a root counts as regular (isolated).
const REGULAR_RATIO: f64 = 1e-8;

/// Multiplies the residual by `Π (ρ²/‖z − r‖² + 1)` over the known roots `r`,
/// so Newton cannot settle on them again.
struct Deflation {
    known: Vec<DVector<f64>>,
    /// `ρ²`.
    reach2: f64,
    box_radius: f64,
}

impl Deflation {
    /// Gradient of the log of the weight.
    fn log_gradient(&self, z: &DVector<f64>) -> DVector<f64> {
        let mut g = DVector::zeros(z.len());
        for r in &self.known {
            let e = z - r;
            let q = e.norm_squared();
            g -= e * (2.0 * self.reach2 / (q * (self.reach2 + q)));
        }
        g
    }
}

struct System {
    lambdas: Vec<f64>,
    p: Params,
}

impl System {
    fn n(&self) -> usize {
        self.lambdas.len()
    }

    fn axial(&self, z: &DVector<f64>) -> (f64, f64) {
        let n = self.n();
        let (mut su, mut sv) = (0.0, 0.0);
        for (m, l) in self.lambdas.iter().enumerate() {
            su += l * z[m] * z[m];
            sv += l * z[n + m] * z[n + m];
        }
        (self.p.beta + self.p.varrho * su, self.p.beta + self.p.varrho * sv)
    }

    fn residual(&self, z: &DVector<f64>) -> DVector<f64> {
        let n = self.n();
        let k = self.p.k;
        let (cu, cv) = self.axial(z);
        let mut f = DVector::zeros(2 * n);
        for (m, &l) in self.lambdas.iter().enumerate() {
            let (a, g) = (z[m], z[n + m]);
            f[m] = l * l * a + cu * l * a + k * (a - g);
            f[n + m] = l * l * g + cv * l * g - k * (a - g);
        }
        f
    }

    /// Residual evaluated in double-double, rounded once at the end.
    fn residual_dd(&self, z: &DVector<f64>) -> DVector<f64> {
        let n = self.n();
        let (mut su, mut sv) = (TwoFloat::from(0.0), TwoFloat::from(0.0));
        for (m, l) in self.lambdas.iter().enumerate() {
            su += TwoFloat::new_mul(z[m], z[m]) * *l;
            sv += TwoFloat::new_mul(z[n + m], z[n + m]) * *l;
        }
        let cu = su * self.p.varrho + self.p.beta;
        let cv = sv * self.p.varrho + self.p.beta;
        let mut f = DVector::zeros(2 * n);
        for (m, &l) in self.lambdas.iter().enumerate() {
            let (a, g) = (TwoFloat::from(z[m]), TwoFloat::from(z[n + m]));
            let c = (a - g) * self.p.k;
            f[m] = f64::from(a * (l * l) + cu * a * l + c);
            f[n + m] = f64::from(g * (l * l) + cv * g * l - c);
        }
        f
    }

    fn jacobian(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n();
        let (k, rho) = (self.p.k, self.p.varrho);
        let (cu, cv) = self.axial(z);
        let mut j = DMatrix::zeros(2 * n, 2 * n);
        for (m, &lm) in self.lambdas.iter().enumerate() {
            for (i, &li) in self.lambdas.iter().enumerate() {
                j[(m, i)] = 2.0 * rho * lm * li * z[m] * z[i];
                j[(n + m, n + i)] = 2.0 * rho * lm * li * z[n + m] * z[n + i];
            }
            j[(m, m)] += lm * lm + cu * lm + k;
            j[(n + m, n + m)] += lm * lm + cv * lm + k;
            j[(m, n + m)] = -k;
            j[(n + m, m)] = -k;
        }
        j
    }

    /// LU solve when the pivots are well spread, SVD pseudo-inverse otherwise.
    fn step(&self, z: &DVector<f64>, f: &DVector<f64>) -> Option<DVector<f64>> {
        let j = self.jacobian(z);
        let lu = j.clone().lu();
        let d = lu.u().diagonal().abs();
        if d.min() > LU_PIVOT_RATIO * d.max() {
            return lu.solve(&(-f));
        }
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        svd.solve(&(-f), SVD_CUTOFF * smax).ok()
    }

    fn is_regular(&self, z: &DVector<f64>) -> bool {
        let s = self.jacobian(z).singular_values();
        s.min() > REGULAR_RATIO * s.max()
    }

    /// Damped Newton from `z`; `Some` on convergence. With a non-empty
    /// deflation the iteration runs undamped on the deflated residual, with
    /// steps capped at the box radius: a monotone line search on the deflated
    /// merit stalls in its spurious minima.
    fn newton(&self, mut z: DVector<f64>, tol: f64, defl: &Deflation) -> Option<DVector<f64>> {
        let deflated = !defl.known.is_empty();
        let iters = if deflated { DEFLATED_ITER } else { MAX_ITER };
        let mut f = self.residual(&z);
        for _ in 0..iters {
            if f.amax() < tol {
                return Some(z);
            }
            if z.amax() > ESCAPE * defl.box_radius {
                return None;
            }
            let mut step = self.step(&z, &f)?;
            if deflated {
                // Newton step of the deflated map is a rescaled plain step
                let den = 1.0 - defl.log_gradient(&z).dot(&step);
                if den.abs() > 1e-12 {
                    step /= den;
                }
                z += (defl.box_radius / step.norm()).min(1.0) * step;
                f = self.residual(&z);
                continue;
            }
            let phi0 = 0.5 * f.norm_squared();
            let mut t = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let trial = &z + t * &step;
                let ft = self.residual(&trial);
                if 0.5 * ft.norm_squared() <= (1.0 - 2.0 * ARMIJO_C * t) * phi0 {
                    accepted = Some((trial, ft));
                    break;
                }
                t *= 0.5;
            }
            (z, f) = accepted?;
        }
        (f.amax() < tol).then_some(z)
    }

    /// Refines a converged root against the double-double residual. Each
    /// round compares a plain step with a doubled step followed by a plain
    /// one; the doubled step restores fast convergence onto roots where the
    /// Jacobian degenerates. Stops once neither candidate lowers the residual.
    fn polish(&self, mut z: DVector<f64>) -> DVector<f64> {
        let mut f = self.residual_dd(&z);
        let mut norm = f.norm();
        for _ in 0..POLISH_ITER {
            if norm == 0.0 {
                break;
            }
            let Some(step) = self.step(&z, &f) else { break };
            let plain = &z + &step;
            let doubled = &z + 2.0 * &step;
            let mut candidates = vec![plain];
            if let Some(s2) = self.step(&doubled, &self.residual_dd(&doubled)) {
                candidates.push(doubled + s2);
            }
            let (best_norm, best, best_f) = candidates
                .into_iter()
                .map(|c| {
                    let fc = self.residual_dd(&c);
                    (fc.norm(), c, fc)
                })
                .min_by(|a, b| a.0.total_cmp(&b.0))
                .expect("at least one candidate");
            if best_norm >= norm {
                break;
            }
            (norm, z, f) = (best_norm, best, best_f);
        }
        z
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRun {
    pub n_modes: usize,
    pub starts_used: usize,
    /// Converged Newton runs, summed over the plain and deflated passes.
    pub converged_count: usize,
    /// Half-width of the start box.
    pub box_radius: f64,
    /// Most coefficients above [`ACTIVE_THRESHOLD`] seen in any converged root.
    pub max_active_modes: usize,
    pub found: Vec<ModalSolution>,
}

/// Start-box half-width `√(max(1, −β)/(ϱλ₁))`.
pub fn box_radius(p: &Params, spec: &Spectrum) -> f64 {
    (1f64.max(-p.beta) / (p.varrho * spec.lambda(1))).sqrt()
}

/// Converged, polished, deduplicated roots of the truncated system from
/// `starts` uniform starts. Start `i` draws from stream `i` of a ChaCha
/// generator seeded with `seed`, so results do not depend on thread
/// scheduling. After the plain pass the same starts are rerun with the
/// regular roots found so far deflated, one pass per entry of the reach
/// schedule, until two passes in a row add no regular root.
pub fn galerkin_roots(p: &Params, spec: &Spectrum, n_modes: usize, starts: usize, seed: u64) -> Result<OracleRun> {
    p.validate()?;
    if n_modes == 0 || n_modes > spec.n_max() {
        return Err(Error::InvalidParams(format!("mode count {n_modes} outside 1..={}", spec.n_max())));
    }
    let sys = System { lambdas: spec.values()[..n_modes].to_vec(), p: *p };
    let r = box_radius(p, spec);
    let l_n = sys.lambdas[n_modes - 1];
    let scale = 1f64.max(l_n * l_n).max(p.k).max(p.beta.abs() * l_n);
    let tol = NEWTON_TOL * scale;
    let dim = 2 * n_modes;

    let start = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        DVector::from_fn(dim, |_, _| rng.gen_range(-r..=r))
    };

    let mut unique: Vec<DVector<f64>> = Vec::new();
    let mut regular: Vec<DVector<f64>> = Vec::new();
    let mut converged_count = 0;
    let mut idle = 0;
    for reach in std::iter::once(0.0).chain(DEFLATION_REACH) {
        let defl = Deflation { known: regular.clone(), reach2: (reach * r).powi(2), box_radius: r };
        let roots: Vec<Option<DVector<f64>>> = (0..starts)
            .into_par_iter()
            .map(|i| sys.newton(start(i), tol, &defl).map(|z| sys.polish(z)))
            .collect();
        let before = regular.len();
        for z in roots.into_iter().flatten() {
            converged_count += 1;
            if !unique.iter().any(|u| (u - &z).amax() <= DEDUP_TOL * r) {
                if sys.is_regular(&z) {
                    regular.push(z.clone());
                }
                unique.push(z);
            }
        }
        idle = if regular.len() == before { idle + 1 } else { 0 };
        if regular.is_empty() || idle == 2 {
            break;
        }
    }

    let mut max_active = 0;
    let found = unique
        .iter()
        .map(|z| {
            let modes: Vec<(usize, f64, f64)> = (0..n_modes)
                .filter(|&m| z[m].abs() > ACTIVE_THRESHOLD || z[n_modes + m].abs() > ACTIVE_THRESHOLD)
                .map(|m| (m + 1, z[m], z[n_modes + m]))
                .collect();
            max_active = max_active.max(modes.len());
            ModalSolution::new(Tag::Oracle, modes)
        })
        .collect();

    Ok(OracleRun {
        n_modes,
        starts_used: starts,
        converged_count,
        box_radius: r,
        max_active_modes: max_active,
        found,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub matched: usize,
    pub on_family: usize,
    pub unmatched: Vec<ModalSolution>,
    /// Closed-form isolated solutions no oracle root landed on.
    pub missing: Vec<ModalSolution>,
}

fn coeff_match(a: &ModalSolution, b: &ModalSolution, tol: f64) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= tol * 1f64.max(y.abs());
    let get = |s: &ModalSolution, n: usize| s.coeff(n).map_or((0.0, 0.0), |m| (m.alpha, m.gamma));
    a.modes().iter().map(|m| m.n).chain(b.modes().iter().map(|m| m.n)).all(|n| {
        let (x, y) = (get(a, n), get(b, n));
        close(x.0, y.0) && close(x.1, y.1)
    })
}

/// Classifies each oracle root as matching an isolated closed-form solution,
/// lying on a family quadric, or neither.
pub fn match_against(closed: &[ModalSolution], families: &[EEFamily], found: &[ModalSolution], tol: f64) -> MatchReport {
    let mut hit = vec![false; closed.len()];
    let mut report = MatchReport { matched: 0, on_family: 0, unmatched: Vec::new(), missing: Vec::new() };
    for root in found {
        let idx = closed.iter().position(|c| coeff_match(root, c, tol));
        if let Some(i) = idx {
            hit[i] = true;
            report.matched += 1;
        } else if families
            .iter()
            .any(|f| f.contains(root, tol, ACTIVE_THRESHOLD).is_some_and(|d| d <= tol))
        {
            report.on_family += 1;
        } else {
            report.unmatched.push(root.clone());
        }
    }
    report.missing = closed.iter().zip(hit).filter(|(_, h)| !h).map(|(c, _)| c.clone()).collect();
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    #[serde(flatten)]
    pub run: OracleRun,
    #[serde(flatten)]
    pub report: MatchReport,
}

/// Runs the oracle and matches it against the closed forms supported on
/// modes `1..=N`.
pub fn galerkin_solve(
    p: &Params,
    spec: &Spectrum,
    n_modes: usize,
    starts: usize,
    seed: u64,
    tol_cond: f64,
) -> Result<OracleResult> {
    let run = galerkin_roots(p, spec, n_modes, starts, seed)?;
    let inv = enumerate_all(p, spec, tol_cond);
    let within = |s: &ModalSolution| s.modes().iter().all(|m| m.n <= n_modes);
    let closed: Vec<ModalSolution> = inv.isolated().into_iter().filter(within).collect();
    let families: Vec<EEFamily> = inv.families.into_iter().filter(|f| f.modes.iter().all(|&n| n <= n_modes)).collect();
    let report = match_against(&closed, &families, &run.found, DEFAULT_MATCH_TOL);
    Ok(OracleResult { run, report })
}
