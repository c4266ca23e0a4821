//! Isolated bimodal solutions without equidistributed energy.
//!
//! For a pair `n₁ < n₂` write `λ₁, λ₂` for the eigenvalues and
//!
//! ```text
//! ζ = λ₂/λ₁,   σ = (k − λ₁λ₂)/k,
//! Φ = ((ζ+1) + (ζ−1)σ²)/(σζ),   Ψ = ((ζ+1) − (ζ−1)σ²)/σ.
//! ```
//!
//! `X, Y` are the roots of `t² − Φt + 1` and `W, Z` those of `t² − Ψt + 1`.
//! A solution `u = r e₁ + t e₂` has `v = rX e₁ + tW e₂` or `v = rY e₁ + tZ e₂`,
//! and `(r, √ζ t)` then lies on the intersection of a circle and an ellipse.

use serde::Serialize;

use crate::error::Result;
use crate::mode_sets::effective_modes;
use crate::solution::{BimodalBranch, ModalSolution, Params, Tag};
use crate::spectrum::Spectrum;

/// Relative distance to `λ₁λ₂ = 2k` or `λ₁(λ₂−λ₁) = 2k` below which the pair
/// is treated as an EE resonance.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BimodalCase {
    /// `λ₁λ₂ ∈ (0, k)`: never any roots.
    Weak,
    /// `λ₁λ₂ ∈ (k, 2k)`: roots iff `𝔪 < −β < 𝔐`.
    Intermediate,
    /// `λ₁(λ₂−λ₁) > 2k`: roots iff `𝔐 < −β`.
    Separated,
    /// `X = Y`; belongs to the EE families.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BimodalInvariants {
    pub pair: (usize, usize),
    pub lambda1: f64,
    pub lambda2: f64,
    pub k: f64,
    pub zeta: f64,
    pub sigma: f64,
    #[serde(rename = "Phi")]
    pub phi: f64,
    #[serde(rename = "Psi")]
    pub psi: f64,
    /// `Φ² − 4`
    pub disc: f64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    #[serde(rename = "W")]
    pub w: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub f: f64,
    pub g: f64,
    /// 𝔪
    pub m_small: f64,
    /// 𝔐
    pub m_big: f64,
    /// `k(X − Y)/(ϱλ₁²)`
    pub nu_shift: f64,
    pub case: BimodalCase,
}

/// Roots of `t² − s t + 1` given `√(s² − 4)`, larger first, the smaller one
/// from the product of roots.
fn unit_product_roots(s: f64, sqrt_disc: f64) -> (f64, f64) {
    if sqrt_disc == 0.0 {
        return (s / 2.0, s / 2.0);
    }
    let q = (s + s.signum() * sqrt_disc) / 2.0;
    let other = 1.0 / q;
    if q > other {
        (q, other)
    } else {
        (other, q)
    }
}

pub fn compute_invariants(p: &Params, spec: &Spectrum, pair: (usize, usize)) -> Result<Option<BimodalInvariants>> {
    let (l1, l2) = (spec.eigenvalue(pair.0)?, spec.eigenvalue(pair.1)?);
    if pair.0 >= pair.1 {
        return Err(crate::Error::InvalidIndices(format!("{pair:?} must be increasing")));
    }
    Ok(invariants_from(l1, l2, p.k, p.varrho).map(|mut inv| {
        inv.pair = pair;
        inv
    }))
}

/// Invariants for raw eigenvalues `0 < λ₁ < λ₂`.
pub fn invariants_from(l1: f64, l2: f64, k: f64, varrho: f64) -> Option<BimodalInvariants> {
    let p12 = l1 * l2;
    if (k - p12).abs() <= DEGENERATE_TOL * k {
        return None;
    }
    let two_k = 2.0 * k;
    let a = two_k - p12;
    let b = two_k - l1 * (l2 - l1);
    let c = two_k + l2 * (l2 - l1);
    let degenerate = a.abs() <= DEGENERATE_TOL * two_k || b.abs() <= DEGENERATE_TOL * two_k;
    if !degenerate && a * b < 0.0 {
        return None;
    }
    let zeta = l2 / l1;
    let sigma = (k - p12) / k;
    let s2 = sigma * sigma;
    let phi = ((zeta + 1.0) + (zeta - 1.0) * s2) / (sigma * zeta);
    let psi = ((zeta + 1.0) - (zeta - 1.0) * s2) / sigma;
    // Φ² − 4 = λ₁² A B C / (k²(k − λ₁λ₂)²), free of cancellation
    let disc = if degenerate {
        0.0
    } else {
        (l1 * l1 * a * b * c / (k * k * (k - p12) * (k - p12))).max(0.0)
    };
    let root = disc.sqrt();
    let (x, y) = unit_product_roots(phi, root);
    let (w, z) = unit_product_roots(psi, zeta * root);
    let f = (k * x - l1 * l1 - k) / l1;
    let g = (k * y - l1 * l1 - k) / l1;
    let denom = p12 - k;
    let kk = k * k + p12 * p12;
    let m_small = (kk + k * l2 * (l2 - l1)) / (denom * l2);
    let m_big = (kk - k * l1 * (l2 - l1)) / (denom * l1);
    let case = if degenerate {
        BimodalCase::Degenerate
    } else if p12 < k {
        BimodalCase::Weak
    } else if p12 < two_k {
        BimodalCase::Intermediate
    } else {
        BimodalCase::Separated
    };
    Some(BimodalInvariants {
        pair: (0, 0),
        lambda1: l1,
        lambda2: l2,
        k,
        zeta,
        sigma,
        phi,
        psi,
        disc,
        x,
        y,
        w,
        z,
        f,
        g,
        m_small,
        m_big,
        nu_shift: k * root / (varrho * l1 * l1),
        case,
    })
}

impl BimodalInvariants {
    /// 𝔪 and 𝔐 in their alternative forms
    /// `−g − kW²(X−Y)/(λ₁(W²−1))` and `−g − kX²(X−Y)/(λ₁(X²−1))`.
    pub fn thresholds_alt(&self) -> (f64, f64) {
        let (k, l1) = (self.k, self.lambda1);
        let xy = self.disc.sqrt();
        let w2 = self.w * self.w;
        let x2 = self.x * self.x;
        (
            -self.g - k * w2 * xy / (l1 * (w2 - 1.0)),
            -self.g - k * x2 * xy / (l1 * (x2 - 1.0)),
        )
    }

    /// The same thresholds through `Z` and `Y`.
    pub fn thresholds_alt_zy(&self) -> (f64, f64) {
        let (k, l1) = (self.k, self.lambda1);
        let xy = self.disc.sqrt();
        (
            -self.g - k * xy / (l1 * (1.0 - self.z * self.z)),
            -self.g - k * xy / (l1 * (1.0 - self.y * self.y)),
        )
    }

    /// Whether the case condition admits roots at load `β`.
    pub fn case_admits(&self, beta: f64) -> bool {
        let load = -beta;
        match self.case {
            BimodalCase::Intermediate => self.m_small < load && load < self.m_big,
            BimodalCase::Separated => self.m_big < load,
            BimodalCase::Weak | BimodalCase::Degenerate => false,
        }
    }

    /// `(r², s²)` of the linear solve behind the circle–ellipse system,
    /// with `s = √ζ t`. `None` in the degenerate case.
    pub fn squares(&self, p: &Params, which: BimodalBranch) -> Option<(f64, f64)> {
        if self.case == BimodalCase::Degenerate {
            return None;
        }
        let scale = p.varrho * self.lambda1;
        let ff = (self.f - p.beta) / scale;
        let gg = (self.g - p.beta) / scale;
        Some(match which {
            BimodalBranch::XW => {
                let (x2, w2) = (self.x * self.x, self.w * self.w);
                ((w2 * ff - gg) / (w2 - x2), (gg - x2 * ff) / (w2 - x2))
            }
            BimodalBranch::YZ => {
                let (y2, z2) = (self.y * self.y, self.z * self.z);
                ((z2 * gg - ff) / (z2 - y2), (ff - y2 * gg) / (z2 - y2))
            }
        })
    }

    /// Relative defect of `(r, t)` in the circle–ellipse system `which`.
    pub fn system_defect(&self, p: &Params, which: BimodalBranch, r: f64, t: f64) -> f64 {
        let scale = p.varrho * self.lambda1;
        let ff = (self.f - p.beta) / scale;
        let gg = (self.g - p.beta) / scale;
        let s2 = self.zeta * t * t;
        let r2 = r * r;
        let (circle, a2, b2, ellipse) = match which {
            BimodalBranch::XW => (ff, self.x * self.x, self.w * self.w, gg),
            BimodalBranch::YZ => (gg, self.y * self.y, self.z * self.z, ff),
        };
        let d1 = (r2 + s2 - circle).abs() / (r2 + s2).max(circle.abs()).max(f64::MIN_POSITIVE);
        let e = a2 * r2 + b2 * s2;
        let d2 = (e - ellipse).abs() / e.max(ellipse.abs()).max(f64::MIN_POSITIVE);
        d1.max(d2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootStatus {
    Found,
    None,
    /// `X = Y`: the pair carries an EE family instead.
    EeDegenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleEllipseSolutions {
    pub which: BimodalBranch,
    pub status: RootStatus,
    /// `(r, t)`, a full sign quadruple or empty.
    pub roots: Vec<(f64, f64)>,
}

pub fn solve_circle_ellipse(inv: &BimodalInvariants, p: &Params, which: BimodalBranch) -> CircleEllipseSolutions {
    let Some((r2, s2)) = inv.squares(p, which) else {
        return CircleEllipseSolutions { which, status: RootStatus::EeDegenerate, roots: Vec::new() };
    };
    if !(inv.case_admits(p.beta) && r2 > 0.0 && s2 > 0.0) {
        return CircleEllipseSolutions { which, status: RootStatus::None, roots: Vec::new() };
    }
    let r = r2.sqrt();
    let t = (s2 / inv.zeta).sqrt();
    CircleEllipseSolutions {
        which,
        status: RootStatus::Found,
        roots: vec![(r, t), (r, -t), (-r, t), (-r, -t)],
    }
}

/// The 8 (or 0) isolated non-EE solutions on one pair.
pub fn pair_solutions(inv: &BimodalInvariants, p: &Params) -> Vec<ModalSolution> {
    let (n1, n2) = inv.pair;
    let mut out = Vec::new();
    for which in [BimodalBranch::XW, BimodalBranch::YZ] {
        let (m1, m2) = match which {
            BimodalBranch::XW => (inv.x, inv.w),
            BimodalBranch::YZ => (inv.y, inv.z),
        };
        for (r, t) in solve_circle_ellipse(inv, p, which).roots {
            out.push(ModalSolution::new(Tag::GeneralBimodal(which), [(n1, r, r * m1), (n2, t, t * m2)]));
        }
    }
    out
}

/// Pairs carrying isolated non-EE solutions, with their invariants.
/// Scans `n₁ < n₂ ≤ n⋆`.
pub fn bstar_pairs(p: &Params, spec: &Spectrum) -> Vec<BimodalInvariants> {
    bstar_pairs_up_to(p, spec, effective_modes(p, spec).n_star)
}

/// As [`bstar_pairs`] but scanning `n₂ ≤ top` regardless of `E`.
pub fn bstar_pairs_up_to(p: &Params, spec: &Spectrum, top: usize) -> Vec<BimodalInvariants> {
    let top = top.min(spec.n_max());
    let mut out = Vec::new();
    for n1 in 1..=top {
        for n2 in n1 + 1..=top {
            let Ok(Some(inv)) = compute_invariants(p, spec, (n1, n2)) else { continue };
            let admits = [BimodalBranch::XW, BimodalBranch::YZ]
                .iter()
                .any(|&w| solve_circle_ellipse(&inv, p, w).status == RootStatus::Found);
            if admits {
                out.push(inv);
            }
        }
    }
    out
}

/// All isolated non-EE bimodal solutions, `8|𝔹⋆|` of them.
pub fn enumerate_general_bimodal(p: &Params, spec: &Spectrum) -> Vec<ModalSolution> {
    bstar_pairs(p, spec).iter().flat_map(|inv| pair_solutions(inv, p)).collect()
}

/// As [`enumerate_general_bimodal`], restricted to the listed pairs.
pub fn enumerate_general_bimodal_on(
    p: &Params,
    spec: &Spectrum,
    pairs: &[(usize, usize)],
) -> Result<Vec<ModalSolution>> {
    let mut out = Vec::new();
    for &pair in pairs {
        if let Some(inv) = compute_invariants(p, spec, pair)? {
            out.extend(pair_solutions(&inv, p));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{axial_coefficients, is_ee, modal_residual};
    use crate::spectrum::DEFAULT_N_MAX;

    fn scaled() -> Spectrum {
        Spectrum::scaled(DEFAULT_N_MAX).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn first_worked_example() {
        let p = Params::new(-15.5, 1.0, 3.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        let s3 = 3f64.sqrt();
        assert!(close(inv.x, -2.0 + s3, 1e-12));
        assert!(close(inv.y, -2.0 - s3, 1e-12));
        assert!(close(inv.w, -7.0 + 4.0 * s3, 1e-12));
        assert!(close(inv.z, -7.0 - 4.0 * s3, 1e-12));
        assert!(close(inv.m_small, 15.25, 1e-12));
        assert!(close(inv.m_big, 16.0, 1e-12));
        assert_eq!(inv.case, BimodalCase::Intermediate);

        let sis1 = solve_circle_ellipse(&inv, &p, BimodalBranch::XW);
        assert_eq!(sis1.roots.len(), 4);
        for (r, t) in &sis1.roots {
            assert!((r.abs() - 1.93185).abs() < 1e-5);
            assert!((t.abs() - 1.31948).abs() < 1e-5);
        }
        let sis2 = solve_circle_ellipse(&inv, &p, BimodalBranch::YZ);
        for (r, t) in &sis2.roots {
            assert!((r.abs() - 0.51763).abs() < 1e-5);
            assert!((t.abs() - 0.09473).abs() < 1e-5);
        }

        let sols = pair_solutions(&inv, &p);
        assert_eq!(sols.len(), 8);
        for s in &sols {
            assert!(modal_residual(s, &p, &scaled()).unwrap().relative < 1e-12);
            assert!(!is_ee(s, &p, &scaled(), 1e-6).unwrap());
            let (cu, cv) = axial_coefficients(s, &p, &scaled()).unwrap();
            let (f, g) = (3.0 * s3 - 10.0, -3.0 * s3 - 10.0);
            let want = match s.tag {
                Tag::GeneralBimodal(BimodalBranch::XW) => (f, g),
                _ => (g, f),
            };
            assert!(close(cu, want.0, 1e-12) && close(cv, want.1, 1e-12));
        }
    }

    #[test]
    fn second_worked_example() {
        let p = Params::new(-5.0, 1.0, 1.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        let s7 = 7f64.sqrt();
        assert!(close(inv.x, (-4.0 + s7) / 3.0, 1e-12));
        assert!(close(inv.w, (11.0 + 4.0 * s7) / 3.0, 1e-12));
        assert!(close(inv.m_big, 14.0 / 3.0, 1e-12));
        assert_eq!(inv.case, BimodalCase::Separated);
        let mut mags: Vec<(f64, f64)> = pair_solutions(&inv, &p)
            .iter()
            .map(|s| (s.modes()[0].alpha.abs(), s.modes()[1].alpha.abs()))
            .collect();
        assert_eq!(mags.len(), 8);
        mags.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        for (a, b) in mags {
            let sis1 = (a - 1.59482).abs() < 1e-5 && (b - 0.03587).abs() < 1e-5;
            let sis2 = (a - 0.71992).abs() < 1e-5 && (b - 0.25809).abs() < 1e-5;
            assert!(sis1 || sis2, "({a}, {b})");
        }
    }

    #[test]
    fn below_the_lower_threshold_is_empty() {
        let p = Params::new(-10.0, 1.0, 3.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        assert!(pair_solutions(&inv, &p).is_empty());
        assert!(!bstar_pairs(&p, &scaled()).iter().any(|i| i.pair == (1, 2)));
        // (2,3) is the only pair with roots here
        let pairs: Vec<_> = bstar_pairs(&p, &scaled()).iter().map(|i| i.pair).collect();
        assert_eq!(pairs, vec![(2, 3)]);
        assert_eq!(enumerate_general_bimodal(&p, &scaled()).len(), 8);
    }

    #[test]
    fn above_the_upper_threshold_is_empty() {
        let p = Params::new(-17.0, 1.0, 3.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        for w in [BimodalBranch::XW, BimodalBranch::YZ] {
            assert_eq!(solve_circle_ellipse(&inv, &p, w).status, RootStatus::None);
        }
    }

    #[test]
    fn weak_coupling_pair_has_real_invariants_and_no_roots() {
        // k = 5, (1,2): λ₁λ₂ = 4 ∈ (0, k), so Φ is real but no roots exist
        let p = Params::new(-50.0, 1.0, 5.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        assert_eq!(inv.case, BimodalCase::Weak);
        assert!(close(inv.phi, 6.4, 1e-12));
        assert!(pair_solutions(&inv, &p).is_empty());
    }

    #[test]
    fn unreal_and_singular_pairs_give_none() {
        // λ₁λ₂ = 4 > 2k and λ₁(λ₂−λ₁) = 3 < 2k
        let p = Params::new(-50.0, 1.0, 1.9).unwrap();
        assert!(compute_invariants(&p, &scaled(), (1, 2)).unwrap().is_none());
        // σ = 0
        let p = Params::new(-50.0, 1.0, 4.0).unwrap();
        assert!(compute_invariants(&p, &scaled(), (1, 2)).unwrap().is_none());
        assert!(compute_invariants(&p, &scaled(), (2, 1)).is_err());
    }

    #[test]
    fn resonant_pair_is_degenerate() {
        let p = Params::new(-10.0, 1.0, 2.0).unwrap();
        let inv = compute_invariants(&p, &scaled(), (1, 2)).unwrap().unwrap();
        assert_eq!(inv.case, BimodalCase::Degenerate);
        assert_eq!(inv.x, inv.y);
        let sol = solve_circle_ellipse(&inv, &p, BimodalBranch::XW);
        assert_eq!(sol.status, RootStatus::EeDegenerate);
        assert!(sol.roots.is_empty());
    }

    #[test]
    fn restricted_scan() {
        let p = Params::new(-15.5, 1.0, 3.0).unwrap();
        let only = enumerate_general_bimodal_on(&p, &scaled(), &[(1, 2)]).unwrap();
        assert_eq!(only.len(), 8);
        assert_eq!(enumerate_general_bimodal(&p, &scaled()).len(), 24);
    }

    use proptest::prelude::*;

    fn admissible() -> impl Strategy<Value = BimodalInvariants> {
        (0.05f64..20.0, 1.01f64..12.0, 0.05f64..200.0)
            .prop_filter_map("realness", |(l1, zeta, k)| {
                invariants_from(l1, l1 * zeta, k, 1.0).filter(|i| i.case != BimodalCase::Degenerate)
            })
    }

    fn rel(a: f64, b: f64, scale: f64) -> f64 {
        (a - b).abs() / scale.max(f64::MIN_POSITIVE)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn identities(inv in admissible()) {
            let z = inv.zeta;
            prop_assert!(rel(inv.x * inv.y, 1.0, 1.0) < 1e-12);
            prop_assert!(rel(inv.w * inv.z, 1.0, 1.0) < 1e-12);
            prop_assert!(rel(inv.x + inv.y, inv.phi, inv.x.abs().max(inv.y.abs())) < 1e-12);
            prop_assert!(rel(inv.w + inv.z, inv.psi, inv.w.abs().max(inv.z.abs())) < 1e-12);
            let target = (z - 1.0) * inv.sigma;
            prop_assert!(rel(z * inv.x - inv.w, target, (z * inv.x).abs().max(inv.w.abs()).max(target.abs())) < 1e-12);
            prop_assert!(rel(z * inv.y - inv.z, target, (z * inv.y).abs().max(inv.z.abs()).max(target.abs())) < 1e-12);
            let lhs = inv.phi * inv.phi * z * z - inv.psi * inv.psi;
            prop_assert!(rel(lhs, 4.0 * (z * z - 1.0), (inv.phi * z).powi(2).max(inv.psi.powi(2))) < 1e-12);
            let (l1, l2, k) = (inv.lambda1, inv.lambda2, inv.k);
            let lhs = (k * inv.x - l1 * l1 - k) / l1;
            let rhs = (k * inv.w - l2 * l2 - k) / l2;
            let scale = (k * inv.x.abs() + l1 * l1 + k) / l1 + (k * inv.w.abs() + l2 * l2 + k) / l2;
            prop_assert!(rel(lhs, rhs, scale) < 1e-12);
        }

        #[test]
        fn case_signs(inv in admissible()) {
            let (x, y, w, z) = (inv.x, inv.y, inv.w, inv.z);
            match inv.case {
                BimodalCase::Weak => prop_assert!(w > x && x > 1.0 && 1.0 > y && y > z && z > 0.0),
                BimodalCase::Intermediate => prop_assert!(z < y && y < -1.0 && -1.0 < x && x < w && w < 0.0),
                BimodalCase::Separated => prop_assert!(y < -1.0 && -1.0 < x && x < 0.0 && 0.0 < z && z < 1.0 && 1.0 < w),
                BimodalCase::Degenerate => unreachable!(),
            }
            if inv.sigma < 0.0 {
                prop_assert!(inv.m_big > inv.m_small && inv.m_small > 0.0);
            }
        }

        #[test]
        fn geometry_matches_case_condition(inv in admissible(), load in 0.0f64..400.0) {
            let p = Params::new(-load, 1.0, inv.k).unwrap();
            // stay clear of the thresholds themselves
            let near = |m: f64| (load - m).abs() <= 1e-8 * m.abs().max(1.0);
            prop_assume!(!near(inv.m_small) && !near(inv.m_big));
            for which in [BimodalBranch::XW, BimodalBranch::YZ] {
                let (r2, s2) = inv.squares(&p, which).unwrap();
                prop_assert_eq!(r2 > 0.0 && s2 > 0.0, inv.case_admits(p.beta), "{:?} {:?}", which, inv.case);
            }
        }

        #[test]
        fn roots_solve_their_own_system_only(inv in admissible(), load in 0.0f64..400.0) {
            let p = Params::new(-load, 1.0, inv.k).unwrap();
            for which in [BimodalBranch::XW, BimodalBranch::YZ] {
                let other = match which { BimodalBranch::XW => BimodalBranch::YZ, _ => BimodalBranch::XW };
                for (r, t) in solve_circle_ellipse(&inv, &p, which).roots {
                    prop_assert!(inv.system_defect(&p, which, r, t) < 1e-12);
                    prop_assert!(inv.system_defect(&p, other, r, t) > 1e-9);
                }
            }
        }

        #[test]
        fn solutions_verify(l1 in 0.05f64..20.0, zeta in 1.01f64..12.0, k in 0.05f64..200.0, load in 0.0f64..400.0) {
            let spec = Spectrum::explicit(vec![l1, l1 * zeta]).unwrap();
            let p = Params::new(-load, 1.0, k).unwrap();
            if let Some(inv) = compute_invariants(&p, &spec, (1, 2)).unwrap() {
                for s in pair_solutions(&inv, &p) {
                    prop_assert!(modal_residual(&s, &p, &spec).unwrap().relative < 1e-10);
                    let (cu, cv) = axial_coefficients(&s, &p, &spec).unwrap();
                    prop_assert!((cu - cv).abs() > 1e-6);
                }
            }
        }

        #[test]
        fn bstar_pairs_lie_in_e(beta in -300.0f64..0.0, k in 0.05f64..60.0) {
            let spec = Spectrum::scaled(24).unwrap();
            let p = Params::new(beta, 1.0, k).unwrap();
            let n_star = effective_modes(&p, &spec).n_star;
            for inv in bstar_pairs_up_to(&p, &spec, 24) {
                prop_assert!(inv.pair.1 <= n_star);
            }
        }

        #[test]
        fn alternative_threshold_forms(inv in admissible()) {
            let (ms, mb) = inv.thresholds_alt();
            let (ms2, mb2) = inv.thresholds_alt_zy();
            let scale = |m: f64| m.abs().max(inv.g.abs()).max(1.0);
            prop_assert!(rel(ms, inv.m_small, scale(inv.m_small)) < 1e-11);
            prop_assert!(rel(mb, inv.m_big, scale(inv.m_big)) < 1e-11);
            prop_assert!(rel(ms2, inv.m_small, scale(inv.m_small)) < 1e-11);
            prop_assert!(rel(mb2, inv.m_big, scale(inv.m_big)) < 1e-11);
        }
    }
}
