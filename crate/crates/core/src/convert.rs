//! Physical beam data to the dimensionless triple `(β, ϱ, k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solution::Params;

/// Consistent user units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Beam length ℓ.
    pub ell: f64,
    /// Thickness h.
    pub h: f64,
    /// Young modulus E.
    pub e_mod: f64,
    /// Poisson ratio ν.
    pub nu_poisson: f64,
    /// Axial end displacement D (negative compresses).
    pub d_axial: f64,
    /// Core stiffness ϰ.
    pub kappa_core: f64,
    /// Cross-section area |Ω|.
    pub omega_area: f64,
    /// Mass density, only for the characteristic time.
    pub rho_density: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub delta: f64,
    pub chi: f64,
    pub kappa: f64,
    pub slenderness: f64,
    pub tau0: Option<f64>,
    pub warnings: Vec<String>,
}

/// Accepted band for `|χ|/(h/ℓ)` and `κ/(h/ℓ)` before a warning is raised.
pub const ORDER_BAND: (f64, f64) = (0.1, 10.0);

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("ell", self.ell),
            ("h", self.h),
            ("E", self.e_mod),
            ("kappa", self.kappa_core),
            ("area", self.omega_area),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if self.h >= self.ell {
            return Err(Error::InvalidParams(format!("need h < ell, got h = {} and ell = {}", self.h, self.ell)));
        }
        if !(self.nu_poisson > -1.0 && self.nu_poisson < 0.5) {
            return Err(Error::InvalidParams(format!("Poisson ratio must lie in (-1, 0.5), got {}", self.nu_poisson)));
        }
        if !self.d_axial.is_finite() {
            return Err(Error::InvalidParams("D must be finite".into()));
        }
        if let Some(rho) = self.rho_density {
            if !(rho.is_finite() && rho > 0.0) {
                return Err(Error::InvalidParams(format!("rho must be positive, got {rho}")));
            }
        }
        Ok(())
    }
}

pub fn dimensionless_params(phys: &PhysicalParams) -> Result<(Params, Diagnostics)> {
    phys.validate()?;
    let PhysicalParams { ell, h, e_mod, nu_poisson: nu, d_axial, kappa_core, omega_area, rho_density } = *phys;
    let delta = h * h / (6.0 * ell * ell);
    let chi = 2.0 * d_axial / ell;
    let kappa = 2.0 * kappa_core * ell * ell * (1.0 - nu * nu) / (e_mod * omega_area * h);
    let slenderness = h / ell;
    let tau0 = rho_density.map(|rho| (2.0 * ell * ell * rho * (1.0 + nu) / e_mod).sqrt());

    let mut warnings = Vec::new();
    let (lo, hi) = ORDER_BAND;
    for (name, v) in [("|chi|", chi.abs()), ("kappa", kappa)] {
        let ratio = v / slenderness;
        if v != 0.0 && !(lo..=hi).contains(&ratio) {
            warnings.push(format!("{name} = {v:e} is not of the order of h/ell = {slenderness:e}"));
        }
    }
    let params = Params::new(chi / delta, 1.0 / delta, kappa / delta)?;
    Ok((params, Diagnostics { delta, chi, kappa, slenderness, tau0, warnings }))
}
