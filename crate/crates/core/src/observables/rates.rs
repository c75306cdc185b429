//! Spontaneous decay: free-space rate, surface-assisted rate and the
//! two-level population dynamics.

use std::f64::consts::PI;

use super::{EmitterConfig, GammaMode, Populations, SolverOptions};
use crate::constants::{C, EPSILON_0, HBAR, MU_0};
use crate::error::{Error, Result};
use crate::planar_em::Material;
use crate::quadrature::QuadratureConfig;

use super::green_integrals::azimuthal_green;
use crate::quadrature::try_integrate_spectrum;

/// A decay rate with its propagated quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSample {
    /// [1/s]
    pub value: f64,
    /// [1/s]
    pub error_estimate: f64,
}

/// `Γ₀ = ω³|d|²/(3πε₀ħc³)`, with `|d|² = 2d²` for the default dipole.
pub fn free_space_rate(cfg: &EmitterConfig) -> f64 {
    let w = cfg.omega();
    let d2 = cfg.dipole_magnitude * cfg.dipole_magnitude * cfg.dipole_norm_sq();
    w.powi(3) * d2 / (3.0 * PI * EPSILON_0 * HBAR * C.powi(3))
}

/// `Γ⁽¹⁾(z) = (2μ₀ω²/ħ) Im{d · G⁽¹⁾ · d*}`, integrating the contracted
/// mode tensor.
pub fn surface_rate(cfg: &EmitterConfig, mat: &Material, quad: &QuadratureConfig) -> Result<RateSample> {
    cfg.validate()?;
    let w = cfg.omega();
    let d = cfg.dipole();
    let d_conj = d.map(|c| c.conj());
    let g = try_integrate_spectrum(
        |p| Ok(p.k_par * azimuthal_green(cfg.z, p, mat, quad)?.contract(&d, &d_conj).im),
        w,
        cfg.z,
        quad,
    )?;
    let pref = 2.0 * MU_0 * w * w / HBAR;
    Ok(RateSample {
        value: pref * g.value,
        error_estimate: pref * g.abs_error_estimate,
    })
}

/// The rate used in `exp(−Γt)` and `v = F/(mΓ)`.
pub fn total_rate(cfg: &EmitterConfig, mat: &Material, opts: &SolverOptions) -> Result<f64> {
    let g0 = free_space_rate(cfg);
    let gamma = match opts.gamma_mode {
        GammaMode::FreeSpace => g0,
        GammaMode::Total => g0 + surface_rate(cfg, mat, &opts.quadrature)?.value,
    };
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::NonPositiveDecayRate(gamma));
    }
    Ok(gamma)
}

/// `p₁ = e^{−Γt}`, `p₀ = 1 − p₁`.
pub fn populations(t: f64, gamma: f64) -> Result<Populations> {
    if !(t >= 0.0) || !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidDomain(format!("populations need t >= 0 and gamma >= 0, got t={t}, gamma={gamma}")));
    }
    let p1 = (-gamma * t).exp();
    Ok(Populations { p0: 1.0 - p1, p1, t })
}
