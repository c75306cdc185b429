//! Azimuthal and full mode integrals of the reflected Green tensor,
//! `G⁽¹⁾(r, r, ω) = ∫₀^{2π} dφ ∫₀^∞ dk_par k_par G⁽¹⁾(k_par, φ)`.

use crate::error::Result;
use crate::planar_em::{green_mode, green_mode_dx, ComplexTensor3, Material};
use crate::quadrature::{
    try_integrate_azimuth, try_integrate_spectrum, QuadratureConfig, QuadratureResult, SpectralPoint,
};

/// `∫ dφ G⁽¹⁾(k_par, φ)` at one spectral point.
pub fn azimuthal_green(z: f64, point: &SpectralPoint, mat: &Material, cfg: &QuadratureConfig) -> Result<ComplexTensor3> {
    let eps = mat.medium_epsilon();
    let r = try_integrate_azimuth(|phi| green_mode(z, &point.mode(phi, eps)?, mat), cfg)?;
    Ok(r.value)
}

/// `∫ dφ ∂_x G⁽¹⁾(k_par, φ)` at one spectral point; antisymmetric.
pub fn azimuthal_green_dx(
    z: f64,
    point: &SpectralPoint,
    mat: &Material,
    cfg: &QuadratureConfig,
) -> Result<ComplexTensor3> {
    let eps = mat.medium_epsilon();
    let r = try_integrate_azimuth(|phi| green_mode_dx(z, &point.mode(phi, eps)?, mat), cfg)?;
    Ok(r.value)
}

/// The scattering Green tensor at coincidence, `G⁽¹⁾(zẑ, zẑ, ω)` [1/m].
pub fn scattering_green(
    z: f64,
    omega: f64,
    mat: &Material,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<ComplexTensor3>> {
    try_integrate_spectrum(|p| Ok(azimuthal_green(z, p, mat, cfg)? * p.k_par), omega, z, cfg)
}

/// `∂_x G⁽¹⁾(r, zẑ, ω)` at `r = zẑ` [1/m²].
pub fn scattering_green_dx(
    z: f64,
    omega: f64,
    mat: &Material,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<ComplexTensor3>> {
    try_integrate_spectrum(|p| Ok(azimuthal_green_dx(z, p, mat, cfg)? * p.k_par), omega, z, cfg)
}
