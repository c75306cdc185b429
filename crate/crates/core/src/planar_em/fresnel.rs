use num_complex::Complex64;

use super::{Material, ModeCoordinates};
use crate::error::{Error, Result};

/// s-polarised reflection coefficient `(kz − kz_m)/(kz + kz_m)`; `−1` for
/// the perfect conductor.
pub fn fresnel_rs(mode: &ModeCoordinates, mat: &Material) -> Result<Complex64> {
    if mat.is_perfect_conductor() {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    let den = mode.kz_vac + mode.kz_med;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::FresnelSingular { k_par: mode.k_par });
    }
    Ok((mode.kz_vac - mode.kz_med) / den)
}

/// p-polarised reflection coefficient `(ε kz − kz_m)/(ε kz + kz_m)`; `+1`
/// for the perfect conductor.
pub fn fresnel_rp(mode: &ModeCoordinates, mat: &Material) -> Result<Complex64> {
    let Some(eps) = mat.epsilon() else {
        return Ok(Complex64::new(1.0, 0.0));
    };
    let den = eps * mode.kz_vac + mode.kz_med;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::FresnelSingular { k_par: mode.k_par });
    }
    Ok((eps * mode.kz_vac - mode.kz_med) / den)
}
