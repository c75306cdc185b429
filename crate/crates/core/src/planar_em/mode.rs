use num_complex::Complex64;

use crate::constants::C;
use crate::error::{Error, Result};

/// Relative half-width of the excluded neighbourhood of the vacuum branch
/// point `k_par = ω/c`.
pub const BRANCH_WINDOW: f64 = 1e-12;

/// Perpendicular wavenumber `√(ε ω²/c² − k_par²)` on the branch with
/// `Im ≥ 0` (and `Re ≥ 0` when the imaginary part vanishes), so that
/// `exp(i kz z)` never grows with distance.
pub fn kz(k_par: f64, omega: f64, epsilon: Complex64) -> Complex64 {
    let k0 = omega / C;
    branch_sqrt(epsilon * (k0 * k0) - k_par * k_par)
}

pub(crate) fn branch_sqrt(w: Complex64) -> Complex64 {
    let s = w.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// One plane-wave mode of the half-space problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoordinates {
    pub k_par: f64,
    pub phi: f64,
    pub omega: f64,
    pub kz_vac: Complex64,
    pub kz_med: Complex64,
}

impl ModeCoordinates {
    /// Builds the mode from `(k_par, phi)`, computing both perpendicular
    /// wavenumbers. `epsilon` is the medium permittivity (ignored by the
    /// Fresnel coefficients of a perfect conductor).
    pub fn new(k_par: f64, phi: f64, omega: f64, epsilon: Complex64) -> Result<Self> {
        Self::check(k_par, phi, omega)?;
        Ok(Self {
            k_par,
            phi,
            omega,
            kz_vac: kz(k_par, omega, Complex64::new(1.0, 0.0)),
            kz_med: kz(k_par, omega, epsilon),
        })
    }

    /// Same as [`ModeCoordinates::new`] but takes an externally computed
    /// vacuum `kz`, e.g. `k0 cos θ` from a quadrature substitution, which is
    /// more accurate than `√(k0² − k_par²)` close to the branch point.
    pub fn with_vacuum_kz(
        k_par: f64,
        kz_vac: Complex64,
        phi: f64,
        omega: f64,
        epsilon: Complex64,
    ) -> Result<Self> {
        Self::check(k_par, phi, omega)?;
        let kz_med = if epsilon == Complex64::new(1.0, 0.0) {
            kz_vac
        } else {
            kz(k_par, omega, epsilon)
        };
        Ok(Self {
            k_par,
            phi,
            omega,
            kz_vac,
            kz_med,
        })
    }

    fn check(k_par: f64, phi: f64, omega: f64) -> Result<()> {
        if !(k_par >= 0.0 && k_par.is_finite()) {
            return Err(Error::InvalidDomain(format!("k_par must be >= 0, got {k_par}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidDomain(format!("omega must be > 0, got {omega}")));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidDomain(format!("phi must be finite, got {phi}")));
        }
        Ok(())
    }

    pub fn k0(&self) -> f64 {
        self.omega / C
    }

    /// `true` when `k_par` lies within the relative [`BRANCH_WINDOW`] of `ω/c`.
    pub fn near_branch_point(&self) -> bool {
        in_branch_window(self.k_par, self.k0())
    }

    pub fn is_propagating(&self) -> bool {
        self.k_par < self.k0()
    }
}

pub(crate) fn in_branch_window(k_par: f64, k0: f64) -> bool {
    (k_par - k0).abs() <= BRANCH_WINDOW * k0
}
