//! Physical observables of a two-level rotating dipole above the surface.

mod force;
mod green_integrals;
mod rates;

use num_complex::Complex64;

pub use force::{
    force_curl_pc, force_integral, lateral_force, lateral_force_general, lateral_force_near,
    lateral_force_pc, lateral_force_retarded, recoil_velocity, retarded_envelope, retarded_reflection,
    Transition, VelocitySample,
};
pub use green_integrals::{azimuthal_green, azimuthal_green_dx, scattering_green, scattering_green_dx};
pub use rates::{free_space_rate, populations, surface_rate, total_rate, RateSample};

use crate::constants::{C, CS_D2_WAVELENGTH, CS_DIPOLE_MOMENT, CS_MASS};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Handedness of the emitted photon. `Minus` conjugates the dipole vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    SigmaPlus,
    SigmaMinus,
}

/// Which decay rate enters `exp(−Γt)` and `v = F/(mΓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GammaMode {
    /// `Γ₀ + Γ⁽¹⁾(z)`, including the surface-assisted rate.
    #[default]
    Total,
    /// `Γ₀` only.
    FreeSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverOptions {
    pub quadrature: QuadratureConfig,
    pub gamma_mode: GammaMode,
}

/// Emitter parameters. The transition frequency is always derived from the
/// wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmitterConfig {
    /// Transition wavelength [m].
    pub wavelength: f64,
    /// `d` [C m].
    pub dipole_magnitude: f64,
    /// Dipole direction in units of `d`, for σ⁺ emission.
    pub dipole_vector: [Complex64; 3],
    /// [kg]
    pub mass: f64,
    /// Distance from the surface [m].
    pub z: f64,
    pub handedness: Handedness,
}

impl EmitterConfig {
    /// Cs on the D2 cycling transition, `d₁₀ = d (i, 0, 1)`, at distance `z`.
    pub fn cesium(z: f64) -> Self {
        Self {
            wavelength: CS_D2_WAVELENGTH,
            dipole_magnitude: CS_DIPOLE_MOMENT,
            dipole_vector: [I, ZERO, ONE],
            mass: CS_MASS,
            z,
            handedness: Handedness::SigmaPlus,
        }
    }

    pub fn at_distance(mut self, z: f64) -> Self {
        self.z = z;
        self
    }

    pub fn with_handedness(mut self, handedness: Handedness) -> Self {
        self.handedness = handedness;
        self
    }

    pub fn omega(&self) -> f64 {
        std::f64::consts::TAU * C / self.wavelength
    }

    pub fn k0(&self) -> f64 {
        self.omega() / C
    }

    /// Unit dipole after applying the handedness.
    pub fn unit_dipole(&self) -> [Complex64; 3] {
        match self.handedness {
            Handedness::SigmaPlus => self.dipole_vector,
            Handedness::SigmaMinus => self.dipole_vector.map(|c| c.conj()),
        }
    }

    /// Transition dipole `d₁₀` in C m.
    pub fn dipole(&self) -> [Complex64; 3] {
        self.unit_dipole().map(|c| c * self.dipole_magnitude)
    }

    /// `|u|²` of the unit dipole (2 for `(i, 0, 1)`).
    pub fn dipole_norm_sq(&self) -> f64 {
        self.dipole_vector.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Im(u_x ū_z)`: the only dipole combination the lateral force sees.
    /// 1 for σ⁺ `(i, 0, 1)`, −1 for σ⁻, 0 for any real dipole.
    pub fn circularity(&self) -> f64 {
        let u = self.unit_dipole();
        (u[0] * u[2].conj()).im
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.z) {
            return Err(Error::InvalidEmitter(format!("distance must be > 0, got {}", self.z)));
        }
        if !positive(self.wavelength) {
            return Err(Error::InvalidEmitter(format!("wavelength must be > 0, got {}", self.wavelength)));
        }
        if !positive(self.dipole_magnitude) && self.dipole_magnitude != 0.0 {
            return Err(Error::InvalidEmitter(format!(
                "dipole magnitude must be >= 0, got {}",
                self.dipole_magnitude
            )));
        }
        if !positive(self.mass) {
            return Err(Error::InvalidEmitter(format!("mass must be > 0, got {}", self.mass)));
        }
        if self.dipole_vector.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidEmitter("dipole vector must be finite".into()));
        }
        Ok(())
    }
}

impl Default for EmitterConfig {
    fn default() -> Self {
        Self::cesium(190e-9)
    }
}

/// How a force value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Numerically integrated reflected-field force.
    Full,
    /// Perfect-conductor closed form.
    Pc,
    /// Non-retarded asymptote.
    Near,
    /// Retarded asymptote.
    Retarded,
    /// Population-weighted multi-transition tensor contraction.
    General,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Full => "full",
            Regime::Pc => "pc",
            Regime::Near => "near",
            Regime::Retarded => "retarded",
            Regime::General => "general",
        }
    }
}

/// x-component of the lateral force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceSample {
    /// [N]
    pub value: f64,
    pub regime: Regime,
    /// [s]
    pub t: f64,
    /// [N]; zero for closed forms.
    pub error_estimate: f64,
}

/// Two-level populations after an excitation at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Populations {
    pub p0: f64,
    pub p1: f64,
    pub t: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circularity_of_standard_dipoles() {
        let cfg = EmitterConfig::cesium(1e-7);
        assert_eq!(cfg.circularity(), 1.0);
        assert_eq!(cfg.with_handedness(Handedness::SigmaMinus).circularity(), -1.0);
        let real = EmitterConfig {
            dipole_vector: [ONE, ZERO, ONE],
            ..cfg
        };
        assert_eq!(real.circularity(), 0.0);
        assert_eq!(cfg.dipole_norm_sq(), 2.0);
    }

    #[test]
    fn sigma_minus_conjugates() {
        let cfg = EmitterConfig::cesium(1e-7).with_handedness(Handedness::SigmaMinus);
        assert_eq!(cfg.unit_dipole(), [-I, ZERO, ONE]);
    }

    #[test]
    fn frequency_is_derived() {
        let cfg = EmitterConfig::cesium(1e-7);
        assert!((cfg.omega() - 2.2109e15).abs() < 1e11);
        assert_eq!(cfg.k0(), cfg.omega() / C);
    }

    #[test]
    fn validation() {
        assert!(EmitterConfig::cesium(1e-7).validate().is_ok());
        assert!(EmitterConfig::cesium(0.0).validate().is_err());
        assert!(EmitterConfig::cesium(-1e-9).validate().is_err());
        let bad_mass = EmitterConfig {
            mass: 0.0,
            ..EmitterConfig::cesium(1e-7)
        };
        assert!(bad_mass.validate().is_err());
    }
}
