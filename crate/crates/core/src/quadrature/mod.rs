//! Adaptive quadrature for the parallel-wavenumber integrals and the
//! periodic azimuthal integrals of the mode expansion.
//!
//! Half-line integrals `∫₀^∞ f(k_par) dk_par` are split at the vacuum light
//! line `k_par = ω/c`:
//!
//! - propagating sector: `k_par = (ω/c) sin θ`, `θ ∈ [0, π/2]`, so the
//!   Jacobian `kz = (ω/c) cos θ` cancels an integrable `1/kz`;
//! - evanescent sector: `κ = √(k_par² − ω²/c²)`, where the integrand carries
//!   `exp(−2κz)` and the Jacobian `κ/k_par` again cancels `1/kz`. The sector
//!   is cut at `κ_max = Λ/(2z)` and a bound on the discarded tail is added
//!   to the error estimate.
//!
//! Both sectors share one pool of Gauss–Kronrod panels refined in order of
//! decreasing error until the total meets the tolerance. Evaluation is
//! serial, so identical inputs give bit-identical results.

mod azimuth;
mod kronrod;
mod spectral;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub use azimuth::{integrate_azimuth, try_integrate_azimuth};
pub use kronrod::{integrate_interval, try_integrate_interval};
pub use spectral::{integrate_spectrum, try_integrate_spectrum, SpectralPoint};

use crate::error::{Error, Result};
use crate::planar_em::ComplexTensor3;

/// Values the engine can integrate: a real vector space with a norm.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl QuadValue for ComplexTensor3 {
    fn zero() -> Self {
        ComplexTensor3::zero()
    }
    fn magnitude(&self) -> f64 {
        self.max_norm()
    }
}

/// Fixed-size bundle of complex integrands sharing one adaptive partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec<const N: usize>(pub [Complex64; N]);

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        self
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        self
    }
}

impl<const N: usize> Mul<f64> for CVec<N> {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        self.0.iter_mut().for_each(|a| *a *= rhs);
        self
    }
}

impl<const N: usize> QuadValue for CVec<N> {
    fn zero() -> Self {
        CVec([Complex64::new(0.0, 0.0); N])
    }
    fn magnitude(&self) -> f64 {
        self.0.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    /// Absolute error floor, in the units of the integral.
    pub abs_tol: f64,
    /// Maximum number of panels in the adaptive partition.
    pub max_subdivisions: usize,
    /// Hard cap on integrand evaluations.
    pub max_evaluations: usize,
    /// Evanescent cut-off `Λ`: the sector ends at `κ = Λ/(2z)`.
    pub tail_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_subdivisions: 20_000,
            max_evaluations: 10_000_000,
            tail_cutoff: 40.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_tail_cutoff(mut self, tail_cutoff: f64) -> Self {
        self.tail_cutoff = tail_cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidConfig(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if !(self.tail_cutoff >= 20.0 && self.tail_cutoff.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tail cutoff must be >= 20, got {}",
                self.tail_cutoff
            )));
        }
        if self.max_subdivisions == 0 || self.max_evaluations < 21 {
            return Err(Error::InvalidConfig("subdivision/evaluation limits too small".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<V> {
    pub value: V,
    pub abs_error_estimate: f64,
    pub n_evaluations: usize,
    /// `k_par` at which the evanescent tail was cut; `None` for finite
    /// intervals and azimuthal rules.
    pub truncation_k: Option<f64>,
}

impl<V: QuadValue> QuadratureResult<V> {
    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> QuadratureResult<W> {
        QuadratureResult {
            value: f(self.value),
            abs_error_estimate: self.abs_error_estimate,
            n_evaluations: self.n_evaluations,
            truncation_k: self.truncation_k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        assert!(QuadratureConfig::default().with_rel_tol(0.0).validate().is_err());
        assert!(QuadratureConfig::default().with_rel_tol(1e-2).validate().is_err());
        assert!(QuadratureConfig::default().with_tail_cutoff(10.0).validate().is_err());
        assert!(QuadratureConfig::default().with_tail_cutoff(20.0).validate().is_ok());
    }

    #[test]
    fn cvec_arithmetic() {
        let a = CVec([Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5)]);
        let b = (a + a) * 0.5 - a;
        assert_eq!(b, CVec::zero());
        assert_eq!(a.magnitude(), 9.25f64.sqrt());
    }
}
