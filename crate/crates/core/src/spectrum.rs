//! Directional emission: the per-mode emission rate density, the
//! momentum-weighted angular spectrum `Γ̄(φ) = A + B cos φ + C cos²φ + D sin²φ`
//! and its x-asymmetry.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;

use crate::constants::{C, EPSILON_0, HBAR, MU_0};
use crate::error::{Error, Result};
use crate::observables::{force_integral, EmitterConfig};
use crate::planar_em::{fresnel_rp, fresnel_rs, green_mode, Material, ModeCoordinates};
use crate::quadrature::{try_integrate_interval, try_integrate_spectrum, CVec, QuadratureConfig, QuadratureResult};

/// `γ(z, k_par, φ) = (2μ₀ω²/ħ) Im{d · G⁽¹⁾(k_par, φ) · d*}`, a rate per unit
/// `d²k_par` [m²/s].
pub fn emission_rate_density(cfg: &EmitterConfig, mat: &Material, k_par: f64, phi: f64) -> Result<f64> {
    cfg.validate()?;
    let w = cfg.omega();
    let mode = ModeCoordinates::new(k_par, phi, w, mat.medium_epsilon())?;
    density_at(cfg, mat, &mode)
}

fn density_at(cfg: &EmitterConfig, mat: &Material, mode: &ModeCoordinates) -> Result<f64> {
    let g = green_mode(cfg.z, mode, mat)?;
    let d = cfg.dipole();
    let w = mode.omega;
    Ok(2.0 * MU_0 * w * w / HBAR * g.contract(&d, &d.map(|c| c.conj())).im)
}

/// `Γ̄(φ) = ∫ dk_par k_par ħk_par γ(z, k_par, φ)` by direct quadrature [N].
pub fn direct_angular_spectrum(
    cfg: &EmitterConfig,
    mat: &Material,
    phi: f64,
    quad: &QuadratureConfig,
) -> Result<QuadratureResult<f64>> {
    cfg.validate()?;
    let eps = mat.medium_epsilon();
    try_integrate_spectrum(
        |p| Ok(p.k_par * p.k_par * HBAR * density_at(cfg, mat, &p.mode(phi, eps)?)?),
        cfg.omega(),
        cfg.z,
        quad,
    )
}

/// The four angular coefficients at one distance [N].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// [m]
    pub z: f64,
    /// Absolute error estimates of `a`, `b`, `c`, `d`.
    pub errors: [f64; 4],
}

impl SpectrumCoefficients {
    pub fn evaluate(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        self.a + self.b * c + self.c * c * c + self.d * s * s
    }

    /// Half-plane emission difference `4B`.
    pub fn asymmetry(&self) -> f64 {
        4.0 * self.b
    }
}

/// Coefficients of `Γ̄(φ)` for a dipole in the x–z plane:
///
/// - `A =  (d²|u_z|²/4π²ε₀) Re ∫ dk k⁴/k⊥ e^{2ik⊥z} r_p`
/// - `B =  (d²/2π²ε₀) Im(u_x u_z*) Im ∫ dk k³ e^{2ik⊥z} r_p`
/// - `C = −(d²|u_x|²/4π²ε₀) Re ∫ dk k² k⊥ e^{2ik⊥z} r_p`
/// - `D =  (d²|u_x|²ω²/4π²ε₀c²) Re ∫ dk k²/k⊥ e^{2ik⊥z} r_s`
pub fn spectrum_coefficients(
    cfg: &EmitterConfig,
    mat: &Material,
    quad: &QuadratureConfig,
) -> Result<SpectrumCoefficients> {
    cfg.validate()?;
    let u = cfg.unit_dipole();
    if u[1] != Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidEmitter(
            "the angular decomposition needs a dipole in the x-z plane (u_y = 0)".into(),
        ));
    }
    let eps = mat.medium_epsilon();
    let z = cfg.z;
    let w = cfg.omega();
    let even = try_integrate_spectrum(
        |p| {
            let mode = p.mode(0.0, eps)?;
            let (rp, rs) = (fresnel_rp(&mode, mat)?, fresnel_rs(&mode, mat)?);
            let k2 = p.k_par * p.k_par;
            let kz = p.kz_vac;
            let e = (Complex64::new(0.0, 2.0) * kz * z).exp();
            let re = |c: Complex64| Complex64::new(c.re, 0.0);
            Ok(CVec([re(e * rp * (k2 * k2) / kz), re(e * rp * kz * k2), re(e * rs * k2 / kz)]))
        },
        w,
        z,
        quad,
    )?;
    let odd = force_integral(cfg, mat, quad)?;

    let base = cfg.dipole_magnitude * cfg.dipole_magnitude / (4.0 * PI * PI * EPSILON_0);
    let (ux2, uz2) = (u[0].norm_sqr(), u[2].norm_sqr());
    let k0sq = (w / C) * (w / C);
    let wa = base * uz2;
    let wb = 2.0 * base * cfg.circularity();
    let wc = -base * ux2;
    let wd = base * ux2 * k0sq;
    let err = even.abs_error_estimate;
    Ok(SpectrumCoefficients {
        a: wa * even.value.0[0].re,
        b: wb * odd.value,
        c: wc * even.value.0[1].re,
        d: wd * even.value.0[2].re,
        z,
        errors: [wa.abs() * err, wb.abs() * odd.abs_error_estimate, wc.abs() * err, wd.abs() * err],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    material: String,
    bits: Vec<u64>,
}

impl CacheKey {
    fn new(cfg: &EmitterConfig, mat: &Material, quad: &QuadratureConfig) -> Self {
        let eps = mat.medium_epsilon();
        let mut bits = vec![
            u64::from(mat.is_perfect_conductor()),
            eps.re.to_bits(),
            eps.im.to_bits(),
            cfg.z.to_bits(),
            cfg.wavelength.to_bits(),
            cfg.dipole_magnitude.to_bits(),
            quad.rel_tol.to_bits(),
            quad.abs_tol.to_bits(),
            quad.tail_cutoff.to_bits(),
            quad.max_subdivisions as u64,
            quad.max_evaluations as u64,
        ];
        for c in cfg.unit_dipole() {
            bits.extend([c.re.to_bits(), c.im.to_bits()]);
        }
        Self {
            material: mat.name().to_string(),
            bits,
        }
    }
}

/// Coefficient cache keyed on material, emitter, distance and tolerances.
/// Readers share the lock; a miss computes outside the lock and inserts.
#[derive(Debug, Default)]
pub struct SpectrumCache {
    entries: RwLock<HashMap<CacheKey, SpectrumCoefficients>>,
}

impl SpectrumCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by [`angular_spectrum`] and [`asymmetry`].
    pub fn global() -> &'static SpectrumCache {
        static CACHE: OnceLock<SpectrumCache> = OnceLock::new();
        CACHE.get_or_init(SpectrumCache::new)
    }

    pub fn get_or_compute(
        &self,
        cfg: &EmitterConfig,
        mat: &Material,
        quad: &QuadratureConfig,
    ) -> Result<SpectrumCoefficients> {
        let key = CacheKey::new(cfg, mat, quad);
        if let Some(c) = self.entries.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(*c);
        }
        let coeffs = spectrum_coefficients(cfg, mat, quad)?;
        let mut map = self.entries.write().unwrap_or_else(|e| e.into_inner());
        Ok(*map.entry(key).or_insert(coeffs))
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Γ̄(φ)` from cached coefficients.
pub fn angular_spectrum(cfg: &EmitterConfig, mat: &Material, phi: f64, quad: &QuadratureConfig) -> Result<f64> {
    Ok(SpectrumCache::global().get_or_compute(cfg, mat, quad)?.evaluate(phi))
}

/// `4B(z)`; positive means stronger emission towards +x.
pub fn asymmetry(cfg: &EmitterConfig, mat: &Material, quad: &QuadratureConfig) -> Result<f64> {
    Ok(SpectrumCache::global().get_or_compute(cfg, mat, quad)?.asymmetry())
}

/// `∫_{−π/2}^{π/2} Γ̄ dφ − ∫_{π/2}^{3π/2} Γ̄ dφ` with `Γ̄` integrated directly
/// from the emission rate density, independent of the decomposition.
pub fn half_plane_difference(
    cfg: &EmitterConfig,
    mat: &Material,
    quad: &QuadratureConfig,
) -> Result<QuadratureResult<f64>> {
    let inner = std::cell::Cell::new(0.0f64);
    let outer = try_integrate_interval(
        |phi| {
            let fwd = direct_angular_spectrum(cfg, mat, phi, quad)?;
            let back = direct_angular_spectrum(cfg, mat, phi + PI, quad)?;
            inner.set(inner.get().max(fwd.abs_error_estimate + back.abs_error_estimate));
            Ok(fwd.value - back.value)
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        quad,
    )?;
    Ok(QuadratureResult {
        abs_error_estimate: outer.abs_error_estimate + PI * inner.get(),
        ..outer
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{lateral_force, Handedness, SolverOptions};

    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    fn quad() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn vacuum_everything_vanishes() {
        let cfg = EmitterConfig::cesium(264e-9);
        let v = Material::vacuum();
        let s = spectrum_coefficients(&cfg, &v, &quad()).unwrap();
        assert_eq!((s.a, s.b, s.c, s.d), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(emission_rate_density(&cfg, &v, 3e6, 0.4).unwrap(), 0.0);
        assert_eq!(asymmetry(&cfg, &v, &quad()).unwrap(), 0.0);
    }

    #[test]
    fn real_dipole_density_parity() {
        let cfg = EmitterConfig {
            dipole_vector: [ZERO, ZERO, ONE],
            ..EmitterConfig::cesium(264e-9)
        };
        let gold = Material::gold();
        let k0 = cfg.k0();
        for k in [0.3 * k0, 1.7 * k0] {
            for phi in [0.2, 1.1, 2.5] {
                let g = emission_rate_density(&cfg, &gold, k, phi).unwrap();
                let g_neg = emission_rate_density(&cfg, &gold, k, std::f64::consts::TAU - phi).unwrap();
                let g_mirror = emission_rate_density(&cfg, &gold, k, PI - phi).unwrap();
                assert!((g - g_neg).abs() <= 1e-13 * g.abs());
                assert!((g - g_mirror).abs() <= 1e-13 * g.abs());
            }
        }
    }

    #[test]
    fn circular_dipole_density_is_asymmetric() {
        let cfg = EmitterConfig::cesium(264e-9);
        let k = 0.6 * cfg.k0();
        let fwd = emission_rate_density(&cfg, &Material::silica(), k, 0.0).unwrap();
        let back = emission_rate_density(&cfg, &Material::silica(), k, PI).unwrap();
        assert!((fwd - back).abs() > 1e-6 * fwd.abs().max(back.abs()));
    }

    #[test]
    fn decomposition_matches_direct_spectrum() {
        let cfg = EmitterConfig::cesium(264e-9);
        for mat in [Material::gold(), Material::silica()] {
            let s = spectrum_coefficients(&cfg, &mat, &quad()).unwrap();
            for phi in [0.0, 0.7, 2.0, PI, 4.4] {
                let direct = direct_angular_spectrum(&cfg, &mat, phi, &quad()).unwrap();
                let scale = s.a.abs() + s.b.abs() + s.c.abs() + s.d.abs();
                assert!((direct.value - s.evaluate(phi)).abs() <= 1e-8 * scale, "{mat} φ={phi}");
            }
        }
    }

    #[test]
    fn force_is_minus_pi_b() {
        let cfg = EmitterConfig::cesium(264e-9);
        let mat = Material::silica();
        let s = spectrum_coefficients(&cfg, &mat, &quad()).unwrap();
        let f = lateral_force(&cfg, &mat, 0.0, &SolverOptions::default()).unwrap();
        assert!((f.value + PI * s.b).abs() <= 1e-10 * f.value.abs());
        assert!(s.b > 0.0);
    }

    #[test]
    fn closed_form_algebra() {
        let s = SpectrumCoefficients {
            a: 1.0,
            b: 0.3,
            c: -0.2,
            d: 0.5,
            z: 1e-7,
            errors: [0.0; 4],
        };
        for phi in [0.3, 1.2, 2.9] {
            assert!((s.evaluate(phi) - s.evaluate(-phi)).abs() < 1e-15);
        }
        assert!((s.evaluate(0.0) - s.evaluate(PI) - 2.0 * s.b).abs() < 1e-15);
        assert_eq!(s.asymmetry(), 4.0 * s.b);
    }

    #[test]
    fn handedness_flips_asymmetry() {
        let cfg = EmitterConfig::cesium(264e-9);
        let gold = Material::gold();
        let plus = asymmetry(&cfg, &gold, &quad()).unwrap();
        let minus = asymmetry(&cfg.with_handedness(Handedness::SigmaMinus), &gold, &quad()).unwrap();
        assert!(plus != 0.0);
        assert_eq!(plus, -minus);
    }

    #[test]
    fn y_dipole_is_rejected() {
        let cfg = EmitterConfig {
            dipole_vector: [ZERO, ONE, ZERO],
            ..EmitterConfig::cesium(264e-9)
        };
        assert!(matches!(
            spectrum_coefficients(&cfg, &Material::gold(), &quad()),
            Err(Error::InvalidEmitter(_))
        ));
    }

    #[test]
    fn cache_reuses_entries() {
        let cache = SpectrumCache::new();
        let cfg = EmitterConfig::cesium(300e-9);
        let a = cache.get_or_compute(&cfg, &Material::gold(), &quad()).unwrap();
        let b = cache.get_or_compute(&cfg, &Material::gold(), &quad()).unwrap();
        assert_eq!(a, b);
        assert_eq!(cache.len(), 1);
        cache.get_or_compute(&cfg.at_distance(310e-9), &Material::gold(), &quad()).unwrap();
        assert_eq!(cache.len(), 2);
    }
}
