//! Lateral force in its full, closed and asymptotic forms, plus the curl of
//! the perfect-conductor force and the recoil velocity.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::green_integrals::azimuthal_green_dx;
use super::rates::total_rate;
use super::{EmitterConfig, ForceSample, Regime, SolverOptions};
use crate::constants::{EPSILON_0, MU_0};
use crate::error::{Error, Result};
use crate::planar_em::{fresnel_rp, Material};
use crate::quadrature::{try_integrate_spectrum, CVec, QuadratureConfig, QuadratureResult};

/// One dipole transition `n → k` of a multilevel emitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// `d_{nk}` [C m].
    pub dipole: [Complex64; 3],
    /// `ω_{nk}` [rad/s].
    pub omega: f64,
    /// Population of the upper level.
    pub population: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocitySample {
    /// [m/s]
    pub velocity: f64,
    /// `F_x` at `t = 0` [N].
    pub force: f64,
    /// Rate used in the denominator [1/s].
    pub gamma: f64,
    /// [m/s]
    pub error_estimate: f64,
}

fn force_prefactor(cfg: &EmitterConfig) -> f64 {
    cfg.dipole_magnitude * cfg.dipole_magnitude / EPSILON_0
}

fn time_factor(cfg: &EmitterConfig, mat: &Material, t: f64, opts: &SolverOptions) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidDomain(format!("time must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok((-total_rate(cfg, mat, opts)? * t).exp())
}

/// `Im ∫₀^∞ dk k³ e^{2ik⊥z} r_p(k)` [1/m⁴]. Only the imaginary part is
/// integrated, so the tolerance applies to it even when the real part is
/// much larger (lossless media close to the surface).
pub fn force_integral(cfg: &EmitterConfig, mat: &Material, quad: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    cfg.validate()?;
    let eps = mat.medium_epsilon();
    let z = cfg.z;
    try_integrate_spectrum(
        |p| {
            let rp = fresnel_rp(&p.mode(0.0, eps)?, mat)?;
            let k3 = p.k_par * p.k_par * p.k_par;
            Ok((rp * (Complex64::new(0.0, 2.0) * p.kz_vac * z).exp()).im * k3)
        },
        cfg.omega(),
        z,
        quad,
    )
}

/// `F_x(t) = −e^{−Γt} (d²/2πε₀) Im ∫ dk k³ e^{2ik⊥z} r_p`, scaled by the
/// dipole circularity.
pub fn lateral_force(cfg: &EmitterConfig, mat: &Material, t: f64, opts: &SolverOptions) -> Result<ForceSample> {
    let integral = force_integral(cfg, mat, &opts.quadrature)?;
    let scale = force_prefactor(cfg) / (2.0 * PI) * cfg.circularity();
    let f0 = -scale * integral.value;
    let factor = time_factor(cfg, mat, t, opts)?;
    Ok(ForceSample {
        value: f0 * factor,
        regime: Regime::Full,
        t,
        error_estimate: scale.abs() * integral.abs_error_estimate * factor,
    })
}

/// `F_x = 2μ₀ Σ p ω² Re{d · ∂ₓG⁽¹⁾ · d*}` over incoherently populated
/// transitions, at `t = 0` of each population.
pub fn lateral_force_general(
    transitions: &[Transition],
    mat: &Material,
    z: f64,
    quad: &QuadratureConfig,
) -> Result<ForceSample> {
    let mut value = 0.0;
    let mut error = 0.0;
    for tr in transitions {
        if !(tr.omega > 0.0 && tr.omega.is_finite()) {
            return Err(Error::InvalidEmitter(format!("transition frequency must be > 0, got {}", tr.omega)));
        }
        if !(0.0..=1.0).contains(&tr.population) {
            return Err(Error::InvalidEmitter(format!("population must lie in [0, 1], got {}", tr.population)));
        }
        if tr.population == 0.0 {
            continue;
        }
        let d = tr.dipole;
        let d_conj = d.map(|c| c.conj());
        // For antisymmetric T, Re(d·T·d*) = −2 Σ_{i<j} Im T_ij Im(d_i d_j*).
        // The second component replaces Im(d_i d_j*) by |d_i||d_j| and sets
        // the tolerance scale, which stays finite when the force itself
        // vanishes (real dipoles).
        let r = try_integrate_spectrum(
            |p| {
                let t = azimuthal_green_dx(z, p, mat, quad)?;
                let mut scale = 0.0;
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    scale += 2.0 * t[(i, j)].im * d[i].norm() * d[j].norm();
                }
                let force = t.contract(&d, &d_conj).re;
                Ok(CVec([Complex64::new(force, 0.0), Complex64::new(scale, 0.0)]) * p.k_par)
            },
            tr.omega,
            z,
            quad,
        )?;
        let weight = 2.0 * MU_0 * tr.population * tr.omega * tr.omega;
        value += weight * r.value.0[0].re;
        error += weight * r.abs_error_estimate;
    }
    Ok(ForceSample {
        value,
        regime: Regime::General,
        t: 0.0,
        error_estimate: error,
    })
}

/// Perfect-conductor closed form,
/// `F_x = (d²/ε₀)[3cos θ/(4λz³) + sin θ (π/(λ²z²) − 3/(16πz⁴))]`, `θ = 4πz/λ`.
pub fn lateral_force_pc(cfg: &EmitterConfig, t: f64, opts: &SolverOptions) -> Result<ForceSample> {
    cfg.validate()?;
    let (l, z) = (cfg.wavelength, cfg.z);
    let theta = 4.0 * PI * z / l;
    let bracket = 3.0 * theta.cos() / (4.0 * l * z.powi(3))
        + theta.sin() * (PI / (l * l * z * z) - 3.0 / (16.0 * PI * z.powi(4)));
    let f0 = force_prefactor(cfg) * cfg.circularity() * bracket;
    let factor = time_factor(cfg, &Material::perfect_conductor(), t, opts)?;
    Ok(ForceSample {
        value: f0 * factor,
        regime: Regime::Pc,
        t,
        error_estimate: 0.0,
    })
}

/// Non-retarded asymptote `−(3d²/(8πε₀z⁴)) Im ε/|ε+1|²`.
pub fn lateral_force_near(cfg: &EmitterConfig, mat: &Material, t: f64, opts: &SolverOptions) -> Result<ForceSample> {
    cfg.validate()?;
    let eps = mat.epsilon().ok_or_else(|| Error::UnsupportedMaterial {
        quantity: "near-field force",
        material: mat.name().to_string(),
        reason: "the non-retarded law needs a finite permittivity",
    })?;
    let f0 = -cfg.circularity() * 3.0 * force_prefactor(cfg) / (8.0 * PI * cfg.z.powi(4)) * eps.im
        / (eps + 1.0).norm_sqr();
    let factor = time_factor(cfg, mat, t, opts)?;
    Ok(ForceSample {
        value: f0 * factor,
        regime: Regime::Near,
        t,
        error_estimate: 0.0,
    })
}

/// `(√ε − 1)/(√ε + 1)`; 1 for the perfect conductor.
pub fn retarded_reflection(mat: &Material) -> Complex64 {
    match mat.epsilon() {
        None => Complex64::new(1.0, 0.0),
        Some(eps) => {
            let n = eps.sqrt();
            (n - 1.0) / (n + 1.0)
        }
    }
}

/// Amplitude `πd²|r₀|/(ε₀λ²z²)` of the retarded oscillation.
pub fn retarded_envelope(cfg: &EmitterConfig, mat: &Material) -> f64 {
    PI * force_prefactor(cfg) * cfg.circularity().abs() * retarded_reflection(mat).norm()
        / (cfg.wavelength * cfg.wavelength * cfg.z * cfg.z)
}

/// Retarded asymptote `(πd²/(ε₀λ²z²))(Re r₀ sin θ + Im r₀ cos θ)`.
pub fn lateral_force_retarded(cfg: &EmitterConfig, mat: &Material, t: f64, opts: &SolverOptions) -> Result<ForceSample> {
    cfg.validate()?;
    let r0 = retarded_reflection(mat);
    let theta = 4.0 * PI * cfg.z / cfg.wavelength;
    let f0 = cfg.circularity() * PI * force_prefactor(cfg) / (cfg.wavelength * cfg.wavelength * cfg.z * cfg.z)
        * (r0.re * theta.sin() + r0.im * theta.cos());
    let factor = time_factor(cfg, mat, t, opts)?;
    Ok(ForceSample {
        value: f0 * factor,
        regime: Regime::Retarded,
        t,
        error_estimate: 0.0,
    })
}

/// `(∇ × F)_y = ∂F_x/∂z` for the perfect conductor at `t = 0` [N/m].
pub fn force_curl_pc(cfg: &EmitterConfig) -> Result<f64> {
    cfg.validate()?;
    let (l, z) = (cfg.wavelength, cfg.z);
    let theta = 4.0 * PI * z / l;
    let bracket = theta.cos() * (4.0 * PI * PI / (l.powi(3) * z * z) - 3.0 / (l * z.powi(4)))
        + theta.sin() * (3.0 / (4.0 * PI * z.powi(5)) - 5.0 * PI / (l * l * z.powi(3)));
    Ok(force_prefactor(cfg) * cfg.circularity() * bracket)
}

/// `v = F_x(0)/(mΓ)`.
pub fn recoil_velocity(cfg: &EmitterConfig, mat: &Material, opts: &SolverOptions) -> Result<VelocitySample> {
    let force = lateral_force(cfg, mat, 0.0, opts)?;
    let gamma = total_rate(cfg, mat, opts)?;
    let denom = cfg.mass * gamma;
    Ok(VelocitySample {
        velocity: force.value / denom,
        force: force.value,
        gamma,
        error_estimate: force.error_estimate / denom,
    })
}
