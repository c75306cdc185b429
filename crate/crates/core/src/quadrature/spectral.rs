use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::kronrod::refine;
use super::{QuadValue, QuadratureConfig, QuadratureResult};
use crate::constants::C;
use crate::error::{Error, Result};
use crate::planar_em::mode::in_branch_window;
use crate::planar_em::ModeCoordinates;

const PROPAGATING: usize = 0;
const EVANESCENT: usize = 1;

/// A sample point handed to spectral integrands: `k_par` together with the
/// vacuum `kz` obtained directly from the substitution variable, which stays
/// accurate next to the light line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub k_par: f64,
    pub kz_vac: Complex64,
    pub omega: f64,
}

impl SpectralPoint {
    pub fn mode(&self, phi: f64, epsilon: Complex64) -> Result<ModeCoordinates> {
        ModeCoordinates::with_vacuum_kz(self.k_par, self.kz_vac, phi, self.omega, epsilon)
    }
}

struct SectorMap {
    k0: f64,
    omega: f64,
}

impl SectorMap {
    /// Point and Jacobian `dk_par/dt` for substitution variable `t`.
    fn point(&self, sector: usize, t: f64) -> (SpectralPoint, f64) {
        if sector == PROPAGATING {
            let (s, c) = t.sin_cos();
            let kz = self.k0 * c;
            let p = SpectralPoint {
                k_par: self.k0 * s,
                kz_vac: Complex64::new(kz, 0.0),
                omega: self.omega,
            };
            (p, kz)
        } else {
            let k_par = t.hypot(self.k0);
            let p = SpectralPoint {
                k_par,
                kz_vac: Complex64::new(0.0, t),
                omega: self.omega,
            };
            (p, t / k_par)
        }
    }
}

/// `∫₀^∞ f(k_par) dk_par` for an integrand carrying `exp(2i kz z)`; see the
/// module docs for the substitutions. `f` may contain an integrable `1/kz`.
pub fn integrate_spectrum<V, F>(f: F, omega: f64, z: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(&SpectralPoint) -> V,
{
    try_integrate_spectrum(|p| Ok(f(p)), omega, z, cfg)
}

/// Fallible variant of [`integrate_spectrum`]; the first integrand error
/// aborts the integration.
pub fn try_integrate_spectrum<V, F>(f: F, omega: f64, z: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(&SpectralPoint) -> Result<V>,
{
    cfg.validate()?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidDomain(format!("distance must be > 0, got {z}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidDomain(format!("omega must be > 0, got {omega}")));
    }
    let k0 = omega / C;
    let map = SectorMap { k0, omega };
    let kappa_max = cfg.tail_cutoff / (2.0 * z);

    // one panel per reflected-path oscillation in the propagating sector
    let wavelengths = 2.0 * k0 * z / std::f64::consts::TAU;
    let n_prop = (2.0 + wavelengths.ceil()).min(4096.0) as usize;
    let mut initial = Vec::with_capacity(n_prop + 4);
    for i in 0..n_prop {
        let a = FRAC_PI_2 * i as f64 / n_prop as f64;
        let b = FRAC_PI_2 * (i + 1) as f64 / n_prop as f64;
        initial.push((PROPAGATING, a, b));
    }
    initial.extend(evanescent_panels(k0, kappa_max).into_iter().map(|(a, b)| (EVANESCENT, a, b)));

    let eval = |sector: usize, t: f64| -> Result<V> {
        let (p, jac) = map.point(sector, t);
        Ok(f(&p)? * jac)
    };
    let forbidden = |sector: usize, t: f64| in_branch_window(map.point(sector, t).0.k_par, k0);
    let out = refine(&initial, &eval, forbidden, cfg)?;

    // The discarded tail ∫_{κmax}^∞ g is bounded by |g(κmax)|/(2z) times
    // 1/(1 − p/Λ) for polynomial growth κ^p, p ≤ 5, of the prefactor.
    let tail_sample = eval(EVANESCENT, kappa_max)?;
    let tail = tail_sample.magnitude() / (2.0 * z) / (1.0 - 5.0 / cfg.tail_cutoff);

    Ok(QuadratureResult {
        value: out.value,
        abs_error_estimate: out.error + tail,
        n_evaluations: out.evaluations + 1,
        truncation_k: Some(kappa_max.hypot(k0)),
    })
}

/// Initial κ panels: geometric breakpoints `k0/8 · 2^j` below `κ_max`, so that
/// structure on the scale of `k0` (e.g. a medium light line) is resolved even
/// when `κ_max ≫ k0`; four uniform panels when `κ_max` is small.
fn evanescent_panels(k0: f64, kappa_max: f64) -> Vec<(f64, f64)> {
    let mut edges = vec![0.0];
    let mut b = k0 / 8.0;
    while b < kappa_max {
        edges.push(b);
        b *= 2.0;
    }
    edges.push(kappa_max);
    if edges.len() < 5 {
        edges = (0..=4).map(|i| kappa_max * i as f64 / 4.0).collect();
    }
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}
