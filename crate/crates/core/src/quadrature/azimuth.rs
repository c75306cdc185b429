use std::f64::consts::TAU;

use super::{QuadValue, QuadratureConfig, QuadratureResult};
use crate::error::{Error, Result};

const START: usize = 8;
const MAX_POINTS: usize = 1 << 16;

/// `∫₀^{2π} g(φ) dφ` for 2π-periodic `g` with the trapezoidal rule, doubling
/// the number of points until two successive rules agree. The `N`-point rule
/// is exact for trigonometric polynomials of degree below `N`.
pub fn integrate_azimuth<V, G>(g: G, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    G: Fn(f64) -> V,
{
    try_integrate_azimuth(|phi| Ok(g(phi)), cfg)
}

/// Fallible variant of [`integrate_azimuth`].
pub fn try_integrate_azimuth<V, G>(g: G, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    G: Fn(f64) -> Result<V>,
{
    cfg.validate()?;
    let mut n = START;
    let mut sum = V::zero();
    let mut sum_abs = 0.0;
    for i in 0..n {
        let v = g(TAU * i as f64 / n as f64)?;
        sum_abs += v.magnitude();
        sum = sum + v;
    }
    let mut estimate = sum * (TAU / n as f64);
    let mut evaluations = n;

    while n < MAX_POINTS {
        // the refined rule reuses all previous samples
        for i in 0..n {
            let v = g(TAU * (2 * i + 1) as f64 / (2 * n) as f64)?;
            sum_abs += v.magnitude();
            sum = sum + v;
        }
        evaluations += n;
        n *= 2;
        let refined = sum * (TAU / n as f64);
        let error = (refined - estimate).magnitude();
        let floor = 64.0 * f64::EPSILON * sum_abs * (TAU / n as f64);
        let tolerance = cfg.abs_tol.max(cfg.rel_tol * refined.magnitude()).max(floor);
        estimate = refined;
        if error <= tolerance {
            return Ok(QuadratureResult {
                value: estimate,
                abs_error_estimate: error,
                n_evaluations: evaluations,
                truncation_k: None,
            });
        }
    }
    Err(Error::NonConvergence {
        abs_error: f64::NAN,
        tolerance: cfg.rel_tol * estimate.magnitude(),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cosine_integrates_to_zero() {
        let r = integrate_azimuth(|p: f64| p.cos(), &QuadratureConfig::default()).unwrap();
        assert!(r.value.abs() < 1e-15);
        assert_eq!(r.n_evaluations, 16);
    }

    #[test]
    fn cosine_squared_is_pi() {
        let r = integrate_azimuth(|p: f64| p.cos().powi(2), &QuadratureConfig::default()).unwrap();
        assert!((r.value - PI).abs() < 1e-14);
    }

    #[test]
    fn smooth_periodic_function() {
        // ∫ e^{cos φ} dφ = 2π I₀(1)
        let i0_1 = 1.266_065_877_752_008_4;
        let r = integrate_azimuth(|p: f64| p.cos().exp(), &QuadratureConfig::default()).unwrap();
        assert!((r.value - TAU * i0_1).abs() < 1e-13);
    }

    #[test]
    fn rough_integrand_does_not_converge() {
        let cfg = QuadratureConfig::default();
        let r = integrate_azimuth(|p: f64| p.sin().abs().sqrt(), &cfg);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
