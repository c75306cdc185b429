//! Directional-spectrum properties checked against direct quadrature of the
//! emission rate density.

use std::f64::consts::PI;

use lateral_cp::observables::{lateral_force, surface_rate};
use lateral_cp::quadrature::{try_integrate_azimuth, try_integrate_spectrum};
use lateral_cp::spectrum::{direct_angular_spectrum, emission_rate_density, spectrum_coefficients};
use lateral_cp::{Complex64, EmitterConfig, Material, QuadratureConfig, SolverOptions};
use proptest::prelude::*;

const LAMBDA: f64 = 852e-9;

fn medium() -> impl Strategy<Value = Material> {
    prop_oneof![
        (1.05f64..6.0, 1e-7f64..2.0),
        (-30.0f64..-1.2, 0.05f64..5.0),
    ]
    .prop_map(|(re, im)| Material::dielectric("random", Complex64::new(re, im)).unwrap())
}

fn distance() -> impl Strategy<Value = f64> {
    (-2.0f64..0.7).prop_map(|e| LAMBDA * 10f64.powf(e))
}

#[test]
fn spectrum_has_no_sine_component() {
    let q = QuadratureConfig::default();
    for mat in [Material::gold(), Material::silica(), Material::perfect_conductor()] {
        for z in [40e-9, 264e-9, 302e-9, 900e-9] {
            let cfg = EmitterConfig::cesium(z);
            let sine = try_integrate_azimuth(
                |phi| Ok(Complex64::new(direct_angular_spectrum(&cfg, &mat, phi, &q)?.value * phi.sin(), 0.0)),
                &q,
            )
            .unwrap();
            let cosine = try_integrate_azimuth(
                |phi| Ok(Complex64::new(direct_angular_spectrum(&cfg, &mat, phi, &q)?.value * phi.cos(), 0.0)),
                &q,
            )
            .unwrap();
            let scale = try_integrate_azimuth(
                |phi| Ok(Complex64::new(direct_angular_spectrum(&cfg, &mat, phi, &q)?.value.abs(), 0.0)),
                &q.with_rel_tol(1e-6),
            )
            .unwrap()
            .value
            .re;
            assert!(
                sine.value.norm() <= 1e-8 * scale,
                "{} z = {z:e}: sin component {:e} vs scale {scale:e}",
                mat.name(),
                sine.value.norm()
            );
            // The cos φ component is πB.
            let c = spectrum_coefficients(&cfg, &mat, &q).unwrap();
            assert!(
                (cosine.value.re - PI * c.b).abs() <= 1e-7 * scale,
                "{} z = {z:e}: cos component {:e} vs πB {:e}",
                mat.name(),
                cosine.value.re,
                PI * c.b
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn force_opposes_the_emission_asymmetry(mat in medium(), z in distance()) {
        let cfg = EmitterConfig::cesium(z);
        let q = QuadratureConfig::default();
        let c = spectrum_coefficients(&cfg, &mat, &q).unwrap();
        prop_assume!(c.b.abs() > 10.0 * c.errors[1]);
        let f = lateral_force(&cfg, &mat, 0.0, &SolverOptions::default()).unwrap().value;
        prop_assert_eq!(f.signum(), -c.b.signum(), "F = {:e}, B = {:e}", f, c.b);
    }

    #[test]
    fn decomposition_matches_direct_spectrum(mat in medium(), z in distance(), phi in 0.0f64..(2.0 * PI)) {
        let cfg = EmitterConfig::cesium(z);
        let q = QuadratureConfig::default();
        let c = spectrum_coefficients(&cfg, &mat, &q).unwrap();
        let direct = direct_angular_spectrum(&cfg, &mat, phi, &q).unwrap();
        let scale = c.a.abs() + c.b.abs() + c.c.abs() + c.d.abs();
        prop_assert!(
            (c.evaluate(phi) - direct.value).abs() <= 1e-8 * scale,
            "decomposition {:e}, direct {:e}", c.evaluate(phi), direct.value
        );
    }
}

#[test]
fn integrated_density_recovers_the_surface_rate() {
    let q = QuadratureConfig::default();
    for mat in [Material::gold(), Material::silica(), Material::perfect_conductor()] {
        for z in [LAMBDA / 50.0, LAMBDA / 4.0, 2.0 * LAMBDA] {
            let cfg = EmitterConfig::cesium(z);
            let total = try_integrate_azimuth(
                |phi| {
                    let r = try_integrate_spectrum(
                        |p| Ok(p.k_par * emission_rate_density(&cfg, &mat, p.k_par, phi)?),
                        cfg.omega(),
                        z,
                        &q,
                    )?;
                    Ok(Complex64::new(r.value, 0.0))
                },
                &q,
            )
            .unwrap();
            let rate = surface_rate(&cfg, &mat, &q).unwrap();
            let dev = (total.value.re - rate.value).abs() / rate.value.abs();
            assert!(dev <= 1e-7, "{} z = {z:e}: ∫∫γ = {:e}, Γ1 = {:e}", mat.name(), total.value.re, rate.value);
        }
    }
}
