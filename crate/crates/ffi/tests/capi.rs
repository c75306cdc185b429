use std::ffi::{CStr, CString};
use std::ptr;

use lateral_cp_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lcp_last_error_message()) }.to_string_lossy().into_owned()
}

struct Handles {
    emitter: *mut LcpEmitter,
    material: *mut LcpMaterial,
}

impl Handles {
    fn new(material: &str, z: f64) -> Self {
        let name = CString::new(material).unwrap();
        let mut emitter = ptr::null_mut();
        let mut mat = ptr::null_mut();
        unsafe {
            assert_eq!(lcp_emitter_cesium(z, &mut emitter), LcpStatus::Ok);
            assert_eq!(lcp_material_from_registry(name.as_ptr(), &mut mat), LcpStatus::Ok);
        }
        Self {
            emitter,
            material: mat,
        }
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            lcp_emitter_free(self.emitter);
            lcp_material_free(self.material);
        }
    }
}

#[test]
fn pc_force_through_both_paths() {
    let h = Handles::new("pc", 213e-9);
    let (mut full, mut closed) = (LcpForce::default(), LcpForce::default());
    unsafe {
        assert_eq!(lcp_lateral_force(h.emitter, h.material, 0.0, &mut full), LcpStatus::Ok);
        assert_eq!(lcp_lateral_force_pc(h.emitter, 0.0, &mut closed), LcpStatus::Ok);
    }
    assert!((full.value - closed.value).abs() <= 1e-6 * closed.value.abs());
    assert_eq!(closed.error_estimate, 0.0);
}

#[test]
fn handedness_setter_flips_force() {
    let h = Handles::new("gold", 190e-9);
    let (mut plus, mut minus) = (LcpForce::default(), LcpForce::default());
    unsafe {
        assert_eq!(lcp_lateral_force(h.emitter, h.material, 0.0, &mut plus), LcpStatus::Ok);
        assert_eq!(lcp_emitter_set_handedness(h.emitter, true), LcpStatus::Ok);
        assert_eq!(lcp_lateral_force(h.emitter, h.material, 0.0, &mut minus), LcpStatus::Ok);
    }
    assert!(plus.value < 0.0);
    assert_eq!(plus.value, -minus.value);
}

#[test]
fn spectrum_b_matches_force() {
    let h = Handles::new("gold", 264e-9);
    let mut c = LcpSpectrumCoefficients::default();
    let mut f = LcpForce::default();
    unsafe {
        assert_eq!(lcp_spectrum_coefficients(h.emitter, h.material, &mut c), LcpStatus::Ok);
        assert_eq!(lcp_lateral_force(h.emitter, h.material, 0.0, &mut f), LcpStatus::Ok);
    }
    assert!((f.value + std::f64::consts::PI * c.b).abs() <= 1e-10 * f.value.abs());
    assert_eq!(c.z, 264e-9);
}

#[test]
fn rates_velocity_and_curl() {
    let h = Handles::new("gold", 190e-9);
    let (mut g0, mut g1, mut g) = (0.0, 0.0, 0.0);
    let mut v = 0.0;
    let mut curl = 0.0;
    unsafe {
        assert_eq!(lcp_decay_rates(h.emitter, h.material, &mut g0, &mut g1, &mut g), LcpStatus::Ok);
        assert_eq!(lcp_recoil_velocity(h.emitter, h.material, &mut v), LcpStatus::Ok);
        assert_eq!(lcp_force_curl_pc(h.emitter, &mut curl), LcpStatus::Ok);
        assert_eq!(lcp_emitter_set_gamma_mode(h.emitter, LcpGammaMode::FreeSpace), LcpStatus::Ok);
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        assert_eq!(lcp_decay_rates(h.emitter, h.material, &mut a, &mut b, &mut c), LcpStatus::Ok);
        assert_eq!(c, a);
    }
    assert!(g0 > 2e7 && g0 < 5e7);
    assert_eq!(g, g0 + g1);
    assert!(v < 0.0 && v.abs() > 5e-5);
    assert!(curl != 0.0);
}

#[test]
fn errors_are_reported() {
    let bogus = CString::new("unobtainium").unwrap();
    let mut mat = ptr::null_mut();
    unsafe {
        assert_eq!(lcp_material_from_registry(bogus.as_ptr(), &mut mat), LcpStatus::UnknownMaterial);
        assert!(mat.is_null());
        assert!(last_error().contains("unobtainium"));

        assert_eq!(lcp_material_dielectric(2.0, -0.1, &mut mat), LcpStatus::InvalidArgument);
        let mut emitter = ptr::null_mut();
        assert_eq!(lcp_emitter_cesium(-1.0, &mut emitter), LcpStatus::InvalidArgument);
        assert_eq!(lcp_emitter_cesium(1e-7, ptr::null_mut()), LcpStatus::NullPointer);

        assert_eq!(lcp_material_perfect_conductor(&mut mat), LcpStatus::Ok);
        assert_eq!(lcp_emitter_cesium(1e-7, &mut emitter), LcpStatus::Ok);
        assert!(last_error().is_empty());
        let mut f = LcpForce::default();
        assert_eq!(lcp_lateral_force_near(emitter, mat, 0.0, &mut f), LcpStatus::Unsupported);
        assert_eq!(lcp_emitter_set_rel_tol(emitter, 0.5), LcpStatus::InvalidArgument);
        assert_eq!(lcp_emitter_set_distance(emitter, 0.0), LcpStatus::InvalidArgument);
        assert_eq!(lcp_lateral_force(ptr::null(), mat, 0.0, &mut f), LcpStatus::NullPointer);
        lcp_emitter_free(emitter);
        lcp_material_free(mat);
        lcp_material_free(ptr::null_mut());
    }
}

#[test]
fn custom_dielectric_near_and_retarded() {
    let mut mat = ptr::null_mut();
    let mut emitter = ptr::null_mut();
    let (mut near, mut ret) = (LcpForce::default(), LcpForce::default());
    unsafe {
        assert_eq!(lcp_material_dielectric(1.40, 1.35, &mut mat), LcpStatus::Ok);
        assert_eq!(lcp_emitter_cesium(5e-9, &mut emitter), LcpStatus::Ok);
        assert_eq!(lcp_lateral_force_near(emitter, mat, 0.0, &mut near), LcpStatus::Ok);
        assert_eq!(lcp_lateral_force_retarded(emitter, mat, 0.0, &mut ret), LcpStatus::Ok);
        lcp_emitter_free(emitter);
        lcp_material_free(mat);
    }
    assert!(near.value < 0.0);
    assert!(ret.value.is_finite());
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(lcp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lateral_cp.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct LcpEmitter LcpEmitter;"));
}
