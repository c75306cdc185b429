//! C ABI for `lateral-cp`.
//!
//! Materials and emitters are opaque handles created by `lcp_*_new`-style
//! constructors and released with the matching `*_free`. Every fallible call
//! returns an [`LcpStatus`]; on failure `lcp_last_error_message` describes
//! the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lateral_cp::observables::{
    force_curl_pc, free_space_rate, lateral_force, lateral_force_near, lateral_force_pc, lateral_force_retarded,
    recoil_velocity, surface_rate, total_rate,
};
use lateral_cp::spectrum::spectrum_coefficients;
use lateral_cp::{
    Complex64, EmitterConfig, Error, ForceSample, GammaMode, Handedness, Material, MaterialRegistry, SolverOptions,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NonConvergence = 3,
    UnknownMaterial = 4,
    Unsupported = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpGammaMode {
    Total = 0,
    FreeSpace = 1,
}

/// A force value [N] with its absolute error estimate [N].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LcpForce {
    pub value: f64,
    pub error_estimate: f64,
}

/// Angular spectrum coefficients [N] at distance `z` [m].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LcpSpectrumCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub z: f64,
}

/// Opaque material handle.
pub struct LcpMaterial(Material);

/// Opaque emitter handle, carrying its solver options.
pub struct LcpEmitter {
    config: EmitterConfig,
    options: SolverOptions,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> LcpStatus {
    match err {
        Error::NonConvergence { .. } => LcpStatus::NonConvergence,
        Error::UnknownMaterial(_) => LcpStatus::UnknownMaterial,
        Error::UnsupportedMaterial { .. } => LcpStatus::Unsupported,
        Error::InvalidDomain(_)
        | Error::InvalidEmitter(_)
        | Error::InvalidConfig(_)
        | Error::InvalidRange(_)
        | Error::InvalidMaterial { .. }
        | Error::NonPositiveDecayRate(_) => LcpStatus::InvalidArgument,
        _ => LcpStatus::Internal,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> LcpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LcpStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            LcpStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_last_error(concat!("null pointer: ", stringify!($p)));
            return LcpStatus::NullPointer;
        })+
    };
}

fn boxed<T>(value: T, out: *mut *mut T) {
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lcp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lcp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up `name` in the material registry (shipped defaults, or the file
/// named by `LATERAL_CP_MATERIALS`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lcp_material_from_registry(name: *const c_char, out: *mut *mut LcpMaterial) -> LcpStatus {
    non_null!(name, out);
    guard(|| {
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Error::InvalidConfig("material name is not UTF-8".into()))?;
        let mat = MaterialRegistry::from_env()?.get(name)?.clone();
        boxed(LcpMaterial(mat), out);
        Ok(())
    })
}

/// A dielectric with relative permittivity `eps_re + i eps_im`, `eps_im >= 0`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lcp_material_dielectric(eps_re: f64, eps_im: f64, out: *mut *mut LcpMaterial) -> LcpStatus {
    non_null!(out);
    guard(|| {
        let mat = Material::dielectric("custom", Complex64::new(eps_re, eps_im))?;
        boxed(LcpMaterial(mat), out);
        Ok(())
    })
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lcp_material_perfect_conductor(out: *mut *mut LcpMaterial) -> LcpStatus {
    non_null!(out);
    guard(|| {
        boxed(LcpMaterial(Material::perfect_conductor()), out);
        Ok(())
    })
}

/// # Safety
/// `material` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn lcp_material_free(material: *mut LcpMaterial) {
    if !material.is_null() {
        drop(Box::from_raw(material));
    }
}

/// Cs D2 emitter, σ⁺, at distance `z` [m], with default solver options.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_cesium(z: f64, out: *mut *mut LcpEmitter) -> LcpStatus {
    non_null!(out);
    guard(|| {
        let config = EmitterConfig::cesium(z);
        config.validate()?;
        boxed(
            LcpEmitter {
                config,
                options: SolverOptions::default(),
            },
            out,
        );
        Ok(())
    })
}

/// # Safety
/// `emitter` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_free(emitter: *mut LcpEmitter) {
    if !emitter.is_null() {
        drop(Box::from_raw(emitter));
    }
}

/// # Safety
/// `emitter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_set_distance(emitter: *mut LcpEmitter, z: f64) -> LcpStatus {
    non_null!(emitter);
    let e = &mut *emitter;
    guard(|| {
        let config = e.config.at_distance(z);
        config.validate()?;
        e.config = config;
        Ok(())
    })
}

/// `sigma_minus = true` selects σ⁻ emission.
///
/// # Safety
/// `emitter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_set_handedness(emitter: *mut LcpEmitter, sigma_minus: bool) -> LcpStatus {
    non_null!(emitter);
    let e = &mut *emitter;
    e.config.handedness = if sigma_minus {
        Handedness::SigmaMinus
    } else {
        Handedness::SigmaPlus
    };
    set_last_error("");
    LcpStatus::Ok
}

/// # Safety
/// `emitter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_set_rel_tol(emitter: *mut LcpEmitter, rel_tol: f64) -> LcpStatus {
    non_null!(emitter);
    let e = &mut *emitter;
    guard(|| {
        let q = e.options.quadrature.with_rel_tol(rel_tol);
        q.validate()?;
        e.options.quadrature = q;
        Ok(())
    })
}

/// # Safety
/// `emitter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcp_emitter_set_gamma_mode(emitter: *mut LcpEmitter, mode: LcpGammaMode) -> LcpStatus {
    non_null!(emitter);
    (*emitter).options.gamma_mode = match mode {
        LcpGammaMode::Total => GammaMode::Total,
        LcpGammaMode::FreeSpace => GammaMode::FreeSpace,
    };
    set_last_error("");
    LcpStatus::Ok
}

unsafe fn write_force(out: *mut LcpForce, f: ForceSample) {
    *out = LcpForce {
        value: f.value,
        error_estimate: f.error_estimate,
    };
}

/// Full lateral force at time `t` [s].
///
/// # Safety
/// `emitter` and `material` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_lateral_force(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    t: f64,
    out: *mut LcpForce,
) -> LcpStatus {
    non_null!(emitter, material, out);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        write_force(out, lateral_force(&e.config, m, t, &e.options)?);
        Ok(())
    })
}

/// Perfect-conductor closed form at time `t` [s].
///
/// # Safety
/// `emitter` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_lateral_force_pc(emitter: *const LcpEmitter, t: f64, out: *mut LcpForce) -> LcpStatus {
    non_null!(emitter, out);
    let e = &*emitter;
    guard(|| {
        write_force(out, lateral_force_pc(&e.config, t, &e.options)?);
        Ok(())
    })
}

/// Non-retarded law; `LcpStatus_Unsupported` for the perfect conductor.
///
/// # Safety
/// `emitter` and `material` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_lateral_force_near(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    t: f64,
    out: *mut LcpForce,
) -> LcpStatus {
    non_null!(emitter, material, out);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        write_force(out, lateral_force_near(&e.config, m, t, &e.options)?);
        Ok(())
    })
}

/// Retarded law.
///
/// # Safety
/// `emitter` and `material` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_lateral_force_retarded(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    t: f64,
    out: *mut LcpForce,
) -> LcpStatus {
    non_null!(emitter, material, out);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        write_force(out, lateral_force_retarded(&e.config, m, t, &e.options)?);
        Ok(())
    })
}

/// y-component of the curl of the perfect-conductor force [N/m].
///
/// # Safety
/// `emitter` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_force_curl_pc(emitter: *const LcpEmitter, out: *mut f64) -> LcpStatus {
    non_null!(emitter, out);
    let e = &*emitter;
    guard(|| {
        *out = force_curl_pc(&e.config)?;
        Ok(())
    })
}

/// Free-space, surface-assisted and total decay rates [1/s]. The total
/// follows the emitter's gamma mode.
///
/// # Safety
/// `emitter` and `material` must be live handles; all outputs writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_decay_rates(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    free_space: *mut f64,
    surface: *mut f64,
    total: *mut f64,
) -> LcpStatus {
    non_null!(emitter, material, free_space, surface, total);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        let g1 = surface_rate(&e.config, m, &e.options.quadrature)?;
        let gamma = total_rate(&e.config, m, &e.options)?;
        *free_space = free_space_rate(&e.config);
        *surface = g1.value;
        *total = gamma;
        Ok(())
    })
}

/// Recoil velocity `F_x(0)/(mΓ)` [m/s].
///
/// # Safety
/// `emitter` and `material` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_recoil_velocity(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    out: *mut f64,
) -> LcpStatus {
    non_null!(emitter, material, out);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        *out = recoil_velocity(&e.config, m, &e.options)?.velocity;
        Ok(())
    })
}

/// # Safety
/// `emitter` and `material` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcp_spectrum_coefficients(
    emitter: *const LcpEmitter,
    material: *const LcpMaterial,
    out: *mut LcpSpectrumCoefficients,
) -> LcpStatus {
    non_null!(emitter, material, out);
    let (e, m) = (&*emitter, &(*material).0);
    guard(|| {
        let c = spectrum_coefficients(&e.config, m, &e.options.quadrature)?;
        *out = LcpSpectrumCoefficients {
            a: c.a,
            b: c.b,
            c: c.c,
            d: c.d,
            z: c.z,
        };
        Ok(())
    })
}
