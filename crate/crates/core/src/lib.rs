//! Lateral Casimir-Polder force on a rotating (circularly polarised) dipole
//! emitter above a planar dielectric half-space.
//!
//! The crate is organised bottom-up:
//!
//! - [`planar_em`]: per-mode building blocks (perpendicular wavenumbers,
//!   Fresnel coefficients, polarisation vectors, the reflected Green tensor
//!   of a single plane-wave mode).
//! - [`quadrature`]: controlled-accuracy integration over the parallel
//!   wavenumber, with the propagating and evanescent sectors substituted
//!   separately, plus periodic azimuthal rules.
//! - [`observables`]: decay rates, the lateral force in its full and
//!   closed forms, populations, curl and recoil velocity.
//! - [`spectrum`]: the directional emission spectrum and its
//!   `A + B cos φ + C cos² φ + D sin² φ` decomposition.
//! - [`cli`]: sweeps, presets and tabular output used by the `lateral-cp`
//!   binary.

pub mod cli;
pub mod constants;
pub mod error;
pub mod observables;
pub mod planar_em;
pub mod quadrature;
pub mod spectrum;

pub use error::{Error, Result};
pub use observables::{
    EmitterConfig, ForceSample, GammaMode, Handedness, Populations, Regime, SolverOptions,
};
pub use planar_em::{ComplexTensor3, Material, MaterialRegistry, ModeCoordinates};
pub use quadrature::{QuadratureConfig, QuadratureResult};
pub use spectrum::SpectrumCoefficients;

pub use num_complex::Complex64;
