//! Per-mode electromagnetic quantities for a vacuum half-space `z > 0`
//! bounded by a homogeneous, isotropic medium in `z < 0`.

mod fresnel;
mod green;
mod material;
pub(crate) mod mode;

pub use fresnel::{fresnel_rp, fresnel_rs};
pub use green::{green_mode, green_mode_dx, polarization_vectors, ComplexTensor3, Sign};
pub use material::{Material, MaterialRegistry, REGISTRY_ENV};
pub use mode::{kz, ModeCoordinates, BRANCH_WINDOW};
