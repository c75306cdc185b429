use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature did not converge: error {abs_error:.3e} above tolerance {tolerance:.3e} after {evaluations} evaluations")]
    NonConvergence {
        abs_error: f64,
        tolerance: f64,
        evaluations: usize,
    },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("k_par = {k_par:.6e} 1/m lies inside the exclusion window of the vacuum branch point")]
    BranchPoint { k_par: f64 },

    #[error("Fresnel coefficient denominator vanishes at k_par = {k_par:.6e} 1/m")]
    FresnelSingular { k_par: f64 },

    #[error("invalid material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    #[error("{quantity} is not defined for material `{material}`: {reason}")]
    UnsupportedMaterial {
        quantity: &'static str,
        material: String,
        reason: &'static str,
    },

    #[error("invalid emitter configuration: {0}")]
    InvalidEmitter(String),

    #[error("total decay rate {0:.6e} 1/s is not positive")]
    NonPositiveDecayRate(f64),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("registry parse error: {0}")]
    Registry(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
