//! Physical constants (CODATA 2018, SI).

/// Speed of light in vacuum [m/s].
pub const C: f64 = 299_792_458.0;
/// Vacuum permittivity [F/m].
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability [H/m], fixed by `μ₀ ε₀ c² = 1`.
pub const MU_0: f64 = 1.0 / (EPSILON_0 * C * C);
/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;

/// Cs D2 line, 6²S₁/₂ → 6²P₃/₂ [m].
pub const CS_D2_WAVELENGTH: f64 = 852e-9;
/// Transition dipole magnitude used for the Cs cycling transition [C m].
pub const CS_DIPOLE_MOMENT: f64 = 1.9e-29;
/// Mass of ¹³³Cs [kg].
pub const CS_MASS: f64 = 2.2069e-25;
