//! Physical constants (SI, 2018 CODATA / SI exact values).

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant (J·s).
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Vacuum permeability (H/m).
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Free-space wave impedance, rounded to the engineering value used by the
/// mode-impedance convention of this model (ohm).
pub const FREE_SPACE_IMPEDANCE: f64 = 377.0;
