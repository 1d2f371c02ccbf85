//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A domain type violates one of its invariants.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// The requested frequency does not propagate in the TE10 mode.
    #[error(
        "signal frequency {frequency_ghz:.3} GHz is at or below the TE10 cutoff \
         {cutoff_ghz:.3} GHz; increase the frequency or widen the waveguide"
    )]
    EvanescentMode { frequency_ghz: f64, cutoff_ghz: f64 },

    /// The selected attenuation model produced a negative coefficient.
    #[error(
        "attenuation model '{model}' yields a negative coefficient \
         ({alpha:.6e} Np/m) for this geometry; use the 'textbook' model"
    )]
    NonphysicalAttenuation { model: &'static str, alpha: f64 },

    /// Antenna coupling efficiency left the perturbative regime.
    #[error(
        "coupling efficiency eta = {eta:.6e} exceeds 1; the antenna model is \
         perturbative — shrink the antenna, lower C, or lengthen the waveguide"
    )]
    EtaOutOfRange { eta: f64 },

    /// SNR of a (0, 0) photon pair has no defined value.
    #[error("SNR is undefined: both signal and noise photon numbers are zero")]
    UndefinedSnr,

    /// The integration step violates the explicit-scheme stability guard.
    #[error(
        "integration step too coarse: gamma*dt = {gamma_dt:.3e} exceeds {max_gamma_dt}; \
         increase n_steps to at least {suggested_steps}"
    )]
    StabilityViolation {
        gamma_dt: f64,
        max_gamma_dt: f64,
        suggested_steps: u64,
    },

    /// A run configuration is malformed.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// No design satisfies the requested constraints.
    #[error("infeasible design: {0}")]
    Infeasible(String),
}

impl Error {
    /// Short machine-readable code, used as the status column of sweep tables.
    pub fn status_code(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid_spec",
            Error::EvanescentMode { .. } => "evanescent",
            Error::NonphysicalAttenuation { .. } => "nonphysical_attenuation",
            Error::EtaOutOfRange { .. } => "eta_out_of_range",
            Error::UndefinedSnr => "undefined_snr",
            Error::StabilityViolation { .. } => "stability_violation",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Infeasible(_) => "infeasible",
        }
    }
}
