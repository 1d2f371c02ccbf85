//! Loop-antenna / LC detection stage: coupling efficiency, induced
//! signal/noise photon numbers, the amplitude map between the guided mode
//! and the LC oscillator, and LC element relations.
//!
//! The antenna is assumed centered at the transverse field maximum, and the
//! model is perturbative: the loop does not back-act on the guided mode, so
//! the coupling efficiency must stay well below one. `eta > 1` is a hard
//! modeling error; `eta > 0.1` is worth a warning (see
//! [`ETA_PERTURBATIVE_WARN_THRESHOLD`]).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};
use crate::link::TransportResult;
use crate::waveguide::{
    cutoff_angular_frequency, effective_permittivity, ensure_propagating, mode_impedance,
    WaveguideSpec,
};

/// Coupling efficiencies above this value strain the perturbative
/// (no back-action) assumption and should be flagged to the user.
pub const ETA_PERTURBATIVE_WARN_THRESHOLD: f64 = 0.1;

/// Loop antenna dimensions and LC-circuit capacitance at the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaSpec {
    /// Loop width along x (m); must fit inside the waveguide width.
    pub width_wr: f64,
    /// Loop height along y (m); must fit inside the waveguide height.
    pub height_hr: f64,
    /// LC capacitance (F).
    pub capacitance: f64,
    /// Relative permeability at the port; must match the waveguide filling.
    pub rel_permeability: f64,
}

impl AntennaSpec {
    pub fn validate(&self, wg: &WaveguideSpec) -> Result<()> {
        if !(self.width_wr > 0.0) || self.width_wr > wg.width_w {
            return Err(Error::InvalidSpec(format!(
                "antenna width_wr must be in (0, {}], got {}",
                wg.width_w, self.width_wr
            )));
        }
        if !(self.height_hr > 0.0) || self.height_hr > wg.height_h {
            return Err(Error::InvalidSpec(format!(
                "antenna height_hr must be in (0, {}], got {}",
                wg.height_h, self.height_hr
            )));
        }
        if !(self.capacitance > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "antenna capacitance must be positive, got {}",
                self.capacitance
            )));
        }
        if self.rel_permeability != wg.rel_permeability {
            return Err(Error::InvalidSpec(format!(
                "antenna rel_permeability ({}) must match the waveguide filling ({})",
                self.rel_permeability, wg.rel_permeability
            )));
        }
        Ok(())
    }
}

/// Photon numbers induced across the LC oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    /// Coupling efficiency, in (0, 1].
    pub eta: f64,
    /// Induced signal photons, `eta * ms`.
    pub ns: f64,
    /// Induced noise photons, `eta * mn`.
    pub nn: f64,
    /// Inductance satisfying `omega = 1 / sqrt(L C)` (H).
    pub inductance: f64,
}

/// Coupling efficiency
/// `eta = C omega^2 mu_r^2 mu0^2 h_r^2 W_r^2 / ((1/2) Omega^2 l W h (eps0 eps_eff Z_F^2 + mu0 mu_r))`.
///
/// Dimensions of zero are accepted here (zero enclosed flux couples nothing);
/// strict positivity is enforced by [`AntennaSpec::validate`] at the
/// detection level. A non-finite or above-one result is rejected as
/// [`Error::EtaOutOfRange`].
pub fn coupling_eta(ant: &AntennaSpec, wg: &WaveguideSpec, omega: f64) -> Result<f64> {
    let omega_c = cutoff_angular_frequency(wg);
    ensure_propagating(omega, omega_c)?;
    if ant.width_wr < 0.0 || ant.width_wr > wg.width_w {
        return Err(Error::InvalidSpec(format!(
            "antenna width_wr {} does not fit the waveguide cross-section",
            ant.width_wr
        )));
    }
    if ant.height_hr < 0.0 || ant.height_hr > wg.height_h {
        return Err(Error::InvalidSpec(format!(
            "antenna height_hr {} does not fit the waveguide cross-section",
            ant.height_hr
        )));
    }
    let mu_r = wg.rel_permeability;
    let eps_eff = effective_permittivity(wg, omega)?;
    let z_f = mode_impedance(wg);
    let big_omega_sq = (omega / omega_c).powi(2);
    let numerator = ant.capacitance
        * omega.powi(2)
        * (mu_r * VACUUM_PERMEABILITY * ant.height_hr * ant.width_wr).powi(2);
    let material = VACUUM_PERMITTIVITY * eps_eff * z_f.powi(2) + VACUUM_PERMEABILITY * mu_r;
    let denominator =
        0.5 * big_omega_sq * wg.length_l * wg.width_w * wg.height_h * material;
    let eta = numerator / denominator;
    if eta.is_nan() || eta > 1.0 {
        return Err(Error::EtaOutOfRange { eta });
    }
    Ok(eta)
}

/// Map the transported photon numbers onto the LC oscillator:
/// `ns = eta * ms`, `nn = eta * mn`, `L = 1 / (omega^2 C)`.
pub fn detect(
    transport: &TransportResult,
    ant: &AntennaSpec,
    wg: &WaveguideSpec,
    omega: f64,
) -> Result<DetectionResult> {
    ant.validate(wg)?;
    let eta = coupling_eta(ant, wg, omega)?;
    Ok(DetectionResult {
        eta,
        ns: eta * transport.ms,
        nn: eta * transport.mn,
        inductance: 1.0 / (omega.powi(2) * ant.capacitance),
    })
}

/// Linear amplitude map from the guided-mode operator onto the LC voltage
/// operator:
/// `b = i a sqrt(C) / sqrt(phi eps0 eps_eff V_ol) * mu0 mu_r omega h_r W_r`
/// with `phi = Omega^2 Z_F^2 / 2 + mu0 mu_r Omega^2 / (2 eps0 eps_eff)`.
///
/// The squared magnitude of the unit-amplitude map equals [`coupling_eta`].
pub fn induced_voltage_photon_map(
    amplitude: Complex64,
    ant: &AntennaSpec,
    wg: &WaveguideSpec,
    omega: f64,
) -> Result<Complex64> {
    let omega_c = cutoff_angular_frequency(wg);
    ensure_propagating(omega, omega_c)?;
    let mu_r = wg.rel_permeability;
    let eps_eff = effective_permittivity(wg, omega)?;
    let z_f = mode_impedance(wg);
    let big_omega_sq = (omega / omega_c).powi(2);
    let phi = 0.5 * big_omega_sq * z_f.powi(2)
        + VACUUM_PERMEABILITY * mu_r * big_omega_sq / (2.0 * VACUUM_PERMITTIVITY * eps_eff);
    let volume = wg.width_w * wg.height_h * wg.length_l;
    let coefficient = ant.capacitance.sqrt()
        / (phi * VACUUM_PERMITTIVITY * eps_eff * volume).sqrt()
        * VACUUM_PERMEABILITY
        * mu_r
        * omega
        * ant.height_hr
        * ant.width_wr;
    Ok(Complex64::new(0.0, coefficient) * amplitude)
}
