//! Closed-form TE10 mode physics of a rectangular conducting waveguide:
//! cutoff, impedance, effective permittivity, group velocity, surface
//! resistance, attenuation, and decay rate.
//!
//! All quantities are strict SI. Angular frequencies (rad/s) are used
//! throughout this module; conversion from Hz happens once at the interfaces
//! that accept a carrier frequency.

use serde::{Deserialize, Serialize};

use crate::constants::{
    FREE_SPACE_IMPEDANCE, SPEED_OF_LIGHT, VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY,
};
use crate::error::{Error, Result};

/// Reference temperature of the wall-conductivity model (K).
pub const CONDUCTIVITY_REF_TEMPERATURE: f64 = 293.0;

/// Which conductor-loss expression to evaluate.
///
/// `Textbook` is the standard TE10 conductor-loss result and the default.
/// `PaperVerbatim` evaluates an alternative published expression literally;
/// it is negative for every geometry with `h <= W` above cutoff and is kept
/// only so that the discrepancy can be audited. It is never silently clamped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttenuationModel {
    #[default]
    Textbook,
    PaperVerbatim,
}

impl AttenuationModel {
    pub fn name(self) -> &'static str {
        match self {
            AttenuationModel::Textbook => "textbook",
            AttenuationModel::PaperVerbatim => "paper_verbatim",
        }
    }
}

/// Wall-conductor model: a reference conductivity at 293 K plus a capped
/// residual-resistivity enhancement at cryogenic temperatures.
///
/// `conductivity(T)` returns `sigma_ref * f(T)` with
///
/// * `f(T) = cryo_cap` for `T <= knee_temperature`,
/// * `f(T) = clamp(cryo_scale * 293 / T, 1, cryo_cap)` above the knee.
///
/// The enhancement is non-increasing in `T`. The aluminium default reaches
/// its cap of 5 at the 78 K knee; real cryogenic conductivity depends on
/// sample purity (RRR), so the cap is a configuration choice, not a material
/// constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConductorModel {
    pub name: String,
    /// Conductivity at 293 K (S/m).
    pub sigma_ref: f64,
    /// Linear 1/T enhancement slope above the knee.
    #[serde(default = "default_cryo_scale")]
    pub cryo_scale: f64,
    /// Maximum conductivity enhancement over `sigma_ref`.
    #[serde(default = "default_cryo_cap")]
    pub cryo_cap: f64,
    /// Temperature at and below which the cap applies (K).
    #[serde(default = "default_knee_temperature")]
    pub knee_temperature: f64,
}

fn default_cryo_scale() -> f64 {
    1.0
}
fn default_cryo_cap() -> f64 {
    5.0
}
fn default_knee_temperature() -> f64 {
    78.0
}

impl ConductorModel {
    /// Room-temperature aluminium with the default cryogenic enhancement.
    pub fn aluminium() -> Self {
        ConductorModel {
            name: "aluminium".to_string(),
            sigma_ref: 3.8e7,
            cryo_scale: default_cryo_scale(),
            cryo_cap: default_cryo_cap(),
            knee_temperature: default_knee_temperature(),
        }
    }

    /// Wall conductivity at temperature `t` (S/m).
    pub fn conductivity(&self, t: f64) -> f64 {
        let enhancement = if t <= self.knee_temperature {
            self.cryo_cap
        } else {
            (self.cryo_scale * CONDUCTIVITY_REF_TEMPERATURE / t).clamp(1.0, self.cryo_cap)
        };
        self.sigma_ref * enhancement
    }

    /// One-line provenance string for result records.
    pub fn describe(&self) -> String {
        format!(
            "{} sigma_ref={} S/m at {} K, cryo_scale={}, cap=x{} below {} K",
            self.name,
            self.sigma_ref,
            CONDUCTIVITY_REF_TEMPERATURE,
            self.cryo_scale,
            self.cryo_cap,
            self.knee_temperature
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_ref > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "wall conductivity sigma_ref must be positive, got {}",
                self.sigma_ref
            )));
        }
        if !(self.cryo_scale > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "wall cryo_scale must be positive, got {}",
                self.cryo_scale
            )));
        }
        if !(self.cryo_cap >= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "wall cryo_cap must be >= 1, got {}",
                self.cryo_cap
            )));
        }
        if !(self.knee_temperature > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "wall knee_temperature must be positive, got {}",
                self.knee_temperature
            )));
        }
        Ok(())
    }
}

/// Geometry, filling material, wall conductor, and temperature of the
/// transmission waveguide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveguideSpec {
    /// Cross-section width along x (m). The TE10 half-sine spans this side.
    pub width_w: f64,
    /// Cross-section height along y (m); must not exceed the width.
    pub height_h: f64,
    /// Guide length (m), zero allowed.
    pub length_l: f64,
    /// Relative permittivity of the filling.
    pub rel_permittivity: f64,
    /// Relative permeability of the filling.
    pub rel_permeability: f64,
    pub wall: ConductorModel,
    /// Uniform wall/filling temperature (K).
    pub temperature: f64,
}

impl WaveguideSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.width_w > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "waveguide width_w must be positive, got {}",
                self.width_w
            )));
        }
        if !(self.height_h > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "waveguide height_h must be positive, got {}",
                self.height_h
            )));
        }
        if self.height_h > self.width_w {
            return Err(Error::InvalidSpec(format!(
                "waveguide height_h ({}) must not exceed width_w ({}); TE10 is \
                 the fundamental mode only in that orientation",
                self.height_h, self.width_w
            )));
        }
        if !(self.length_l >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "waveguide length_l must be non-negative, got {}",
                self.length_l
            )));
        }
        if !(self.rel_permittivity >= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "filling rel_permittivity must be >= 1, got {}",
                self.rel_permittivity
            )));
        }
        if !(self.rel_permeability > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "filling rel_permeability must be positive, got {}",
                self.rel_permeability
            )));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "waveguide temperature must be positive, got {}",
                self.temperature
            )));
        }
        self.wall.validate()
    }
}

/// Derived TE10 mode parameters at one angular frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeParams {
    /// Signal angular frequency (rad/s).
    pub omega: f64,
    /// Cutoff angular frequency (rad/s).
    pub omega_c: f64,
    /// omega / omega_c.
    pub big_omega: f64,
    /// Filling impedance (ohm).
    pub z_f: f64,
    /// Effective permittivity of the propagating mode.
    pub eps_eff: f64,
    /// Group velocity (m/s).
    pub v_g: f64,
    /// Power attenuation coefficient (Np/m).
    pub alpha: f64,
    /// Decay rate Gamma = alpha * v_g (1/s), so Gamma * (l / v_g) = alpha * l.
    pub gamma: f64,
    /// Wall surface resistance (ohm).
    pub r_s: f64,
}

impl ModeParams {
    pub fn compute(spec: &WaveguideSpec, omega: f64, model: AttenuationModel) -> Result<Self> {
        spec.validate()?;
        let omega_c = cutoff_angular_frequency(spec);
        ensure_propagating(omega, omega_c)?;
        let alpha = attenuation(spec, omega, model)?;
        let v_g = group_velocity(spec, omega)?;
        Ok(ModeParams {
            omega,
            omega_c,
            big_omega: omega / omega_c,
            z_f: mode_impedance(spec),
            eps_eff: effective_permittivity(spec, omega)?,
            v_g,
            alpha,
            gamma: alpha * v_g,
            r_s: surface_resistance(&spec.wall, omega, spec.temperature),
        })
    }
}

pub(crate) fn ensure_propagating(omega: f64, omega_c: f64) -> Result<()> {
    if omega > omega_c {
        Ok(())
    } else {
        Err(Error::EvanescentMode {
            frequency_ghz: omega / (2.0 * std::f64::consts::PI) / 1e9,
            cutoff_ghz: omega_c / (2.0 * std::f64::consts::PI) / 1e9,
        })
    }
}

/// TE10 cutoff angular frequency, `2*pi*c / (2 W sqrt(eps_r))` (rad/s).
pub fn cutoff_angular_frequency(spec: &WaveguideSpec) -> f64 {
    std::f64::consts::PI * SPEED_OF_LIGHT / (spec.width_w * spec.rel_permittivity.sqrt())
}

/// Effective permittivity `eps_r - pi^2 c^2 / (W^2 omega^2)` of the
/// propagating mode; equals `eps_r * (1 - (omega_c/omega)^2)`.
pub fn effective_permittivity(spec: &WaveguideSpec, omega: f64) -> Result<f64> {
    ensure_propagating(omega, cutoff_angular_frequency(spec))?;
    let pic = std::f64::consts::PI * SPEED_OF_LIGHT;
    Ok(spec.rel_permittivity - (pic / (spec.width_w * omega)).powi(2))
}

/// Impedance of the filling material, `377 sqrt(mu_r / eps_r)` (ohm).
pub fn mode_impedance(spec: &WaveguideSpec) -> f64 {
    FREE_SPACE_IMPEDANCE * (spec.rel_permeability / spec.rel_permittivity).sqrt()
}

/// TE10 group velocity `c sqrt(1 - (omega_c/omega)^2) / sqrt(eps_r mu_r)` (m/s).
pub fn group_velocity(spec: &WaveguideSpec, omega: f64) -> Result<f64> {
    let omega_c = cutoff_angular_frequency(spec);
    ensure_propagating(omega, omega_c)?;
    let dispersion = (1.0 - (omega_c / omega).powi(2)).sqrt();
    Ok(SPEED_OF_LIGHT * dispersion / (spec.rel_permittivity * spec.rel_permeability).sqrt())
}

/// Normal-skin-effect surface resistance `sqrt(omega mu0 / (2 sigma(T)))` (ohm).
pub fn surface_resistance(wall: &ConductorModel, omega: f64, temperature: f64) -> f64 {
    (omega * VACUUM_PERMEABILITY / (2.0 * wall.conductivity(temperature))).sqrt()
}

/// TE10 power attenuation coefficient (Np/m), so that `exp(-alpha l)`
/// multiplies photon number.
///
/// The textbook model doubles the conductor-loss field coefficient
/// `R_s / (h Z_F sqrt(1 - (omega_c/omega)^2)) * (1 + 2 (h/W)(omega_c/omega)^2)`.
/// The paper-verbatim variant evaluates
/// `2 R_s / sqrt(mu0 mu_r / (eps0 eps_r)) * ((h/W)(omega_c/omega)^2 - 1) / sqrt(1 - (omega_c/omega)^2)`
/// literally and fails with [`Error::NonphysicalAttenuation`] whenever the
/// result is negative, which it is for every valid geometry above cutoff.
pub fn attenuation(spec: &WaveguideSpec, omega: f64, model: AttenuationModel) -> Result<f64> {
    let omega_c = cutoff_angular_frequency(spec);
    ensure_propagating(omega, omega_c)?;
    let r_s = surface_resistance(&spec.wall, omega, spec.temperature);
    let cutoff_ratio_sq = (omega_c / omega).powi(2);
    let dispersion = (1.0 - cutoff_ratio_sq).sqrt();
    let aspect = spec.height_h / spec.width_w;
    match model {
        AttenuationModel::Textbook => {
            let z_f = mode_impedance(spec);
            let field_alpha = r_s / (spec.height_h * z_f * dispersion)
                * (1.0 + 2.0 * aspect * cutoff_ratio_sq);
            Ok(2.0 * field_alpha)
        }
        AttenuationModel::PaperVerbatim => {
            let z_fill = (VACUUM_PERMEABILITY * spec.rel_permeability
                / (VACUUM_PERMITTIVITY * spec.rel_permittivity))
                .sqrt();
            let alpha = 2.0 * r_s / z_fill * (aspect * cutoff_ratio_sq - 1.0) / dispersion;
            if alpha < 0.0 {
                Err(Error::NonphysicalAttenuation {
                    model: model.name(),
                    alpha,
                })
            } else {
                Ok(alpha)
            }
        }
    }
}

/// Decay rate `Gamma = alpha * v_g` (1/s); `Gamma * (l / v_g)` equals
/// `alpha * l` by construction.
pub fn decay_rate(spec: &WaveguideSpec, omega: f64, model: AttenuationModel) -> Result<f64> {
    Ok(attenuation(spec, omega, model)? * group_velocity(spec, omega)?)
}
