//! Photon-number transport through the waveguide: thermal occupation, the
//! exponential signal/noise evolution, and SNR.
//!
//! Photon numbers here are expectation values (real-valued), not integers;
//! no shot-noise sampling happens in this module.

use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, REDUCED_PLANCK};
use crate::error::{Error, Result};
use crate::waveguide::{AttenuationModel, ModeParams, WaveguideSpec};

/// Carrier frequency and input photon number at the waveguide input port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSpec {
    /// Carrier frequency (Hz).
    pub frequency: f64,
    /// Mean photon number injected at the input port.
    pub input_photons: f64,
}

impl SignalSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "signal frequency must be positive, got {}",
                self.frequency
            )));
        }
        if !(self.input_photons >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "signal input_photons must be non-negative, got {}",
                self.input_photons
            )));
        }
        Ok(())
    }

    /// Angular frequency (rad/s).
    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.frequency
    }
}

/// Photon numbers at the waveguide output port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportResult {
    /// Surviving signal photons.
    pub ms: f64,
    /// Thermally generated noise photons.
    pub mn: f64,
    /// Bath occupation at the carrier frequency and guide temperature.
    pub n_th: f64,
    /// Total decay exponent Gamma * t (= alpha * l).
    pub gamma_t: f64,
    /// Propagation time l / v_g (s).
    pub propagation_time: f64,
    /// 10 log10(ms / mn); `+inf` when mn = 0 and ms > 0.
    pub snr_db: f64,
}

/// Bose–Einstein occupation `1 / (exp(hbar omega / kB T) - 1)` at the given
/// carrier frequency (Hz) and temperature (K). The `T -> 0` limit returns 0.
pub fn thermal_occupation(frequency: f64, temperature: f64) -> f64 {
    let x = REDUCED_PLANCK * 2.0 * std::f64::consts::PI * frequency / (BOLTZMANN * temperature);
    if !x.is_finite() {
        return 0.0;
    }
    1.0 / x.exp_m1()
}

/// Signal-to-noise ratio in dB. `mn = 0` with `ms > 0` returns the `+inf`
/// sentinel so zero-length links stay representable in sweep tables;
/// `(0, 0)` is an error.
pub fn snr_db(ms: f64, mn: f64) -> Result<f64> {
    if ms == 0.0 && mn == 0.0 {
        return Err(Error::UndefinedSnr);
    }
    if mn == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (ms / mn).log10())
}

/// Propagate the signal through the waveguide:
/// `t = l / v_g`, `ms = input * exp(-Gamma t)`, `mn = n_th (1 - exp(-Gamma t))`.
pub fn propagate(
    signal: &SignalSpec,
    wg: &WaveguideSpec,
    model: AttenuationModel,
) -> Result<TransportResult> {
    signal.validate()?;
    let mode = ModeParams::compute(wg, signal.omega(), model)?;
    let propagation_time = wg.length_l / mode.v_g;
    let gamma_t = mode.gamma * propagation_time;
    let transmission = (-gamma_t).exp();
    let ms = signal.input_photons * transmission;
    let n_th = thermal_occupation(signal.frequency, wg.temperature);
    let mn = n_th * (1.0 - transmission);
    let snr_db = snr_db(ms, mn)?;
    Ok(TransportResult {
        ms,
        mn,
        n_th,
        gamma_t,
        propagation_time,
        snr_db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveguide::ConductorModel;
    use approx::assert_relative_eq;

    fn wr_spec_l(length_l: f64) -> WaveguideSpec {
        WaveguideSpec {
            width_w: 0.05,
            height_h: 0.025,
            length_l,
            rel_permittivity: 1.0,
            rel_permeability: 1.0,
            wall: ConductorModel::aluminium(),
            temperature: 293.15,
        }
    }

    #[test]
    fn thermal_occupation_reference_points() {
        assert_relative_eq!(
            thermal_occupation(1e10, 293.15),
            610.325626402006,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            thermal_occupation(1e10, 78.0),
            162.0261420008584,
            max_relative = 1e-12
        );
    }

    #[test]
    fn thermal_occupation_vanishes_at_zero_temperature() {
        assert_eq!(thermal_occupation(1e10, 0.0), 0.0);
        assert_eq!(thermal_occupation(1e10, 1e-300), 0.0);
        assert!(thermal_occupation(1e10, 1e-3) < 1e-12);
    }

    #[test]
    fn thermal_occupation_high_temperature_expansion() {
        // n_th ~ kB T / (hbar omega) - 1/2 when kB T >> hbar omega.
        for (f, t) in [(1e10, 293.15), (1e9, 100.0), (5e9, 400.0)] {
            let x = REDUCED_PLANCK * 2.0 * std::f64::consts::PI * f / (BOLTZMANN * t);
            assert!(1.0 / x > 100.0, "test point not in the expansion regime");
            let expansion = 1.0 / x - 0.5;
            assert_relative_eq!(thermal_occupation(f, t), expansion, max_relative = 1e-3);
        }
    }

    #[test]
    fn snr_db_definition_points() {
        assert_eq!(snr_db(42.0, 42.0).unwrap(), 0.0);
        assert_relative_eq!(snr_db(100.0, 10.0).unwrap(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(
            snr_db(2.92e5, 52.5).unwrap(),
            37.45223548042461,
            max_relative = 1e-12
        );
        assert_eq!(snr_db(1.0, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(snr_db(0.0, 1.0).unwrap(), f64::NEG_INFINITY);
        assert!(matches!(snr_db(0.0, 0.0), Err(Error::UndefinedSnr)));
    }

    #[test]
    fn zero_length_guide_is_the_identity() {
        let signal = SignalSpec {
            frequency: 1e10,
            input_photons: 3.2e5,
        };
        let out = propagate(&signal, &wr_spec_l(0.0), AttenuationModel::Textbook).unwrap();
        assert_eq!(out.ms, 3.2e5);
        assert_eq!(out.mn, 0.0);
        assert_eq!(out.gamma_t, 0.0);
        assert_eq!(out.propagation_time, 0.0);
        assert_eq!(out.snr_db, f64::INFINITY);
    }

    #[test]
    fn long_guide_saturates_to_thermal_occupation() {
        let signal = SignalSpec {
            frequency: 1e10,
            input_photons: 3.2e5,
        };
        let out = propagate(&signal, &wr_spec_l(5e4), AttenuationModel::Textbook).unwrap();
        assert!(out.ms < 1e-100);
        assert_relative_eq!(out.mn, out.n_th, max_relative = 1e-12);
    }

    #[test]
    fn calibrated_scenario_photon_numbers() {
        // Length chosen so exp(-Gamma t) = 0.914 exactly; photon numbers then
        // follow from the transport law with n_th(10 GHz, 293.15 K).
        let signal = SignalSpec {
            frequency: 1e10,
            input_photons: 3.2e5,
        };
        let alpha = crate::waveguide::attenuation(
            &wr_spec_l(1.0),
            signal.omega(),
            AttenuationModel::Textbook,
        )
        .unwrap();
        let length = -(0.914f64.ln()) / alpha;
        let out = propagate(&signal, &wr_spec_l(length), AttenuationModel::Textbook).unwrap();
        assert_relative_eq!(out.ms, 292480.0, max_relative = 1e-9);
        assert_relative_eq!(out.mn, 52.48800387057252, max_relative = 1e-9);
        assert_relative_eq!(out.ms / out.mn, 5572.320881571558, max_relative = 1e-9);
        assert_relative_eq!(out.snr_db, 37.460361172787316, max_relative = 1e-9);
    }

    #[test]
    fn transport_components_partition_exactly() {
        // ms/ms0 + mn/n_th = 1 to floating-point accuracy.
        let signal = SignalSpec {
            frequency: 1e10,
            input_photons: 1.0,
        };
        for l in [0.1, 5.0, 50.0, 500.0] {
            let out = propagate(&signal, &wr_spec_l(l), AttenuationModel::Textbook).unwrap();
            let total = out.ms / signal.input_photons + out.mn / out.n_th;
            assert_relative_eq!(total, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_input_zero_length_has_no_defined_snr() {
        let signal = SignalSpec {
            frequency: 1e10,
            input_photons: 0.0,
        };
        assert!(matches!(
            propagate(&signal, &wr_spec_l(0.0), AttenuationModel::Textbook),
            Err(Error::UndefinedSnr)
        ));
    }

    #[test]
    fn below_cutoff_frequency_is_rejected_with_the_cutoff_named() {
        let signal = SignalSpec {
            frequency: 2e9,
            input_photons: 1.0,
        };
        let err = propagate(&signal, &wr_spec_l(5.0), AttenuationModel::Textbook).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("2.998 GHz"), "message was: {message}");
    }
}
