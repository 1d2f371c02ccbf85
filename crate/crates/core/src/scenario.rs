//! A complete link scenario (waveguide + signal + optional detector) and its
//! single-point evaluation through the waveguide -> transport -> detection
//! chain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{propagate, SignalSpec, TransportResult};
use crate::receiver::{detect, AntennaSpec, DetectionResult};
use crate::waveguide::{AttenuationModel, ModeParams, WaveguideSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub waveguide: WaveguideSpec,
    pub signal: SignalSpec,
    /// Absent for link-only runs.
    pub antenna: Option<AntennaSpec>,
    pub attenuation_model: AttenuationModel,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.waveguide.validate()?;
        self.signal.validate()?;
        if let Some(antenna) = &self.antenna {
            antenna.validate(&self.waveguide)?;
        }
        Ok(())
    }

    pub fn antenna(&self) -> Result<&AntennaSpec> {
        self.antenna.as_ref().ok_or_else(|| {
            Error::InvalidConfig(
                "this operation needs an [antenna] section (loop dimensions and capacitance)"
                    .to_string(),
            )
        })
    }

    /// Evaluate the full chain at the scenario's own parameters.
    pub fn evaluate(&self) -> Result<LinkBudget> {
        self.validate()?;
        let omega = self.signal.omega();
        let mode = ModeParams::compute(&self.waveguide, omega, self.attenuation_model)?;
        let transport = propagate(&self.signal, &self.waveguide, self.attenuation_model)?;
        let detection = match &self.antenna {
            Some(antenna) => Some(detect(&transport, antenna, &self.waveguide, omega)?),
            None => None,
        };
        Ok(LinkBudget {
            mode,
            transport,
            detection,
        })
    }
}

/// The computed chain for one scenario point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkBudget {
    pub mode: ModeParams,
    pub transport: TransportResult,
    pub detection: Option<DetectionResult>,
}
