//! Configuration file schema and `--set` override handling.
//!
//! Configs are strict TOML: unknown keys are rejected so that a typo in a
//! physical constant fails loudly instead of silently using a default.
//! Frequencies are in Hz, lengths in meters, temperatures in kelvin,
//! capacitances in farads; no unit-suffix parsing.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qlink_core::design::{Spacing, SweepSpec, SweepVariable};
use qlink_core::link::SignalSpec;
use qlink_core::receiver::AntennaSpec;
use qlink_core::scenario::Scenario;
use qlink_core::waveguide::{AttenuationModel, WaveguideSpec};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Attenuation model selector; top-level key, so it must appear before
    /// the first table header in the file.
    #[serde(default)]
    pub attenuation_model: AttenuationModel,
    pub waveguide: WaveguideSpec,
    pub signal: SignalSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna: Option<AntennaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaSection {
    pub width_wr: f64,
    pub height_hr: f64,
    pub capacitance: f64,
    /// Defaults to the waveguide filling permeability.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_permeability: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    /// Output file; stdout when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub n_points: usize,
    #[serde(default)]
    pub spacing: Spacing,
    #[serde(default = "default_h_ratio")]
    pub antenna_h_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignMode {
    #[default]
    AntennaWidth,
    MaxLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSection {
    /// Noise budget; omit for an unconstrained noise side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_noise_photons: Option<f64>,
    pub min_signal_photons: f64,
    /// Transmitter budget; omit for an unconstrained input side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_input_photons: Option<f64>,
    #[serde(default = "default_h_ratio")]
    pub h_ratio: f64,
    #[serde(default)]
    pub mode: DesignMode,
    /// Waveguide temperature for `max_length` mode (K).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cooled_temperature: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_trajectories")]
    pub n_trajectories: u64,
    /// Steps of the scenario-derived ensemble (the grid schedules its own).
    #[serde(default = "default_mc_steps")]
    pub n_steps: u64,
    /// Overrides for the scenario-derived ensemble.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_th: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_photons: Option<f64>,
    /// When present, the output table is the convergence report over this
    /// trajectory schedule instead of the verification grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence_schedule: Option<Vec<u64>>,
}

impl Default for McSection {
    fn default() -> Self {
        McSection {
            seed: default_seed(),
            n_trajectories: default_trajectories(),
            n_steps: default_mc_steps(),
            gamma: None,
            total_time: None,
            n_th: None,
            initial_photons: None,
            convergence_schedule: None,
        }
    }
}

fn default_h_ratio() -> f64 {
    0.5
}
fn default_seed() -> u64 {
    42
}
fn default_trajectories() -> u64 {
    10_000
}
fn default_mc_steps() -> u64 {
    64
}

impl ScenarioConfig {
    pub fn antenna_spec(&self) -> Option<AntennaSpec> {
        self.antenna.map(|section| AntennaSpec {
            width_wr: section.width_wr,
            height_hr: section.height_hr,
            capacitance: section.capacitance,
            rel_permeability: section
                .rel_permeability
                .unwrap_or(self.waveguide.rel_permeability),
        })
    }

    pub fn scenario(&self) -> Scenario {
        Scenario {
            waveguide: self.waveguide.clone(),
            signal: self.signal,
            antenna: self.antenna_spec(),
            attenuation_model: self.attenuation_model,
        }
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, CliError> {
        let section = self.sweep.ok_or_else(|| {
            CliError::Config("a [sweep] section is required for this command".to_string())
        })?;
        Ok(SweepSpec {
            variable: section.variable,
            start: section.start,
            stop: section.stop,
            n_points: section.n_points,
            spacing: section.spacing,
            antenna_h_ratio: section.antenna_h_ratio,
            fixed: self.scenario(),
        })
    }

    pub fn output_format(&self, default: OutputFormat) -> OutputFormat {
        self.output
            .as_ref()
            .and_then(|o| o.format)
            .unwrap_or(default)
    }

    pub fn output_path(&self) -> Option<&str> {
        self.output.as_ref().and_then(|o| o.path.as_deref())
    }
}

/// Read and strictly parse a config file, applying `--set key=value`
/// overrides (dotted paths) before the typed parse.
pub fn load_config(path: &Path, overrides: &[String]) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|err| {
        CliError::Config(format!("cannot read config {}: {err}", path.display()))
    })?;
    let effective = if overrides.is_empty() {
        text
    } else {
        let mut table: toml::Table = text.parse().map_err(|err| {
            CliError::Config(format!("{}: {err}", path.display()))
        })?;
        for item in overrides {
            apply_override(&mut table, item)?;
        }
        toml::to_string(&table)
            .map_err(|err| CliError::Config(format!("cannot re-render config: {err}")))?
    };
    toml::from_str(&effective).map_err(|err| CliError::Config(format!("{}: {err}", path.display())))
}

fn apply_override(table: &mut toml::Table, item: &str) -> Result<(), CliError> {
    let (path, raw_value) = item.split_once('=').ok_or_else(|| {
        CliError::Config(format!("--set expects KEY=VALUE, got '{item}'"))
    })?;
    let value = parse_toml_value(raw_value.trim());
    let segments: Vec<&str> = path.trim().split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(CliError::Config(format!("--set key '{path}' is malformed")));
    }
    let mut current = table;
    for segment in &segments[..segments.len() - 1] {
        current = current
            .entry(segment.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| {
                CliError::Config(format!(
                    "--set key '{path}': '{segment}' is not a table in the config"
                ))
            })?;
    }
    current.insert(segments[segments.len() - 1].to_string(), value);
    Ok(())
}

/// Parse an override value with TOML literal syntax, falling back to a
/// string for bare words.
fn parse_toml_value(raw: &str) -> toml::Value {
    let wrapped = format!("v = {raw}");
    match wrapped.parse::<toml::Table>() {
        Ok(mut table) => table.remove("v").unwrap(),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}
