//! Self-describing result records and bit-stable CSV/JSON rendering.
//!
//! Every record echoes the full parsed configuration, so a result file can
//! be traced back to (and re-run from) its exact inputs. Numeric formatting
//! uses the shortest round-trip decimal representation and LF line endings;
//! regression tests compare output files byte for byte.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use qlink_core::design::SweepRow;
use qlink_core::langevin::{ConvergenceRow, GridCheck};
use qlink_core::scenario::LinkBudget;

use crate::config::ScenarioConfig;
use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Fixed column order of sweep tables.
pub const SWEEP_CSV_HEADER: &str = "var,Ms,Mn,snr_db,eta,Ns,Nn,status";

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub attenuation_model: String,
    pub conductivity_model: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub provenance: Provenance,
}

impl ResultRecord {
    pub fn new(
        command: &'static str,
        config: &ScenarioConfig,
        outputs: Value,
        seed: Option<u64>,
    ) -> Result<Self, CliError> {
        let inputs = serde_json::to_value(config)
            .map_err(|err| CliError::Io(format!("cannot encode inputs: {err}")))?;
        Ok(ResultRecord {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            outputs,
            provenance: Provenance {
                attenuation_model: config.attenuation_model.name().to_string(),
                conductivity_model: config.waveguide.wall.describe(),
                seed,
            },
        })
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|err| CliError::Io(format!("cannot encode record: {err}")))?;
        text.push('\n');
        Ok(text)
    }
}

/// Shortest round-trip decimal; infinities render as `inf` / `-inf`.
pub fn fmt_f64(value: f64) -> String {
    if value == f64::INFINITY {
        "inf".to_string()
    } else if value == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{value}")
    }
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map(fmt_f64).unwrap_or_default()
}

/// JSON value for a possibly non-finite float: numbers stay numbers,
/// infinities become the strings `"inf"` / `"-inf"`.
pub fn json_f64(value: f64) -> Value {
    if value.is_finite() {
        json!(value)
    } else {
        Value::String(fmt_f64(value))
    }
}

fn json_opt(value: Option<f64>) -> Value {
    value.map(json_f64).unwrap_or(Value::Null)
}

pub fn sweep_rows_csv(rows: &[SweepRow]) -> String {
    let mut text = String::from(SWEEP_CSV_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(row.var),
            fmt_opt(row.ms),
            fmt_opt(row.mn),
            fmt_opt(row.snr_db),
            fmt_opt(row.eta),
            fmt_opt(row.ns),
            fmt_opt(row.nn),
            row.status,
        ));
    }
    text
}

pub fn sweep_rows_json(rows: &[SweepRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                json!({
                    "var": json_f64(row.var),
                    "ms": json_opt(row.ms),
                    "mn": json_opt(row.mn),
                    "snr_db": json_opt(row.snr_db),
                    "eta": json_opt(row.eta),
                    "ns": json_opt(row.ns),
                    "nn": json_opt(row.nn),
                    "status": row.status,
                })
            })
            .collect(),
    )
}

pub const GRID_CSV_HEADER: &str = "integrator,gamma_t,n_th,initial_photons,n_trajectories,n_steps,mc_mean,analytic,std_error,bias_bound,z,status";

pub fn grid_rows_csv(rows: &[GridCheck]) -> String {
    let mut text = String::from(GRID_CSV_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.integrator.name(),
            fmt_f64(row.gamma_t),
            fmt_f64(row.n_th),
            fmt_f64(row.initial_photons),
            row.n_trajectories,
            row.n_steps,
            fmt_f64(row.mc_mean),
            fmt_f64(row.analytic),
            fmt_f64(row.std_error),
            fmt_f64(row.bias_bound),
            fmt_f64(row.z),
            if row.pass { "pass" } else { "fail" },
        ));
    }
    text
}

pub const CONVERGENCE_CSV_HEADER: &str = "n_trajectories,mc_mean,analytic,abs_error,std_error";

pub fn convergence_rows_csv(rows: &[ConvergenceRow]) -> String {
    let mut text = String::from(CONVERGENCE_CSV_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n_trajectories,
            fmt_f64(row.mc_mean),
            fmt_f64(row.analytic),
            fmt_f64(row.abs_error),
            fmt_f64(row.std_error),
        ));
    }
    text
}

/// Flat JSON view of the computed chain, intermediates included.
pub fn budget_outputs(budget: &LinkBudget) -> Value {
    let mut outputs = json!({
        "omega_c": json_f64(budget.mode.omega_c),
        "eps_eff": json_f64(budget.mode.eps_eff),
        "r_s": json_f64(budget.mode.r_s),
        "alpha": json_f64(budget.mode.alpha),
        "v_g": json_f64(budget.mode.v_g),
        "gamma": json_f64(budget.mode.gamma),
        "propagation_time": json_f64(budget.transport.propagation_time),
        "gamma_t": json_f64(budget.transport.gamma_t),
        "n_th": json_f64(budget.transport.n_th),
        "ms": json_f64(budget.transport.ms),
        "mn": json_f64(budget.transport.mn),
        "snr_db": json_f64(budget.transport.snr_db),
    });
    if let Some(detection) = &budget.detection {
        let map = outputs.as_object_mut().unwrap();
        map.insert("eta".to_string(), json_f64(detection.eta));
        map.insert("ns".to_string(), json_f64(detection.ns));
        map.insert("nn".to_string(), json_f64(detection.nn));
        map.insert("inductance".to_string(), json_f64(detection.inductance));
    }
    outputs
}

/// Columns of the one-row link-budget CSV.
pub const BUDGET_CSV_HEADER: &str =
    "alpha,v_g,gamma,propagation_time,gamma_t,n_th,Ms,Mn,snr_db,eta,Ns,Nn,inductance";

pub fn budget_csv(budget: &LinkBudget) -> String {
    let detection = budget.detection.as_ref();
    format!(
        "{}\n{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        BUDGET_CSV_HEADER,
        fmt_f64(budget.mode.alpha),
        fmt_f64(budget.mode.v_g),
        fmt_f64(budget.mode.gamma),
        fmt_f64(budget.transport.propagation_time),
        fmt_f64(budget.transport.gamma_t),
        fmt_f64(budget.transport.n_th),
        fmt_f64(budget.transport.ms),
        fmt_f64(budget.transport.mn),
        fmt_f64(budget.transport.snr_db),
        fmt_opt(detection.map(|d| d.eta)),
        fmt_opt(detection.map(|d| d.ns)),
        fmt_opt(detection.map(|d| d.nn)),
        fmt_opt(detection.map(|d| d.inductance)),
    )
}

/// Write `text` to the path, or to stdout when no path is configured.
pub fn emit(text: &str, path: Option<&str>) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(Path::new(path), text)
            .map_err(|err| CliError::Io(format!("cannot write {path}: {err}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|err| CliError::Io(format!("cannot write to stdout: {err}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for value in [0.0, 1.5, 6.3e-3, 2.99792458e9, 1.1969735863524162e-4] {
            let text = fmt_f64(value);
            assert_eq!(text.parse::<f64>().unwrap(), value);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn sweep_csv_schema_is_fixed() {
        let rows = vec![SweepRow {
            var: 0.0,
            ms: Some(3.2e5),
            mn: Some(0.0),
            snr_db: Some(f64::INFINITY),
            eta: None,
            ns: None,
            nn: None,
            status: "ok",
        }];
        let text = sweep_rows_csv(&rows);
        assert_eq!(
            text,
            "var,Ms,Mn,snr_db,eta,Ns,Nn,status\n0,320000,0,inf,,,,ok\n"
        );
    }

    #[test]
    fn non_finite_json_values_become_strings() {
        assert_eq!(json_f64(1.25), json!(1.25));
        assert_eq!(json_f64(f64::INFINITY), json!("inf"));
        assert_eq!(json_f64(f64::NEG_INFINITY), json!("-inf"));
    }
}
