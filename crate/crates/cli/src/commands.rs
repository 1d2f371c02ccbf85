//! The four subcommands: link-budget, sweep, design-antenna, mc-verify.

use num_complex::Complex64;
use serde_json::json;

use qlink_core::design::{
    max_length_under_cooling, run_sweep, solve_antenna_width, AntennaDesign, DesignConstraint,
};
use qlink_core::langevin::{convergence_report, verify_grid, McConfig};
use qlink_core::link::propagate;
use qlink_core::receiver::ETA_PERTURBATIVE_WARN_THRESHOLD;
use qlink_core::scenario::LinkBudget;
use qlink_core::waveguide::ModeParams;
use qlink_core::Error;

use crate::config::{DesignMode, OutputFormat, ScenarioConfig};
use crate::record::{
    budget_csv, budget_outputs, convergence_rows_csv, emit, fmt_f64, grid_rows_csv, json_f64,
    sweep_rows_csv, sweep_rows_json, ResultRecord,
};
use crate::CliError;

fn print_budget_summary(budget: &LinkBudget) {
    println!("alpha = {} Np/m", fmt_f64(budget.mode.alpha));
    println!("v_g = {} m/s", fmt_f64(budget.mode.v_g));
    println!("gamma = {} 1/s", fmt_f64(budget.mode.gamma));
    println!("propagation_time = {} s", fmt_f64(budget.transport.propagation_time));
    println!("gamma_t = {}", fmt_f64(budget.transport.gamma_t));
    println!("n_th = {}", fmt_f64(budget.transport.n_th));
    println!("Ms = {}", fmt_f64(budget.transport.ms));
    println!("Mn = {}", fmt_f64(budget.transport.mn));
    println!("snr_db = {}", fmt_f64(budget.transport.snr_db));
    if let Some(detection) = &budget.detection {
        println!("eta = {}", fmt_f64(detection.eta));
        println!("Ns = {}", fmt_f64(detection.ns));
        println!("Nn = {}", fmt_f64(detection.nn));
        println!("inductance = {} H", fmt_f64(detection.inductance));
    }
}

fn warn_if_barely_perturbative(eta: f64) {
    if eta > ETA_PERTURBATIVE_WARN_THRESHOLD {
        eprintln!(
            "warning: eta = {} exceeds {}; the no-back-action model is strained",
            fmt_f64(eta),
            ETA_PERTURBATIVE_WARN_THRESHOLD
        );
    }
}

pub fn link_budget(config: &ScenarioConfig) -> Result<(), CliError> {
    let scenario = config.scenario();
    let budget = scenario.evaluate()?;
    if let Some(detection) = &budget.detection {
        warn_if_barely_perturbative(detection.eta);
    }
    let path = config.output_path();
    let text = match config.output_format(OutputFormat::Json) {
        OutputFormat::Json => {
            ResultRecord::new("link-budget", config, budget_outputs(&budget), None)?.to_json()?
        }
        OutputFormat::Csv => budget_csv(&budget),
    };
    if path.is_some() {
        print_budget_summary(&budget);
    }
    emit(&text, path)
}

pub fn sweep(config: &ScenarioConfig) -> Result<(), CliError> {
    let sweep_spec = config.sweep_spec()?;
    let rows = run_sweep(&sweep_spec)?;
    let path = config.output_path();
    let text = match config.output_format(OutputFormat::Csv) {
        OutputFormat::Csv => sweep_rows_csv(&rows),
        OutputFormat::Json => {
            let outputs = json!({
                "variable": sweep_spec.variable.name(),
                "rows": sweep_rows_json(&rows),
            });
            ResultRecord::new("sweep", config, outputs, None)?.to_json()?
        }
    };
    emit(&text, path)?;
    if let Some(path) = path {
        let errors = rows.iter().filter(|r| r.status != "ok").count();
        println!(
            "sweep: {} points ({} error rows) -> {}",
            rows.len(),
            errors,
            path
        );
    }
    Ok(())
}

fn design_outputs(design: &AntennaDesign) -> serde_json::Value {
    json!({
        "mode": "antenna_width",
        "width_wr": json_f64(design.width_wr),
        "height_hr": json_f64(design.height_hr),
        "eta": json_f64(design.eta),
        "ns": json_f64(design.ns),
        "nn": json_f64(design.nn),
        "required_input_photons": json_f64(design.required_input_photons),
        "binding": design.binding.name(),
    })
}

pub fn design_antenna(config: &ScenarioConfig) -> Result<(), CliError> {
    let section = config.design.ok_or_else(|| {
        CliError::Config("a [design] section is required for this command".to_string())
    })?;
    let constraint = DesignConstraint {
        max_noise_photons: section.max_noise_photons.unwrap_or(f64::INFINITY),
        min_signal_photons: section.min_signal_photons,
        max_input_photons: section.max_input_photons.unwrap_or(f64::INFINITY),
    };
    let scenario = config.scenario();
    let path = config.output_path();
    if config.output_format(OutputFormat::Json) != OutputFormat::Json {
        return Err(CliError::Config(
            "design-antenna emits a JSON record; set output.format = \"json\"".to_string(),
        ));
    }

    let solved = match section.mode {
        DesignMode::AntennaWidth => solve_antenna_width(&constraint, &scenario, section.h_ratio)
            .map(|design| {
                let outputs = design_outputs(&design);
                (outputs, Some(design))
            }),
        DesignMode::MaxLength => {
            let temperature = section.cooled_temperature.ok_or_else(|| {
                CliError::Config(
                    "design.cooled_temperature is required for mode = \"max_length\"".to_string(),
                )
            })?;
            max_length_under_cooling(&scenario, &constraint, temperature, section.h_ratio).map(
                |length| {
                    let outputs = json!({
                        "mode": "max_length",
                        "max_length": json_f64(length),
                        "waveguide_temperature": json_f64(temperature),
                        "h_ratio": json_f64(section.h_ratio),
                    });
                    (outputs, None)
                },
            )
        }
    };

    match solved {
        Ok((outputs, design)) => {
            let text = ResultRecord::new("design-antenna", config, outputs.clone(), None)?
                .to_json()?;
            if path.is_some() {
                for (key, value) in outputs.as_object().unwrap() {
                    match value {
                        serde_json::Value::String(s) => println!("{key} = {s}"),
                        other => println!("{key} = {other}"),
                    }
                }
            }
            if let Some(design) = design {
                warn_if_barely_perturbative(design.eta);
            }
            emit(&text, path)
        }
        Err(Error::Infeasible(reason)) => {
            let outputs = json!({ "status": "infeasible", "reason": reason });
            let text = ResultRecord::new("design-antenna", config, outputs, None)?.to_json()?;
            emit(&text, path)?;
            Err(CliError::Infeasible(reason))
        }
        Err(other) => Err(other.into()),
    }
}

/// The scenario-level ensemble configuration: physically derived defaults
/// with any [mc] overrides applied.
fn scenario_mc_config(config: &ScenarioConfig) -> Result<McConfig, CliError> {
    let scenario = config.scenario();
    scenario.validate().map_err(CliError::from)?;
    let omega = scenario.signal.omega();
    let mode = ModeParams::compute(&scenario.waveguide, omega, scenario.attenuation_model)?;
    let transport = propagate(&scenario.signal, &scenario.waveguide, scenario.attenuation_model)?;
    let mc = config.mc.clone().unwrap_or_default();
    let initial_photons = mc.initial_photons.unwrap_or(scenario.signal.input_photons);
    let cfg = McConfig {
        gamma: mc.gamma.unwrap_or(mode.gamma),
        total_time: mc.total_time.unwrap_or(transport.propagation_time),
        n_th: mc.n_th.unwrap_or(transport.n_th),
        initial_amplitude: Complex64::new(initial_photons.sqrt(), 0.0),
        n_trajectories: mc.n_trajectories,
        n_steps: mc.n_steps,
        seed: mc.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn mc_verify(config: &ScenarioConfig) -> Result<(), CliError> {
    let scenario_cfg = scenario_mc_config(config)?;
    let mc = config.mc.clone().unwrap_or_default();
    let verification = verify_grid(mc.seed, mc.n_trajectories)?;

    let path = config.output_path();
    let format = config.output_format(OutputFormat::Csv);
    let text = match &mc.convergence_schedule {
        Some(schedule) => {
            let rows = convergence_report(&scenario_cfg, schedule)?;
            match format {
                OutputFormat::Csv => convergence_rows_csv(&rows),
                OutputFormat::Json => {
                    let outputs = json!({
                        "convergence": serde_json::to_value(&rows)
                            .map_err(|err| CliError::Io(err.to_string()))?,
                        "worst_z": json_f64(verification.worst_z),
                        "all_pass": verification.all_pass,
                    });
                    ResultRecord::new("mc-verify", config, outputs, Some(mc.seed))?.to_json()?
                }
            }
        }
        None => match format {
            OutputFormat::Csv => grid_rows_csv(&verification.rows),
            OutputFormat::Json => {
                let rows: Vec<serde_json::Value> = verification
                    .rows
                    .iter()
                    .map(|row| {
                        json!({
                            "integrator": row.integrator.name(),
                            "gamma_t": json_f64(row.gamma_t),
                            "n_th": json_f64(row.n_th),
                            "initial_photons": json_f64(row.initial_photons),
                            "n_trajectories": row.n_trajectories,
                            "n_steps": row.n_steps,
                            "mc_mean": json_f64(row.mc_mean),
                            "analytic": json_f64(row.analytic),
                            "std_error": json_f64(row.std_error),
                            "bias_bound": json_f64(row.bias_bound),
                            "z": json_f64(row.z),
                            "pass": row.pass,
                        })
                    })
                    .collect();
                let outputs = json!({
                    "rows": rows,
                    "worst_z": json_f64(verification.worst_z),
                    "mutual_pass": verification.mutual_pass,
                    "all_pass": verification.all_pass,
                });
                ResultRecord::new("mc-verify", config, outputs, Some(mc.seed))?.to_json()?
            }
        },
    };
    emit(&text, path)?;

    println!(
        "mc-verify: {} grid rows, worst |mc - analytic|/std_error = {}, integrator cross-check {}",
        verification.rows.len(),
        fmt_f64(verification.worst_z),
        if verification.mutual_pass { "pass" } else { "fail" },
    );
    if verification.all_pass {
        println!("mc-verify: PASS (all rows within 3 sigma)");
        Ok(())
    } else {
        println!("mc-verify: FAIL");
        Err(CliError::Verification(format!(
            "the ensemble disagrees with the transport law: worst z = {}",
            fmt_f64(verification.worst_z)
        )))
    }
}
