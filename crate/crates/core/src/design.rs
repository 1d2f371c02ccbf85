//! Parameter sweeps over the transport/detection chain and inverse-design
//! solvers: antenna width for a noise budget, required input photons, and
//! maximum link length under a cooling scenario.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::propagate;
use crate::receiver::{coupling_eta, AntennaSpec};
use crate::scenario::Scenario;

/// Fixed bisection budget; 64 halvings exhaust f64 resolution.
const BISECTION_MAX_ITERATIONS: u32 = 64;
/// Relative interval width at which bisection stops early.
const BISECTION_REL_TOLERANCE: f64 = 1e-12;
/// Relative slack granted when checking constraint satisfaction, covering
/// the bisection resolution.
const FEASIBILITY_REL_SLACK: f64 = 1e-9;
/// Lengths beyond this are treated as unbounded in the max-length search (m).
const MAX_LENGTH_BRACKET_CAP: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    #[default]
    Length,
    Frequency,
    AntennaWidth,
    Temperature,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Length => "length",
            SweepVariable::Frequency => "frequency",
            SweepVariable::AntennaWidth => "antenna_width",
            SweepVariable::Temperature => "temperature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// One sweep: a variable, its grid, and the fixed remainder of the scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    /// Antenna aspect ratio `h_r / W_r` used by antenna-width sweeps.
    pub antenna_h_ratio: f64,
    pub fixed: Scenario,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.fixed.validate()?;
        if !(self.start < self.stop) {
            return Err(Error::InvalidConfig(format!(
                "sweep start ({}) must be below stop ({})",
                self.start, self.stop
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidConfig(format!(
                "sweep needs at least 2 points, got {}",
                self.n_points
            )));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return Err(Error::InvalidConfig(
                "log spacing requires a positive start".to_string(),
            ));
        }
        if self.variable == SweepVariable::AntennaWidth {
            if !(self.antenna_h_ratio > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "antenna_h_ratio must be positive, got {}",
                    self.antenna_h_ratio
                )));
            }
            self.fixed.antenna()?;
        }
        Ok(())
    }

    /// Grid points, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.start
                } else if i == n - 1 {
                    self.stop
                } else {
                    let fraction = i as f64 / (n - 1) as f64;
                    match self.spacing {
                        Spacing::Linear => self.start + fraction * (self.stop - self.start),
                        Spacing::Log => {
                            (self.start.ln() + fraction * (self.stop.ln() - self.start.ln())).exp()
                        }
                    }
                }
            })
            .collect()
    }

    fn scenario_at(&self, value: f64) -> Scenario {
        let mut scenario = self.fixed.clone();
        match self.variable {
            SweepVariable::Length => scenario.waveguide.length_l = value,
            SweepVariable::Frequency => scenario.signal.frequency = value,
            SweepVariable::Temperature => scenario.waveguide.temperature = value,
            SweepVariable::AntennaWidth => {
                if let Some(antenna) = scenario.antenna.as_mut() {
                    antenna.width_wr = value;
                    antenna.height_hr = self.antenna_h_ratio * value;
                }
            }
        }
        scenario
    }
}

/// One row of a sweep table. Stages that could not be evaluated stay `None`
/// and `status` carries the machine-readable reason; `"ok"` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub var: f64,
    pub ms: Option<f64>,
    pub mn: Option<f64>,
    pub snr_db: Option<f64>,
    pub eta: Option<f64>,
    pub ns: Option<f64>,
    pub nn: Option<f64>,
    pub status: &'static str,
}

fn evaluate_row(sweep: &SweepSpec, value: f64) -> SweepRow {
    let mut row = SweepRow {
        var: value,
        ms: None,
        mn: None,
        snr_db: None,
        eta: None,
        ns: None,
        nn: None,
        status: "ok",
    };
    let scenario = sweep.scenario_at(value);
    if let Err(err) = scenario.validate() {
        row.status = err.status_code();
        return row;
    }
    let transport = match propagate(
        &scenario.signal,
        &scenario.waveguide,
        scenario.attenuation_model,
    ) {
        Ok(t) => t,
        Err(err) => {
            row.status = err.status_code();
            return row;
        }
    };
    row.ms = Some(transport.ms);
    row.mn = Some(transport.mn);
    row.snr_db = Some(transport.snr_db);
    if let Some(antenna) = &scenario.antenna {
        match crate::receiver::detect(
            &transport,
            antenna,
            &scenario.waveguide,
            scenario.signal.omega(),
        ) {
            Ok(detection) => {
                row.eta = Some(detection.eta);
                row.ns = Some(detection.ns);
                row.nn = Some(detection.nn);
            }
            Err(err) => row.status = err.status_code(),
        }
    }
    row
}

/// Evaluate the sweep. Points are independent and run in parallel; the rows
/// come back in grid order regardless of scheduling.
pub fn run_sweep(sweep: &SweepSpec) -> Result<Vec<SweepRow>> {
    sweep.validate()?;
    let grid = sweep.grid();
    Ok(grid
        .par_iter()
        .map(|&value| evaluate_row(sweep, value))
        .collect())
}

/// Numeric budgets for the inverse designs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignConstraint {
    /// Largest acceptable number of induced noise photons.
    pub max_noise_photons: f64,
    /// Smallest acceptable number of induced signal photons.
    pub min_signal_photons: f64,
    /// Largest photon number the transmitter can inject.
    pub max_input_photons: f64,
}

impl DesignConstraint {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("max_noise_photons", self.max_noise_photons),
            ("min_signal_photons", self.min_signal_photons),
            ("max_input_photons", self.max_input_photons),
        ] {
            if !(value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Which constraint stopped the antenna from growing further.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingConstraint {
    NoiseBudget,
    Geometry,
    PerturbativeLimit,
}

impl BindingConstraint {
    pub fn name(self) -> &'static str {
        match self {
            BindingConstraint::NoiseBudget => "noise_budget",
            BindingConstraint::Geometry => "geometry",
            BindingConstraint::PerturbativeLimit => "perturbative_limit",
        }
    }
}

/// Result of the antenna-width design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntennaDesign {
    pub width_wr: f64,
    pub height_hr: f64,
    pub eta: f64,
    /// Induced signal photons at the scenario's own input photon number.
    pub ns: f64,
    pub nn: f64,
    /// Input photons needed to reach `min_signal_photons` with this design.
    pub required_input_photons: f64,
    pub binding: BindingConstraint,
}

/// Input photons needed for `target_ns` induced signal photons:
/// `target / (eta * exp(-gamma_t))`.
pub fn required_input_photons(target_ns: f64, eta: f64, gamma_t: f64) -> f64 {
    target_ns / (eta * (-gamma_t).exp())
}

fn antenna_with_width(template: &AntennaSpec, width: f64, h_ratio: f64) -> AntennaSpec {
    AntennaSpec {
        width_wr: width,
        height_hr: h_ratio * width,
        ..*template
    }
}

/// Largest loop width whose induced noise stays within the budget, with
/// `h_r = h_ratio * W_r`, found by bisection against the forward chain.
///
/// Fails with [`Error::Infeasible`] when the signal target cannot be met at
/// the returned coupling within the transmitter budget.
pub fn solve_antenna_width(
    constraint: &DesignConstraint,
    scenario: &Scenario,
    h_ratio: f64,
) -> Result<AntennaDesign> {
    constraint.validate()?;
    scenario.validate()?;
    if !(h_ratio > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "h_ratio must be positive, got {h_ratio}"
        )));
    }
    let template = *scenario.antenna()?;
    let wg = &scenario.waveguide;
    if !(wg.length_l > 0.0) {
        return Err(Error::InvalidConfig(
            "antenna design needs a positive waveguide length".to_string(),
        ));
    }
    let omega = scenario.signal.omega();
    let transport = propagate(&scenario.signal, wg, scenario.attenuation_model)?;

    // eta(w) is strictly increasing, so each cap is a bisection boundary.
    let eta_at = |width: f64| -> Result<f64> {
        match coupling_eta(&antenna_with_width(&template, width, h_ratio), wg, omega) {
            Ok(eta) => Ok(eta),
            Err(Error::EtaOutOfRange { eta }) => Ok(eta),
            Err(other) => Err(other),
        }
    };

    let geometric_max = wg.width_w.min(wg.height_h / h_ratio);
    let mut binding = BindingConstraint::Geometry;
    let mut upper = geometric_max;
    if !(eta_at(upper)? <= 1.0) {
        upper = bisect_boundary(|w| Ok(eta_at(w)? <= 1.0), 0.0, upper)?;
        binding = BindingConstraint::PerturbativeLimit;
    }
    let noise_at = |width: f64| -> Result<f64> { Ok(eta_at(width)? * transport.mn) };
    let width = if noise_at(upper)? <= constraint.max_noise_photons {
        upper
    } else {
        binding = BindingConstraint::NoiseBudget;
        bisect_boundary(
            |w| Ok(noise_at(w)? <= constraint.max_noise_photons),
            0.0,
            upper,
        )?
    };

    let eta = eta_at(width)?;
    let required = required_input_photons(constraint.min_signal_photons, eta, transport.gamma_t);
    if !(required <= constraint.max_input_photons * (1.0 + FEASIBILITY_REL_SLACK)) {
        let transmission = (-transport.gamma_t).exp();
        let unit_coupling_required = constraint.min_signal_photons / transmission;
        let detail = if unit_coupling_required > constraint.max_input_photons {
            "the signal target exceeds the transmitter budget even at unit coupling".to_string()
        } else {
            format!(
                "the noise budget caps eta at {eta:.6e}, which needs {required:.6e} \
                 input photons for {} signal photons (budget {:.6e})",
                constraint.min_signal_photons, constraint.max_input_photons
            )
        };
        return Err(Error::Infeasible(detail));
    }

    Ok(AntennaDesign {
        width_wr: width,
        height_hr: h_ratio * width,
        eta,
        ns: eta * transport.ms,
        nn: eta * transport.mn,
        required_input_photons: required,
        binding,
    })
}

/// Largest waveguide length at which a feasible antenna design still exists,
/// with the waveguide held at `temperature` (outer bisection on the length
/// over [`solve_antenna_width`] feasibility). Returns `+inf` when no finite
/// length within the search cap becomes infeasible.
pub fn max_length_under_cooling(
    scenario: &Scenario,
    constraint: &DesignConstraint,
    temperature: f64,
    h_ratio: f64,
) -> Result<f64> {
    constraint.validate()?;
    let mut cooled = scenario.clone();
    cooled.waveguide.temperature = temperature;
    cooled.validate()?;
    cooled.antenna()?;

    let feasible = |length: f64| -> bool {
        let mut candidate = cooled.clone();
        candidate.waveguide.length_l = length;
        solve_antenna_width(constraint, &candidate, h_ratio).is_ok()
    };

    let mut lo = 1e-6;
    if !feasible(lo) {
        return Err(Error::Infeasible(format!(
            "no feasible antenna design exists even for a {lo} m waveguide at {temperature} K"
        )));
    }
    let mut hi = 1.0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_LENGTH_BRACKET_CAP {
            return Ok(f64::INFINITY);
        }
    }
    bisect_boundary(|l| Ok(feasible(l)), lo, hi)
}

/// Bisection for the boundary of a monotone predicate that holds at `lo` and
/// fails at `hi`; returns the largest value on the holding side.
fn bisect_boundary<F>(mut holds: F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    for _ in 0..BISECTION_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= BISECTION_REL_TOLERANCE * hi.abs() {
            break;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::SignalSpec;
    use crate::waveguide::{AttenuationModel, ConductorModel, WaveguideSpec};
    use approx::assert_relative_eq;

    fn scenario(length_l: f64) -> Scenario {
        Scenario {
            waveguide: WaveguideSpec {
                width_w: 0.05,
                height_h: 0.025,
                length_l,
                rel_permittivity: 1.0,
                rel_permeability: 1.0,
                wall: ConductorModel::aluminium(),
                temperature: 293.15,
            },
            signal: SignalSpec {
                frequency: 1e10,
                input_photons: 3.2e5,
            },
            antenna: Some(AntennaSpec {
                width_wr: 0.005,
                height_hr: 0.0025,
                capacitance: 1e-12,
                rel_permeability: 1.0,
            }),
            attenuation_model: AttenuationModel::Textbook,
        }
    }

    fn calibrated_length() -> f64 {
        let sc = scenario(1.0);
        let alpha = crate::waveguide::attenuation(
            &sc.waveguide,
            sc.signal.omega(),
            AttenuationModel::Textbook,
        )
        .unwrap();
        0.09018420110334449 / alpha
    }

    #[test]
    fn length_sweep_saturates_and_is_monotone() {
        let sweep = SweepSpec {
            variable: SweepVariable::Length,
            start: 0.0,
            stop: 500.0,
            n_points: 101,
            spacing: Spacing::Linear,
            antenna_h_ratio: 0.5,
            fixed: Scenario {
                antenna: None,
                ..scenario(5.0)
            },
        };
        let rows = run_sweep(&sweep).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[0].var, 0.0);
        assert_eq!(rows[0].mn, Some(0.0));
        assert_eq!(rows[0].snr_db, Some(f64::INFINITY));
        let n_th = crate::link::thermal_occupation(1e10, 293.15);
        let mut last_mn = -1.0;
        let mut last_ms = f64::INFINITY;
        for row in &rows {
            assert_eq!(row.status, "ok");
            let mn = row.mn.unwrap();
            let ms = row.ms.unwrap();
            assert!(mn > last_mn || (mn == 0.0 && last_mn < 0.0));
            assert!(ms < last_ms || ms == 3.2e5 && last_ms == f64::INFINITY);
            assert!(mn < n_th);
            last_mn = mn;
            last_ms = ms;
        }
        // saturation by 500 m
        assert!(rows.last().unwrap().mn.unwrap() / n_th >= 0.95);
    }

    #[test]
    fn sweep_rows_match_single_point_evaluation() {
        let sweep = SweepSpec {
            variable: SweepVariable::Length,
            start: 1.0,
            stop: 50.0,
            n_points: 17,
            spacing: Spacing::Linear,
            antenna_h_ratio: 0.5,
            fixed: scenario(5.0),
        };
        let rows = run_sweep(&sweep).unwrap();
        for (value, row) in sweep.grid().into_iter().zip(&rows) {
            let mut point = scenario(value);
            point.antenna = sweep.fixed.antenna;
            let budget = point.evaluate().unwrap();
            assert_eq!(row.ms, Some(budget.transport.ms));
            assert_eq!(row.mn, Some(budget.transport.mn));
            let detection = budget.detection.unwrap();
            assert_eq!(row.eta, Some(detection.eta));
            assert_eq!(row.ns, Some(detection.ns));
            assert_eq!(row.nn, Some(detection.nn));
        }
    }

    #[test]
    fn antenna_width_sweep_scales_with_the_fourth_power() {
        let sweep = SweepSpec {
            variable: SweepVariable::AntennaWidth,
            start: 1e-3,
            stop: 8e-3,
            n_points: 4,
            spacing: Spacing::Log,
            antenna_h_ratio: 0.5,
            fixed: scenario(5.0),
        };
        let rows = run_sweep(&sweep).unwrap();
        assert_eq!(rows.len(), 4);
        let first = &rows[0];
        let last = &rows[3];
        let ratio = (last.var / first.var).powi(4);
        assert_relative_eq!(
            last.ns.unwrap() / first.ns.unwrap(),
            ratio,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            last.nn.unwrap() / first.nn.unwrap(),
            ratio,
            max_relative = 1e-9
        );
        // Ms/Mn do not depend on the antenna
        assert_eq!(first.ms, last.ms);
        assert_eq!(first.mn, last.mn);
    }

    #[test]
    fn frequency_sweep_marks_evanescent_points() {
        let sweep = SweepSpec {
            variable: SweepVariable::Frequency,
            start: 1e9,
            stop: 1.5e10,
            n_points: 15,
            spacing: Spacing::Linear,
            antenna_h_ratio: 0.5,
            fixed: Scenario {
                antenna: None,
                ..scenario(5.0)
            },
        };
        let rows = run_sweep(&sweep).unwrap();
        let cutoff = 2.99792458e9;
        for row in &rows {
            if row.var <= cutoff {
                assert_eq!(row.status, "evanescent");
                assert_eq!(row.ms, None);
            } else {
                assert_eq!(row.status, "ok");
                assert!(row.ms.is_some());
            }
        }
        assert!(rows.iter().any(|r| r.status == "evanescent"));
        assert!(rows.iter().any(|r| r.status == "ok"));
    }

    #[test]
    fn zero_length_point_with_antenna_is_an_error_row() {
        let sweep = SweepSpec {
            variable: SweepVariable::Length,
            start: 0.0,
            stop: 10.0,
            n_points: 3,
            spacing: Spacing::Linear,
            antenna_h_ratio: 0.5,
            fixed: scenario(5.0),
        };
        let rows = run_sweep(&sweep).unwrap();
        assert_eq!(rows[0].status, "eta_out_of_range");
        // the transport stage is still reported
        assert_eq!(rows[0].ms, Some(3.2e5));
        assert_eq!(rows[0].mn, Some(0.0));
        assert_eq!(rows[0].eta, None);
        assert_eq!(rows[1].status, "ok");
    }

    #[test]
    fn grid_spacing_contracts() {
        let sweep = SweepSpec {
            variable: SweepVariable::Length,
            start: 1.0,
            stop: 1000.0,
            n_points: 4,
            spacing: Spacing::Log,
            antenna_h_ratio: 0.5,
            fixed: Scenario {
                antenna: None,
                ..scenario(5.0)
            },
        };
        let grid = sweep.grid();
        assert_eq!(grid[0], 1.0);
        assert_eq!(grid[3], 1000.0);
        assert_relative_eq!(grid[1], 10.0, max_relative = 1e-12);
        assert_relative_eq!(grid[2], 100.0, max_relative = 1e-12);
        let bad = SweepSpec {
            start: 5.0,
            stop: 1.0,
            ..sweep.clone()
        };
        assert!(bad.validate().is_err());
        let bad = SweepSpec {
            start: 0.0,
            spacing: Spacing::Log,
            ..sweep
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn solver_reproduces_the_calibrated_antenna() {
        let sc = scenario(calibrated_length());
        let constraint = DesignConstraint {
            max_noise_photons: 6.3e-3,
            min_signal_photons: 35.0,
            max_input_photons: 3.2e5,
        };
        let design = solve_antenna_width(&constraint, &sc, 0.5).unwrap();
        assert_eq!(design.binding, BindingConstraint::NoiseBudget);
        assert_relative_eq!(design.width_wr, 0.011030868107611173, max_relative = 1e-9);
        assert_relative_eq!(design.eta, 1.1969735863524162e-4, max_relative = 1e-9);
        assert_relative_eq!(design.ns, 35.0, max_relative = 1e-6);
        assert_relative_eq!(design.nn, 6.3e-3, max_relative = 1e-9);
        assert!(design.required_input_photons <= 3.2e5 * (1.0 + 1e-6));
    }

    #[test]
    fn solver_solution_is_tight_against_the_noise_budget() {
        let sc = scenario(calibrated_length());
        let constraint = DesignConstraint {
            max_noise_photons: 6.3e-3,
            min_signal_photons: 1.0,
            max_input_photons: 1e12,
        };
        let design = solve_antenna_width(&constraint, &sc, 0.5).unwrap();
        let transport = propagate(&sc.signal, &sc.waveguide, sc.attenuation_model).unwrap();
        // feasible at the solution (within slack)...
        assert!(design.nn <= constraint.max_noise_photons * (1.0 + 1e-9));
        // ...and violated just above it.
        let bumped = AntennaSpec {
            width_wr: design.width_wr * (1.0 + 1e-6),
            height_hr: 0.5 * design.width_wr * (1.0 + 1e-6),
            ..*sc.antenna.as_ref().unwrap()
        };
        let eta_bumped =
            coupling_eta(&bumped, &sc.waveguide, sc.signal.omega()).unwrap();
        assert!(eta_bumped * transport.mn > constraint.max_noise_photons);
    }

    #[test]
    fn solver_brackets_the_best_grid_point() {
        let sc = scenario(calibrated_length());
        let constraint = DesignConstraint {
            max_noise_photons: 6.3e-3,
            min_signal_photons: 1.0,
            max_input_photons: 1e12,
        };
        let design = solve_antenna_width(&constraint, &sc, 0.5).unwrap();
        let transport = propagate(&sc.signal, &sc.waveguide, sc.attenuation_model).unwrap();
        // brute force over a coarse grid
        let n = 1000;
        let geo_max = sc.waveguide.width_w.min(sc.waveguide.height_h / 0.5);
        let mut best = 0.0f64;
        for i in 0..=n {
            let w = geo_max * i as f64 / n as f64;
            let ant = AntennaSpec {
                width_wr: w,
                height_hr: 0.5 * w,
                ..*sc.antenna.as_ref().unwrap()
            };
            let eta = match coupling_eta(&ant, &sc.waveguide, sc.signal.omega()) {
                Ok(eta) => eta,
                Err(_) => continue,
            };
            if eta * transport.mn <= constraint.max_noise_photons {
                best = best.max(w);
            }
        }
        let step = geo_max / n as f64;
        assert!(design.width_wr >= best);
        assert!(design.width_wr < best + step);
    }

    #[test]
    fn unconstrained_noise_budget_returns_the_geometric_maximum() {
        let sc = scenario(calibrated_length());
        let constraint = DesignConstraint {
            max_noise_photons: f64::INFINITY,
            min_signal_photons: 1.0,
            max_input_photons: 1e12,
        };
        let design = solve_antenna_width(&constraint, &sc, 0.5).unwrap();
        assert_eq!(design.binding, BindingConstraint::Geometry);
        // with h_ratio = h/W the full waveguide width is reachable
        assert_relative_eq!(design.width_wr, 0.05, max_relative = 1e-12);
        assert_relative_eq!(design.height_hr, 0.025, max_relative = 1e-12);
    }

    #[test]
    fn zero_length_scenario_cannot_be_designed() {
        let sc = scenario(0.0);
        let constraint = DesignConstraint {
            max_noise_photons: 6.3e-3,
            min_signal_photons: 1.0,
            max_input_photons: 1e12,
        };
        assert!(matches!(
            solve_antenna_width(&constraint, &sc, 0.5),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn unattainable_signal_target_is_infeasible() {
        let sc = scenario(calibrated_length());
        let constraint = DesignConstraint {
            max_noise_photons: 6.3e-3,
            min_signal_photons: 1e6,
            max_input_photons: 3.2e5,
        };
        assert!(matches!(
            solve_antenna_width(&constraint, &sc, 0.5),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn required_input_photons_round_trip() {
        let required = required_input_photons(35.0, 1.1969735863524162e-4, 0.09018420110334449);
        assert_relative_eq!(required, 3.2e5, max_relative = 1e-9);
        assert_eq!(required_input_photons(35.0, 1.0, 0.0), 35.0);
        assert_relative_eq!(
            required_input_photons(70.0, 1.0e-4, 0.5),
            2.0 * required_input_photons(35.0, 1.0e-4, 0.5),
            max_relative = 1e-15
        );
    }

    #[test]
    fn cooled_waveguide_reaches_at_least_25_m() {
        let sc = scenario(5.0);
        let constraint = DesignConstraint {
            max_noise_photons: 1e-2,
            min_signal_photons: 35.0,
            max_input_photons: 3.2e5,
        };
        let max_len = max_length_under_cooling(&sc, &constraint, 78.0, 0.5).unwrap();
        assert!(max_len >= 25.0, "max length was {max_len}");
        let room = max_length_under_cooling(&sc, &constraint, 293.15, 0.5).unwrap();
        assert!(room >= 5.0, "room-temperature max length was {room}");
        assert!(max_len > room);
    }

    #[test]
    fn cooling_extends_the_feasible_length_monotonically() {
        let sc = scenario(5.0);
        let constraint = DesignConstraint {
            max_noise_photons: 1e-2,
            min_signal_photons: 35.0,
            max_input_photons: 3.2e5,
        };
        let mut last = 0.0;
        for temperature in [293.15, 200.0, 120.0, 78.0] {
            let len = max_length_under_cooling(&sc, &constraint, temperature, 0.5).unwrap();
            assert!(
                len >= last,
                "max length must not shrink on cooling: {len} < {last} at {temperature} K"
            );
            last = len;
        }
    }

    #[test]
    fn relaxed_noise_budget_is_limited_by_the_signal_side() {
        let sc = scenario(5.0);
        let tight = DesignConstraint {
            max_noise_photons: 1e-2,
            min_signal_photons: 35.0,
            max_input_photons: 3.2e5,
        };
        let relaxed = DesignConstraint {
            max_noise_photons: f64::INFINITY,
            ..tight
        };
        let with_noise = max_length_under_cooling(&sc, &tight, 293.15, 0.5).unwrap();
        let without_noise = max_length_under_cooling(&sc, &relaxed, 293.15, 0.5).unwrap();
        assert!(without_noise.is_finite());
        assert!(without_noise >= with_noise);
    }
}
