//! Declarative parameter sweeps and the altitude threshold solver.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::SimConfig;
use crate::energy::Scenario;
use crate::errors::{ExperimentError, RunError};
use crate::monte_carlo::{run_scenario, ScenarioResult, TrialPlan};

/// One sweep axis: a config key and the grid values it takes.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Axis {
    pub key: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(key: &str, values: Vec<f64>) -> Self {
        Axis { key: key.into(), values }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.values.is_empty() {
            return Err(ExperimentError::BadAxis(alloc::format!("axis `{}` has no values", self.key)));
        }
        let increasing = self.values.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.values.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(ExperimentError::BadAxis(alloc::format!(
                "axis `{}` values must be strictly monotone",
                self.key
            )));
        }
        Ok(())
    }
}

/// A full-factorial grid over one or two parameters, evaluated for each
/// requested scenario.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepSpec {
    pub base: SimConfig,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub scenarios: Vec<Scenario>,
    pub n_trials: u64,
    pub base_seed: u64,
}

/// One evaluated grid cell.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepCell {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub scenario: Scenario,
    pub result: ScenarioResult,
}

/// Evaluated sweep: one record per (axis1, axis2, scenario) combination, in
/// axis1-major, axis2-minor, scenario-innermost order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    pub n_trials: u64,
    pub base_seed: u64,
}

impl SweepResult {
    /// The cells of one scenario, in grid order.
    pub fn scenario_cells(&self, scenario: Scenario) -> Vec<&SweepCell> {
        self.cells.iter().filter(|c| c.scenario == scenario).collect()
    }
}

/// Runs a sweep with a caller-supplied scenario runner (the hook parallel
/// front ends and tests use).
pub fn sweep_with<F>(spec: &SweepSpec, mut runner: F) -> Result<SweepResult, ExperimentError>
where
    F: FnMut(&TrialPlan) -> Result<ScenarioResult, RunError>,
{
    spec.axis1.validate()?;
    if let Some(a2) = &spec.axis2 {
        a2.validate()?;
    }
    if spec.scenarios.is_empty() {
        return Err(ExperimentError::BadAxis("no scenarios requested".into()));
    }
    let axis2_values: Vec<Option<f64>> = match &spec.axis2 {
        Some(a2) => a2.values.iter().map(|v| Some(*v)).collect(),
        None => vec![None],
    };
    let mut cells = Vec::new();
    for &v1 in &spec.axis1.values {
        for &v2 in &axis2_values {
            let mut config = spec.base.clone();
            config.apply_numeric(&spec.axis1.key, v1)?;
            if let (Some(a2), Some(v)) = (&spec.axis2, v2) {
                config.apply_numeric(&a2.key, v)?;
            }
            config.validate()?;
            for &scenario in &spec.scenarios {
                let plan = TrialPlan {
                    config: config.clone(),
                    scenario,
                    n_trials: spec.n_trials,
                    base_seed: spec.base_seed,
                };
                let result = runner(&plan)?;
                cells.push(SweepCell { axis1: v1, axis2: v2, scenario, result });
            }
        }
    }
    Ok(SweepResult { cells, n_trials: spec.n_trials, base_seed: spec.base_seed })
}

/// Runs a sweep on the sequential engine.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult, ExperimentError> {
    sweep_with(spec, run_scenario)
}

/// Result of the altitude solve.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AltitudeSolution {
    /// Altitude whose mean efficiency meets the threshold, meters.
    pub altitude: f64,
    /// Mean EE measured at the low end of the interval.
    pub ee_low_alt: f64,
    /// Mean EE measured at the high end of the interval.
    pub ee_high_alt: f64,
    pub iterations: u32,
}

/// Finds the highest altitude at which the scenario still meets an energy
/// efficiency threshold, by bisection over a range where EE decreases with
/// altitude.
///
/// Every altitude evaluation reuses the same seed set (common random
/// numbers), so the objective is deterministic and Monte Carlo noise cannot
/// break the bracket.
pub fn solve_altitude_with<F>(
    config: &SimConfig,
    scenario: Scenario,
    ee_threshold: f64,
    h_range: (f64, f64),
    tol_m: f64,
    n_trials: u64,
    base_seed: u64,
    mut runner: F,
) -> Result<AltitudeSolution, ExperimentError>
where
    F: FnMut(&TrialPlan) -> Result<ScenarioResult, RunError>,
{
    let (mut lo, mut hi) = h_range;
    assert!(lo < hi, "h_range must be (low, high)");
    assert!(tol_m > 0.0);

    let mut eval = |h: f64| -> Result<f64, ExperimentError> {
        let mut c = config.clone();
        c.uav_altitude = h;
        let plan = TrialPlan { config: c, scenario, n_trials, base_seed };
        Ok(runner(&plan)?.mean_ee_total)
    };

    let ee_low_alt = eval(lo)?;
    let ee_high_alt = eval(hi)?;
    if !(ee_low_alt >= ee_threshold && ee_threshold >= ee_high_alt) {
        return Err(ExperimentError::NoBracket { ee_low_alt, ee_high_alt, threshold: ee_threshold });
    }

    let mut iterations = 0;
    while hi - lo > 2.0 * tol_m && iterations < 128 {
        let mid = 0.5 * (lo + hi);
        let ee_mid = eval(mid)?;
        if ee_mid >= ee_threshold {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(AltitudeSolution { altitude: 0.5 * (lo + hi), ee_low_alt, ee_high_alt, iterations })
}

/// Altitude solve on the sequential engine.
pub fn solve_altitude(
    config: &SimConfig,
    scenario: Scenario,
    ee_threshold: f64,
    h_range: (f64, f64),
    tol_m: f64,
    n_trials: u64,
    base_seed: u64,
) -> Result<AltitudeSolution, ExperimentError> {
    solve_altitude_with(config, scenario, ee_threshold, h_range, tol_m, n_trials, base_seed, run_scenario)
}

/// The bundled studies. Each returns a ready sweep over the reference
/// parameters; the matching `.sweep` files under `configs/` express the same
/// grids for the command line.
pub mod presets {
    use super::*;

    fn both() -> Vec<Scenario> {
        vec![Scenario::Free, Scenario::EhEnabled]
    }

    fn grid(from: f64, to: f64, n: usize) -> Vec<f64> {
        let step = (to - from) / (n - 1) as f64;
        (0..n).map(|i| from + step * i as f64).collect()
    }

    /// Network EE as the D2D pair density grows, both scenarios.
    pub fn d2d_density(base: &SimConfig) -> SweepSpec {
        SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_d2d", grid(1e-4, 1e-3, 10)),
            axis2: None,
            scenarios: both(),
            n_trials: 500,
            base_seed: base.seed,
        }
    }

    /// Network EE against cellular density at two flight altitudes.
    pub fn cellular_density_altitude(base: &SimConfig) -> SweepSpec {
        SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_c", grid(3e-4, 1e-3, 4)),
            axis2: Some(Axis::new("uav_altitude", vec![500.0, 700.0])),
            scenarios: both(),
            n_trials: 400,
            base_seed: base.seed,
        }
    }

    /// Network EE against the cellular energy-transfer time, at several
    /// energy-link distances.
    pub fn harvest_time(base: &SimConfig) -> SweepSpec {
        SweepSpec {
            base: base.clone(),
            axis1: Axis::new("t_eh", grid(0.01, 0.1, 10)),
            axis2: Some(Axis::new("l_min_override", vec![2.5, 5.0, 10.0])),
            scenarios: both(),
            n_trials: 300,
            base_seed: base.seed,
        }
    }

    /// Mean uplink rate as the D2D density grows, both scenarios.
    pub fn uplink_rate_vs_d2d_density(base: &SimConfig) -> SweepSpec {
        SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_d2d", grid(1e-4, 1e-3, 5)),
            axis2: None,
            scenarios: both(),
            n_trials: 400,
            base_seed: base.seed,
        }
    }

    /// Mean D2D rate as the cellular density grows, harvesting scenario with
    /// measured nearest-source distances. The sparse range is where adding
    /// cellular users mostly feeds previously starved pairs instead of just
    /// raising the interference floor.
    pub fn d2d_rate_vs_cellular_density(base: &SimConfig) -> SweepSpec {
        let mut cfg = base.clone();
        cfg.l_min_override = None;
        SweepSpec {
            base: cfg,
            axis1: Axis::new("lambda_c", vec![2e-5, 5e-5, 1e-4]),
            axis2: None,
            scenarios: vec![Scenario::EhEnabled],
            n_trials: 400,
            base_seed: base.seed,
        }
    }

    /// Base config for the altitude study: a denser cellular population, so
    /// the energy denominator, not the added D2D rate, rules the density
    /// response. Solve over `h_range` [700, 1500] m where EE is decreasing.
    pub fn altitude_study_base(base: &SimConfig) -> SimConfig {
        let mut cfg = base.clone();
        cfg.lambda_c = 6e-4;
        cfg
    }

    /// D2D densities the altitude study walks over.
    pub fn altitude_study_densities() -> Vec<f64> {
        vec![2e-4, 5e-4, 8e-4]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::errors::ExperimentError;

    fn small_base() -> SimConfig {
        let mut c = SimConfig::default();
        c.lambda_c = 5e-5;
        c.lambda_d2d = 5e-5;
        c.region_radius = 500.0;
        c.interference_radius = 500.0;
        c
    }

    #[test]
    fn single_point_sweep_equals_run_scenario() {
        let base = small_base();
        let spec = SweepSpec {
            base: base.clone(),
            axis1: Axis::new("uav_altitude", vec![700.0]),
            axis2: None,
            scenarios: vec![Scenario::Free],
            n_trials: 10,
            base_seed: base.seed,
        };
        let result = sweep(&spec).unwrap();
        assert_eq!(result.cells.len(), 1);
        let direct = run_scenario(&TrialPlan {
            config: base,
            scenario: Scenario::Free,
            n_trials: 10,
            base_seed: spec.base_seed,
        })
        .unwrap();
        assert_eq!(result.cells[0].result, direct);
    }

    #[test]
    fn grid_cardinality_and_order() {
        let base = small_base();
        let spec = SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_d2d", vec![4e-5, 8e-5]),
            axis2: Some(Axis::new("uav_altitude", vec![500.0, 700.0, 900.0])),
            scenarios: vec![Scenario::Free, Scenario::EhEnabled],
            n_trials: 4,
            base_seed: 7,
        };
        let result = sweep(&spec).unwrap();
        assert_eq!(result.cells.len(), 12);
        assert_eq!(result.cells[0].axis1, 4e-5);
        assert_eq!(result.cells[0].axis2, Some(500.0));
        assert_eq!(result.cells[0].scenario, Scenario::Free);
        assert_eq!(result.cells[1].scenario, Scenario::EhEnabled);
        assert_eq!(result.cells[11].axis1, 8e-5);
        assert_eq!(result.cells[11].axis2, Some(900.0));
    }

    #[test]
    fn sweep_rejects_unknown_or_unordered_axes() {
        let base = small_base();
        let mut spec = SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_quux", vec![1.0, 2.0]),
            axis2: None,
            scenarios: vec![Scenario::Free],
            n_trials: 2,
            base_seed: 1,
        };
        assert!(matches!(sweep(&spec), Err(ExperimentError::Key(_))));
        spec.axis1 = Axis::new("lambda_d2d", vec![2e-5, 2e-5]);
        assert!(matches!(sweep(&spec), Err(ExperimentError::BadAxis(_))));
    }

    #[test]
    fn sweep_is_reproducible() {
        let base = small_base();
        let spec = SweepSpec {
            base: base.clone(),
            axis1: Axis::new("lambda_d2d", vec![4e-5, 8e-5]),
            axis2: None,
            scenarios: vec![Scenario::EhEnabled],
            n_trials: 8,
            base_seed: 3,
        };
        assert_eq!(sweep(&spec).unwrap(), sweep(&spec).unwrap());
    }

    #[test]
    fn solver_recovers_synthetic_root() {
        // EE(h) = c / h, threshold c / 500 => root at exactly 500 m
        let c = 1e12;
        let base = small_base();
        let sol = solve_altitude_with(
            &base,
            Scenario::Free,
            c / 500.0,
            (100.0, 2000.0),
            1.0,
            1,
            0,
            |plan| {
                Ok(ScenarioResult {
                    mean_ee_total: c / plan.config.uav_altitude,
                    std_ee_total: 0.0,
                    ci95_half_width: 0.0,
                    mean_rate_uplink: 0.0,
                    mean_rate_d2d: 0.0,
                    n_trials_effective: 1,
                    n_trials: 1,
                })
            },
        )
        .unwrap();
        assert!((sol.altitude - 500.0).abs() <= 1.0, "got {}", sol.altitude);
    }

    #[test]
    fn solver_reports_missing_bracket() {
        let base = small_base();
        let err = solve_altitude_with(
            &base,
            Scenario::Free,
            10.0, // threshold above EE(low)
            (100.0, 2000.0),
            1.0,
            1,
            0,
            |plan| {
                Ok(ScenarioResult {
                    mean_ee_total: 1.0 / plan.config.uav_altitude,
                    std_ee_total: 0.0,
                    ci95_half_width: 0.0,
                    mean_rate_uplink: 0.0,
                    mean_rate_d2d: 0.0,
                    n_trials_effective: 1,
                    n_trials: 1,
                })
            },
        )
        .unwrap_err();
        match err {
            ExperimentError::NoBracket { ee_low_alt, ee_high_alt, threshold } => {
                assert_eq!(threshold, 10.0);
                assert!(ee_low_alt > ee_high_alt);
            }
            other => panic!("expected NoBracket, got {other:?}"),
        }
    }
}
