//! Monte Carlo engine: independent trials and order-stable aggregation.

use crate::config::SimConfig;
use crate::energy::Scenario;
use crate::errors::{MetricsError, RunError};
use crate::geometry::sample_deployment;
use crate::math;
use crate::metrics::evaluate_trial;
use crate::stats::Welford;

/// One scenario run: which config, which power mode, how many trials, and the
/// seed the per-trial streams derive from. `base_seed` is authoritative; the
/// config's own seed field is ignored inside a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialPlan {
    pub config: SimConfig,
    pub scenario: Scenario,
    pub n_trials: u64,
    pub base_seed: u64,
}

impl TrialPlan {
    pub fn new(config: SimConfig, scenario: Scenario, n_trials: u64) -> Self {
        let base_seed = config.seed;
        TrialPlan { config, scenario, n_trials, base_seed }
    }
}

/// Reduced per-trial outcome. `ee_total` is `None` for degenerate trials
/// (no cellular user sampled), which are excluded from statistics rather
/// than counted as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub ee_total: Option<f64>,
    pub mean_rate_uplink: Option<f64>,
    pub mean_rate_d2d: Option<f64>,
}

/// Aggregated scenario statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioResult {
    /// bits/joule
    pub mean_ee_total: f64,
    pub std_ee_total: f64,
    /// `1.96 * std / sqrt(n_trials_effective)`
    pub ci95_half_width: f64,
    /// bits/s, mean over trials of the per-trial mean uplink rate
    pub mean_rate_uplink: f64,
    /// bits/s, mean over trials of the per-trial mean D2D rate
    pub mean_rate_d2d: f64,
    /// Trials with a defined total EE.
    pub n_trials_effective: u64,
    /// Trials attempted.
    pub n_trials: u64,
}

/// Evaluates one trial of a plan. Deterministic in
/// `(plan.config, plan.base_seed, trial)` and independent of evaluation
/// order.
pub fn run_trial(plan: &TrialPlan, trial: u64) -> TrialOutcome {
    let mut config = plan.config.clone();
    config.seed = plan.base_seed;
    let deployment = sample_deployment(&config, trial);
    match evaluate_trial(&config, &deployment, plan.scenario) {
        Ok(metrics) => TrialOutcome {
            ee_total: Some(metrics.total.ee_total),
            mean_rate_uplink: metrics.mean_rate_uplink(),
            mean_rate_d2d: metrics.mean_rate_d2d(),
        },
        // No cellular user in this realization: no energy spent, EE and the
        // uplink mean are undefined. Counted, not zeroed.
        Err(MetricsError::UndefinedEe) | Err(MetricsError::NoEnergySource) => {
            TrialOutcome { ee_total: None, mean_rate_uplink: None, mean_rate_d2d: None }
        }
        Err(e) => unreachable!("trial evaluation cannot fail otherwise: {e}"),
    }
}

/// Folds per-trial outcomes into a [`ScenarioResult`]. The fold is a fixed
/// left-to-right pass, so feeding outcomes in trial order reproduces the same
/// result no matter how they were produced.
pub fn aggregate<I: IntoIterator<Item = TrialOutcome>>(
    outcomes: I,
    n_trials: u64,
) -> Result<ScenarioResult, RunError> {
    let mut ee = Welford::new();
    let mut up = Welford::new();
    let mut d2d = Welford::new();
    for o in outcomes {
        if let Some(v) = o.ee_total {
            ee.push(v);
        }
        if let Some(v) = o.mean_rate_uplink {
            up.push(v);
        }
        if let Some(v) = o.mean_rate_d2d {
            d2d.push(v);
        }
    }
    if ee.count() == 0 {
        return Err(RunError::AllTrialsDegenerate);
    }
    Ok(ScenarioResult {
        mean_ee_total: ee.mean(),
        std_ee_total: ee.std_dev(),
        ci95_half_width: 1.96 * ee.std_dev() / math::sqrt(ee.count() as f64),
        mean_rate_uplink: up.mean(),
        mean_rate_d2d: if d2d.count() == 0 { 0.0 } else { d2d.mean() },
        n_trials_effective: ee.count(),
        n_trials,
    })
}

/// Runs all trials of a plan sequentially. Parallel front ends produce the
/// identical result by mapping [`run_trial`] over `0..n_trials` and feeding
/// [`aggregate`] in trial order.
pub fn run_scenario(plan: &TrialPlan) -> Result<ScenarioResult, RunError> {
    aggregate((0..plan.n_trials).map(|t| run_trial(plan, t)), plan.n_trials)
}
