//! Error types shared across the simulator modules.

use alloc::string::String;
use core::fmt;

/// A configuration field failed validation. Carries the offending key name so
/// front ends can point at the bad input.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// Config key, matching the flat-file spelling.
    pub key: &'static str,
    /// What was wrong with it.
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config value for `{}`: {}", self.key, self.reason)
    }
}

impl core::error::Error for ConfigError {}

/// A sweep or override referenced a parameter that does not exist or cannot
/// be swept.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigKeyError {
    pub key: String,
}

impl fmt::Display for ConfigKeyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown config parameter `{}`", self.key)
    }
}

impl core::error::Error for ConfigKeyError {}

/// Errors surfaced while evaluating link metrics for one deployment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    /// An energy-harvesting transmit power was requested but the deployment
    /// has no cellular user to harvest from and no fixed nearest distance.
    NoEnergySource,
    /// Two users are co-located; power-law path loss is undefined.
    DegenerateGeometry,
    /// Network-wide energy efficiency is undefined (no cellular user
    /// transmits, so no energy is spent).
    UndefinedEe,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::NoEnergySource => {
                write!(f, "no cellular energy source and no fixed nearest-user distance")
            }
            MetricsError::DegenerateGeometry => write!(f, "co-located users (zero link distance)"),
            MetricsError::UndefinedEe => {
                write!(f, "energy efficiency undefined: no cellular user transmits")
            }
        }
    }
}

impl core::error::Error for MetricsError {}

/// Errors from the Monte Carlo engine.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    /// Every trial in the plan was degenerate (no cellular users), so no
    /// statistic is defined.
    AllTrialsDegenerate,
    /// A trial failed for a non-statistical reason.
    Metrics(MetricsError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::AllTrialsDegenerate => {
                write!(f, "all trials degenerate: no cellular users in any realization")
            }
            RunError::Metrics(e) => write!(f, "trial evaluation failed: {e}"),
        }
    }
}

impl core::error::Error for RunError {}

/// Errors from sweeps and the altitude solver.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentError {
    /// Axis referenced an unknown or non-numeric parameter.
    Key(ConfigKeyError),
    /// A grid cell's config failed validation.
    Config(ConfigError),
    /// Axis value list empty or not strictly monotone.
    BadAxis(String),
    /// The altitude interval does not bracket the requested efficiency
    /// threshold. Carries the measured endpoint efficiencies.
    NoBracket { ee_low_alt: f64, ee_high_alt: f64, threshold: f64 },
    /// A scenario run inside the experiment failed.
    Run(RunError),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Key(e) => write!(f, "{e}"),
            ExperimentError::Config(e) => write!(f, "{e}"),
            ExperimentError::BadAxis(s) => write!(f, "bad sweep axis: {s}"),
            ExperimentError::NoBracket { ee_low_alt, ee_high_alt, threshold } => write!(
                f,
                "threshold {threshold} not bracketed: EE(low alt)={ee_low_alt}, EE(high alt)={ee_high_alt}"
            ),
            ExperimentError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ExperimentError {}

impl From<ConfigKeyError> for ExperimentError {
    fn from(e: ConfigKeyError) -> Self {
        ExperimentError::Key(e)
    }
}

impl From<ConfigError> for ExperimentError {
    fn from(e: ConfigError) -> Self {
        ExperimentError::Config(e)
    }
}

impl From<RunError> for ExperimentError {
    fn from(e: RunError) -> Self {
        ExperimentError::Run(e)
    }
}
