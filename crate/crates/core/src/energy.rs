//! Power-splitting nonlinear energy harvesting chain.

use crate::channel::{g2g_received_power, G2gChannelParams};
use crate::config::SimConfig;
use crate::errors::MetricsError;
use crate::geometry::{nearest_cellular_distance, Deployment, LinkKey};

/// Which of the two operating modes a run models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Scenario {
    /// D2D transmitters send with the fixed configured power.
    Free,
    /// D2D transmitters spend energy harvested from the nearest cellular
    /// user.
    EhEnabled,
}

impl Scenario {
    pub fn label(&self) -> &'static str {
        match self {
            Scenario::Free => "free",
            Scenario::EhEnabled => "eh",
        }
    }
}

/// Saturating quadratic harvester model.
///
/// The harvester branch sees `(1 - delta)` of the incident power; its output
/// is the quadratic clamped to `[0, p_harvest_max]`. With `a1 < 0` the cap is
/// the vertex value `a3 - a2^2 / (4 a1)`, the physical saturation level of
/// the circuit. The raw quadratic is negative near zero input (`a3 < 0`) and
/// decreasing past the vertex, neither of which a real harvester does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsehModel {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub delta: f64,
    pub p_harvest_max: f64,
}

impl PsehModel {
    pub fn from_config(c: &SimConfig) -> Self {
        let p_harvest_max = if c.eh_a1 < 0.0 {
            c.eh_a3 - c.eh_a2 * c.eh_a2 / (4.0 * c.eh_a1)
        } else {
            f64::INFINITY
        };
        PsehModel { a1: c.eh_a1, a2: c.eh_a2, a3: c.eh_a3, delta: c.delta_pseh, p_harvest_max }
    }

    /// Harvested power, watts, for a given incident power. Saturates at
    /// `p_harvest_max` once the branch input passes the quadratic's vertex;
    /// the decreasing branch of the raw polynomial is not physical.
    pub fn harvested_power(&self, incident: f64) -> f64 {
        let x = (1.0 - self.delta) * incident;
        if self.a1 < 0.0 && x >= -self.a2 / (2.0 * self.a1) {
            return self.p_harvest_max;
        }
        let raw = self.a1 * x * x + self.a2 * x + self.a3;
        raw.clamp(0.0, self.p_harvest_max)
    }
}

/// Energy accumulated over the harvesting window, joules.
pub fn harvested_energy(p_harvested: f64, t_eh: f64) -> f64 {
    p_harvested * t_eh
}

/// Transmit power available to the pair's transmitter for the given
/// scenario. The harvesting chain is: received energy signal from the
/// nearest cellular user, harvester quadratic, integration over the energy
/// window, then division by the transmission window.
pub fn d2d_transmit_power(
    config: &SimConfig,
    deployment: &Deployment,
    d2d_index: usize,
    scenario: Scenario,
) -> Result<f64, MetricsError> {
    match scenario {
        Scenario::Free => Ok(config.p_tx_d2d_fixed),
        Scenario::EhEnabled => {
            let l_min = nearest_cellular_distance(config, deployment, d2d_index)?;
            let fading = deployment.fading.draw(LinkKey::EhSource { pair: d2d_index as u32 });
            let incident = g2g_received_power(
                config.p_tx_cellular,
                fading,
                l_min,
                &G2gChannelParams::from_config(config),
            )?;
            let model = PsehModel::from_config(config);
            let energy = harvested_energy(model.harvested_power(incident), config.t_eh);
            Ok(energy / config.t_d2d)
        }
    }
}
