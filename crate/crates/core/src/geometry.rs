//! PPP deployment sampling and geometric primitives.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::config::SimConfig;
use crate::errors::MetricsError;
use crate::math;
use crate::rng::{keyed_exp1, splitmix64, trial_seed};

/// Point on the ground plane, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn dist_sq(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        math::sqrt(self.dist_sq(other))
    }
}

/// UAV position: horizontal coordinates plus altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UavPosition {
    pub ground: Point2,
    pub altitude: f64,
}

impl UavPosition {
    /// 3-D distance from a ground point to the UAV.
    pub fn dist_3d(&self, p: &Point2) -> f64 {
        math::sqrt(self.dist_3d_sq(p))
    }

    pub fn dist_3d_sq(&self, p: &Point2) -> f64 {
        self.ground.dist_sq(p) + self.altitude * self.altitude
    }
}

/// One cellular (uplink) user.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellularUser {
    pub position: Point2,
    pub band: u32,
}

/// One D2D transmitter-receiver pair.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct D2dPair {
    pub tx: Point2,
    pub rx: Point2,
    pub band: u32,
}

/// Directed link identifier for fading lookups.
///
/// Indices are positions in the deployment's `cellular` / `d2d_pairs` lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LinkKey {
    /// Nearest cellular user to the transmitter of pair `pair` (energy link).
    EhSource { pair: u32 },
    /// Transmitter of `pair` to its own receiver.
    D2dDesired { pair: u32 },
    /// Transmitter of `pair` to the UAV.
    D2dToUav { pair: u32 },
    /// Transmitter of pair `tx_pair` to the receiver of pair `rx_pair`.
    D2dCross { tx_pair: u32, rx_pair: u32 },
    /// Cellular user `cell` to the receiver of pair `rx_pair`.
    CellToD2d { cell: u32, rx_pair: u32 },
}

impl LinkKey {
    /// Packs the link id into the 64-bit key fed to the fading hash.
    fn packed(self) -> u64 {
        match self {
            LinkKey::EhSource { pair } => (0u64 << 60) | pair as u64,
            LinkKey::D2dDesired { pair } => (1u64 << 60) | pair as u64,
            LinkKey::D2dToUav { pair } => (2u64 << 60) | pair as u64,
            LinkKey::D2dCross { tx_pair, rx_pair } => {
                (3u64 << 60) | ((tx_pair as u64) << 28) | rx_pair as u64
            }
            LinkKey::CellToD2d { cell, rx_pair } => {
                (4u64 << 60) | ((cell as u64) << 28) | rx_pair as u64
            }
        }
    }
}

/// Per-link Rayleigh power fading (unit-mean exponential draws).
///
/// The seeded form derives each draw from a keyed hash so no storage or draw
/// ordering is involved; the fixed form carries explicit values for frozen
/// test deployments.
#[derive(Debug, Clone, PartialEq)]
pub enum Fading {
    Seeded { fading_seed: u64 },
    Fixed { draws: BTreeMap<u64, f64>, default: f64 },
}

impl Fading {
    pub fn fixed(entries: &[(LinkKey, f64)], default: f64) -> Self {
        let mut draws = BTreeMap::new();
        for (k, v) in entries {
            draws.insert(k.packed(), *v);
        }
        Fading::Fixed { draws, default }
    }

    /// The Exp(1) draw for a directed link. Strictly positive.
    #[inline]
    pub fn draw(&self, key: LinkKey) -> f64 {
        match self {
            Fading::Seeded { fading_seed } => keyed_exp1(*fading_seed, key.packed()),
            Fading::Fixed { draws, default } => *draws.get(&key.packed()).unwrap_or(default),
        }
    }
}

/// One sampled realization of the network.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub cellular: Vec<CellularUser>,
    pub d2d_pairs: Vec<D2dPair>,
    pub uav: UavPosition,
    pub fading: Fading,
}

/// Samples one deployment. Deterministic in `(config, config.seed, trial)`;
/// the altitude enters only through the returned UAV position, so trials at
/// different altitudes share positions and fading.
pub fn sample_deployment(config: &SimConfig, trial: u64) -> Deployment {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let area = core::f64::consts::PI * config.region_radius * config.region_radius;

    let n_cell = Poisson::new(config.lambda_c * area).expect("positive mean").sample(&mut rng) as u64;
    let n_d2d = Poisson::new(config.lambda_d2d * area).expect("positive mean").sample(&mut rng) as u64;

    let mut cellular = Vec::with_capacity(n_cell as usize);
    for _ in 0..n_cell {
        let position = uniform_disk(&mut rng, config.region_radius);
        let band = rng.gen_range(0..config.q_bands);
        cellular.push(CellularUser { position, band });
    }

    let mut d2d_pairs = Vec::with_capacity(n_d2d as usize);
    for _ in 0..n_d2d {
        let tx = uniform_disk(&mut rng, config.region_radius);
        let angle = rng.gen_range(0.0..core::f64::consts::TAU);
        let (s, c) = math::sin_cos(angle);
        let rx = Point2 { x: tx.x + config.l_d2d * c, y: tx.y + config.l_d2d * s };
        let band = rng.gen_range(0..config.q_bands);
        d2d_pairs.push(D2dPair { tx, rx, band });
    }

    let fading_seed = splitmix64(rng.gen::<u64>());
    Deployment {
        cellular,
        d2d_pairs,
        uav: UavPosition { ground: Point2 { x: 0.0, y: 0.0 }, altitude: config.uav_altitude },
        fading: Fading::Seeded { fading_seed },
    }
}

fn uniform_disk(rng: &mut ChaCha8Rng, radius: f64) -> Point2 {
    let r = radius * math::sqrt(rng.gen::<f64>());
    let phi = rng.gen_range(0.0..core::f64::consts::TAU);
    let (s, c) = math::sin_cos(phi);
    Point2 { x: r * c, y: r * s }
}

/// Distance from the transmitter of pair `d2d_index` to its energy source:
/// the configured fixed distance when set, otherwise the measured nearest
/// cellular user (any band).
pub fn nearest_cellular_distance(
    config: &SimConfig,
    deployment: &Deployment,
    d2d_index: usize,
) -> Result<f64, MetricsError> {
    if let Some(l) = config.l_min_override {
        return Ok(l);
    }
    let tx = &deployment.d2d_pairs[d2d_index].tx;
    deployment
        .cellular
        .iter()
        .map(|c| c.position.dist_sq(tx))
        .min_by(|a, b| a.partial_cmp(b).expect("finite distances"))
        .map(math::sqrt)
        .ok_or(MetricsError::NoEnergySource)
}

/// Elevation angle seen from a ground point to the UAV, degrees in (0, 90].
pub fn elevation_angle_deg(uav: &UavPosition, user: &Point2) -> f64 {
    let d = uav.dist_3d(user);
    math::asin(uav.altitude / d).to_degrees()
}
