//! Interference aggregates, SINRs, per-user rates and energy efficiency for
//! one deployment.
//!
//! Power conventions: the D2D-to-UAV interference sum always uses the nominal
//! fixed D2D power, in both scenarios, so uplink performance does not depend
//! on the harvesting technique; interference between D2D pairs uses the
//! actual per-pair transmit powers of the scenario under evaluation. All
//! interference sums are restricted to transmitters on the victim's band and
//! within `interference_radius` (ground-plane distance) of the receiver.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{g2a_received_power, G2aChannelParams};
use crate::config::SimConfig;
use crate::energy::{d2d_transmit_power, Scenario};
use crate::errors::MetricsError;
use crate::geometry::{elevation_angle_deg, Deployment, LinkKey};
use crate::math;

/// Per-cellular-user uplink figures on one band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UplinkRecord {
    pub sinr: f64,
    /// bits/s
    pub rate: f64,
    /// Aggregate D2D interference at the UAV on this band, watts.
    pub interference_from_d2d: f64,
    pub noise: f64,
}

/// Per-D2D-pair figures on one band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct D2dRecord {
    pub sinr: f64,
    /// bits/s
    pub rate: f64,
    pub interference_from_d2d: f64,
    pub interference_from_cellular: f64,
    /// Desired received power, watts.
    pub signal: f64,
}

/// Everything measured on one frequency band.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMetrics {
    pub band: u32,
    pub uplink: Vec<UplinkRecord>,
    pub d2d: Vec<D2dRecord>,
    /// bits/joule; `None` when no cellular user transmits on the band (the
    /// band spends no energy, so its own efficiency is undefined). Its D2D
    /// rates still count toward the network total.
    pub ee: Option<f64>,
}

/// Network-wide aggregates across bands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalMetrics {
    /// bits/joule: ratio of summed rate numerators to summed energy
    /// denominators, not the mean of per-band efficiencies.
    pub ee_total: f64,
    pub sum_rate_uplink: f64,
    pub sum_rate_d2d: f64,
}

/// Full evaluation of one deployment under one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialMetrics {
    pub bands: Vec<BandMetrics>,
    pub total: TotalMetrics,
}

impl TrialMetrics {
    /// Mean uplink rate over all cellular users, bits/s.
    pub fn mean_rate_uplink(&self) -> Option<f64> {
        let n: usize = self.bands.iter().map(|b| b.uplink.len()).sum();
        (n > 0).then(|| self.total.sum_rate_uplink / n as f64)
    }

    /// Mean D2D rate over all pairs, bits/s.
    pub fn mean_rate_d2d(&self) -> Option<f64> {
        let n: usize = self.bands.iter().map(|b| b.d2d.len()).sum();
        (n > 0).then(|| self.total.sum_rate_d2d / n as f64)
    }
}

#[inline]
fn within_radius(dist_sq: f64, config: &SimConfig) -> bool {
    dist_sq <= config.interference_radius * config.interference_radius
}

/// Interference from co-band D2D transmitters (excluding the pair itself) at
/// the receiver of pair `pair_index`, watts. `d2d_powers[i]` is the transmit
/// power of pair `i`.
pub fn d2d_interference_at_d2d(
    config: &SimConfig,
    deployment: &Deployment,
    pair_index: usize,
    band: u32,
    d2d_powers: &[f64],
) -> f64 {
    let rx = &deployment.d2d_pairs[pair_index].rx;
    let mut sum = 0.0;
    for (i, p) in deployment.d2d_pairs.iter().enumerate() {
        if i == pair_index || p.band != band {
            continue;
        }
        let d_sq = p.tx.dist_sq(rx);
        if !within_radius(d_sq, config) {
            continue;
        }
        let fading = deployment
            .fading
            .draw(LinkKey::D2dCross { tx_pair: i as u32, rx_pair: pair_index as u32 });
        sum += d2d_powers[i] * fading * math::pathloss_from_dist_sq(d_sq, config.alpha_g);
    }
    sum
}

/// Interference from co-band cellular users at the receiver of pair
/// `pair_index`, watts.
pub fn cellular_interference_at_d2d(
    config: &SimConfig,
    deployment: &Deployment,
    pair_index: usize,
    band: u32,
) -> f64 {
    let rx = &deployment.d2d_pairs[pair_index].rx;
    let mut sum = 0.0;
    for (j, c) in deployment.cellular.iter().enumerate() {
        if c.band != band {
            continue;
        }
        let d_sq = c.position.dist_sq(rx);
        if !within_radius(d_sq, config) {
            continue;
        }
        let fading = deployment
            .fading
            .draw(LinkKey::CellToD2d { cell: j as u32, rx_pair: pair_index as u32 });
        sum += config.p_tx_cellular * fading * math::pathloss_from_dist_sq(d_sq, config.alpha_g);
    }
    sum
}

/// Interference from co-band D2D transmitters at the UAV, watts. Distances
/// are 3-D; the radius cut applies to the ground-plane offset.
pub fn d2d_interference_at_uav(
    config: &SimConfig,
    deployment: &Deployment,
    band: u32,
    d2d_powers: &[f64],
) -> f64 {
    let mut sum = 0.0;
    for (i, p) in deployment.d2d_pairs.iter().enumerate() {
        if p.band != band {
            continue;
        }
        let ground_sq = p.tx.dist_sq(&deployment.uav.ground);
        if !within_radius(ground_sq, config) {
            continue;
        }
        let d_sq = ground_sq + deployment.uav.altitude * deployment.uav.altitude;
        let fading = deployment.fading.draw(LinkKey::D2dToUav { pair: i as u32 });
        sum += d2d_powers[i] * fading * math::pathloss_from_dist_sq(d_sq, config.alpha_a);
    }
    sum
}

/// Uplink SINR of cellular user `user_index` on its band. Uplink users are
/// orthogonal, so the only interference is the co-band D2D aggregate;
/// `d2d_powers` should carry the nominal per-pair powers.
pub fn uplink_sinr(
    config: &SimConfig,
    deployment: &Deployment,
    user_index: usize,
    d2d_powers: &[f64],
) -> f64 {
    let user = &deployment.cellular[user_index];
    let interference = d2d_interference_at_uav(config, deployment, user.band, d2d_powers);
    uplink_sinr_given_interference(config, deployment, user_index, interference)
}

fn uplink_sinr_given_interference(
    config: &SimConfig,
    deployment: &Deployment,
    user_index: usize,
    interference: f64,
) -> f64 {
    let user = &deployment.cellular[user_index];
    let d = deployment.uav.dist_3d(&user.position);
    let theta = elevation_angle_deg(&deployment.uav, &user.position);
    let signal =
        g2a_received_power(config.p_tx_cellular, d, theta, &G2aChannelParams::from_config(config));
    signal / (interference + config.noise_a)
}

/// SINR at the receiver of pair `pair_index` on its band. `d2d_powers`
/// carries the actual scenario powers; the pair's own entry feeds the desired
/// term.
pub fn d2d_sinr(
    config: &SimConfig,
    deployment: &Deployment,
    pair_index: usize,
    d2d_powers: &[f64],
) -> f64 {
    let pair = &deployment.d2d_pairs[pair_index];
    let own = d2d_interference_at_d2d(config, deployment, pair_index, pair.band, d2d_powers);
    let cell = cellular_interference_at_d2d(config, deployment, pair_index, pair.band);
    let fading = deployment.fading.draw(LinkKey::D2dDesired { pair: pair_index as u32 });
    let signal =
        d2d_powers[pair_index] * fading * math::pathloss_from_dist_sq(pair.tx.dist_sq(&pair.rx), config.alpha_g);
    signal / (own + cell + config.noise_g)
}

/// Shannon rate, bits/s.
pub fn rate(sinr: f64, bandwidth_hz: f64) -> f64 {
    bandwidth_hz * math::log2(1.0 + sinr)
}

/// Per-band energy efficiency, bits/joule: summed band rates over the energy
/// the band's cellular users spend across the uplink and energy-transfer
/// windows.
pub fn band_ee(
    sum_rates_bps: f64,
    cellular_count_on_band: usize,
    config: &SimConfig,
) -> Result<f64, MetricsError> {
    if cellular_count_on_band == 0 {
        return Err(MetricsError::UndefinedEe);
    }
    let energy =
        (config.t_uplink + config.t_eh) * config.p_tx_cellular * cellular_count_on_band as f64;
    Ok(sum_rates_bps / energy)
}

/// Network-total efficiency across bands: summed numerators over summed
/// denominators.
pub fn total_ee(bands: &[BandMetrics], config: &SimConfig) -> Result<TotalMetrics, MetricsError> {
    let mut sum_up = 0.0;
    let mut sum_d2d = 0.0;
    let mut cellular_total = 0usize;
    for b in bands {
        sum_up += b.uplink.iter().map(|r| r.rate).sum::<f64>();
        sum_d2d += b.d2d.iter().map(|r| r.rate).sum::<f64>();
        cellular_total += b.uplink.len();
    }
    if cellular_total == 0 {
        return Err(MetricsError::UndefinedEe);
    }
    let energy = (config.t_uplink + config.t_eh) * config.p_tx_cellular * cellular_total as f64;
    Ok(TotalMetrics { ee_total: (sum_up + sum_d2d) / energy, sum_rate_uplink: sum_up, sum_rate_d2d: sum_d2d })
}

/// Per-pair transmit powers for a scenario.
pub fn scenario_powers(
    config: &SimConfig,
    deployment: &Deployment,
    scenario: Scenario,
) -> Result<Vec<f64>, MetricsError> {
    let n = deployment.d2d_pairs.len();
    match scenario {
        Scenario::Free => Ok(vec![config.p_tx_d2d_fixed; n]),
        Scenario::EhEnabled => {
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                out.push(d2d_transmit_power(config, deployment, i, scenario)?);
            }
            Ok(out)
        }
    }
}

/// Evaluates every link metric for one deployment under one scenario.
///
/// Errors with `UndefinedEe` when the deployment has no cellular user at all
/// (callers treat that trial as degenerate).
pub fn evaluate_trial(
    config: &SimConfig,
    deployment: &Deployment,
    scenario: Scenario,
) -> Result<TrialMetrics, MetricsError> {
    if deployment.cellular.is_empty() {
        return Err(MetricsError::UndefinedEe);
    }
    let actual = scenario_powers(config, deployment, scenario)?;
    let nominal = vec![config.p_tx_d2d_fixed; deployment.d2d_pairs.len()];

    let q = config.q_bands;
    let mut cells_by_band: Vec<Vec<usize>> = vec![Vec::new(); q as usize];
    for (j, c) in deployment.cellular.iter().enumerate() {
        cells_by_band[c.band as usize].push(j);
    }
    let mut pairs_by_band: Vec<Vec<usize>> = vec![Vec::new(); q as usize];
    for (i, p) in deployment.d2d_pairs.iter().enumerate() {
        pairs_by_band[p.band as usize].push(i);
    }

    let mut bands = Vec::with_capacity(q as usize);
    for band in 0..q {
        let uav_interference = d2d_interference_at_uav(config, deployment, band, &nominal);

        let mut uplink = Vec::with_capacity(cells_by_band[band as usize].len());
        for &j in &cells_by_band[band as usize] {
            let sinr = uplink_sinr_given_interference(config, deployment, j, uav_interference);
            uplink.push(UplinkRecord {
                sinr,
                rate: rate(sinr, config.bandwidth_hz),
                interference_from_d2d: uav_interference,
                noise: config.noise_a,
            });
        }

        let mut d2d = Vec::with_capacity(pairs_by_band[band as usize].len());
        for &b in &pairs_by_band[band as usize] {
            let pair = &deployment.d2d_pairs[b];
            let own = d2d_interference_at_d2d(config, deployment, b, band, &actual);
            let cell = cellular_interference_at_d2d(config, deployment, b, band);
            let fading = deployment.fading.draw(LinkKey::D2dDesired { pair: b as u32 });
            let signal = actual[b]
                * fading
                * math::pathloss_from_dist_sq(pair.tx.dist_sq(&pair.rx), config.alpha_g);
            let sinr = signal / (own + cell + config.noise_g);
            d2d.push(D2dRecord {
                sinr,
                rate: rate(sinr, config.bandwidth_hz),
                interference_from_d2d: own,
                interference_from_cellular: cell,
                signal,
            });
        }

        let sum_rates =
            uplink.iter().map(|r| r.rate).sum::<f64>() + d2d.iter().map(|r| r.rate).sum::<f64>();
        let ee = band_ee(sum_rates, uplink.len(), config).ok();
        bands.push(BandMetrics { band, uplink, d2d, ee });
    }

    let total = total_ee(&bands, config)?;
    Ok(TrialMetrics { bands, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CellularUser, D2dPair, Fading, Point2, UavPosition};

    fn cfg() -> SimConfig {
        SimConfig::default()
    }

    fn dep(cellular: Vec<CellularUser>, d2d_pairs: Vec<D2dPair>, fading: Fading) -> Deployment {
        Deployment {
            cellular,
            d2d_pairs,
            uav: UavPosition { ground: Point2 { x: 0.0, y: 0.0 }, altitude: 700.0 },
            fading,
        }
    }

    fn pair_at(x: f64, y: f64, band: u32) -> D2dPair {
        D2dPair { tx: Point2 { x, y }, rx: Point2 { x: x + 10.0, y }, band }
    }

    #[test]
    fn single_pair_sees_no_own_band_interference() {
        let c = cfg();
        let d = dep(vec![], vec![pair_at(0.0, 0.0, 0)], Fading::fixed(&[], 1.0));
        assert_eq!(d2d_interference_at_d2d(&c, &d, 0, 0, &[0.2]), 0.0);
    }

    #[test]
    fn two_pair_interference_single_term() {
        let c = cfg();
        // interfering transmitter exactly 10 m from the victim receiver
        let victim = D2dPair { tx: Point2 { x: -10.0, y: 0.0 }, rx: Point2 { x: 0.0, y: 0.0 }, band: 0 };
        let interferer = pair_at(10.0, 0.0, 0);
        let d = dep(vec![], vec![victim, interferer], Fading::fixed(&[], 1.0));
        let got = d2d_interference_at_d2d(&c, &d, 0, 0, &[0.2, 0.2]);
        assert!((got - 2e-5).abs() / 2e-5 < 1e-12);

        // off-band interferer contributes nothing
        let mut d2 = d.clone();
        d2.d2d_pairs[1].band = 1;
        assert_eq!(d2d_interference_at_d2d(&c, &d2, 0, 0, &[0.2, 0.2]), 0.0);
    }

    #[test]
    fn cellular_interference_single_term() {
        let c = cfg();
        let victim = D2dPair { tx: Point2 { x: -10.0, y: 0.0 }, rx: Point2 { x: 0.0, y: 0.0 }, band: 0 };
        let d = dep(
            vec![CellularUser { position: Point2 { x: 10.0, y: 0.0 }, band: 0 }],
            vec![victim],
            Fading::fixed(&[], 1.0),
        );
        let got = cellular_interference_at_d2d(&c, &d, 0, 0);
        assert!((got - 1e-4).abs() / 1e-4 < 1e-12);
        assert_eq!(cellular_interference_at_d2d(&c, &d, 0, 1), 0.0);
    }

    #[test]
    fn uav_interference_single_term() {
        let c = cfg();
        let d = dep(vec![], vec![pair_at(0.0, 0.0, 0)], Fading::fixed(&[], 1.0));
        let got = d2d_interference_at_uav(&c, &d, 0, &[0.2]);
        let expect = 0.2 / 490000.0;
        assert!((got - expect).abs() / expect < 1e-12);
        assert_eq!(d2d_interference_at_uav(&c, &d, 1, &[0.2]), 0.0);
        let empty = dep(vec![], vec![], Fading::fixed(&[], 1.0));
        assert_eq!(d2d_interference_at_uav(&c, &empty, 0, &[]), 0.0);
    }

    #[test]
    fn uplink_sinr_against_noise_floor() {
        let mut c = cfg();
        c.env_b = 1e9; // force LoS
        let d = dep(
            vec![CellularUser { position: Point2 { x: 0.0, y: 0.0 }, band: 0 }],
            vec![],
            Fading::fixed(&[], 1.0),
        );
        let sinr = uplink_sinr(&c, &d, 0, &[]);
        assert!((sinr - 2.041e9).abs() / 2.041e9 < 1e-3);

        // signal equal to noise with no interference gives exactly one
        let signal = 1.0 / 490000.0;
        c.noise_a = signal;
        let sinr = uplink_sinr(&c, &d, 0, &[]);
        assert_eq!(sinr, 1.0);

        // any interferer strictly decreases it
        let d2 = dep(
            d.cellular.clone(),
            vec![pair_at(100.0, 0.0, 0)],
            Fading::fixed(&[], 1.0),
        );
        assert!(uplink_sinr(&c, &d2, 0, &[1e-6]) < sinr);
    }

    #[test]
    fn d2d_sinr_isolated_pair() {
        let mut c = cfg();
        c.noise_g = 1e-15;
        let d = dep(vec![], vec![pair_at(0.0, 0.0, 0)], Fading::fixed(&[], 1.0));
        let sinr = d2d_sinr(&c, &d, 0, &[0.5414]);
        let expect = 0.5414e-4 / 1e-15;
        assert!((sinr - expect).abs() / expect < 1e-12);
        assert!((sinr - 5.414e10).abs() / 5.414e10 < 1e-3);
    }

    #[test]
    fn rate_known_points() {
        assert!((rate(1.0, 1e8) - 1e8).abs() < 1.0);
        assert_eq!(rate(0.0, 1e8), 0.0);
        assert!((rate(3.0, 1e8) - 2e8).abs() < 1.0);
    }

    #[test]
    fn band_ee_direct_substitution() {
        let c = cfg(); // t_uplink = t_eh = 0.05, 1 W
        let ee = band_ee(1e8, 1, &c).unwrap();
        assert!((ee - 1e9).abs() / 1e9 < 1e-12);
        // doubling rates doubles it
        assert_eq!(band_ee(2e8, 1, &c).unwrap(), 2.0 * ee);
        assert_eq!(band_ee(1e8, 0, &c), Err(MetricsError::UndefinedEe));
        // halving the energy window with matched uplink window doubles it
        let mut quick = c.clone();
        quick.t_eh = 0.025;
        quick.t_uplink = 0.025;
        assert_eq!(band_ee(1e8, 1, &quick).unwrap(), 2.0 * ee);
    }

    fn synthetic_band(band: u32, n_up: usize, up_rate: f64, n_d2d: usize, d2d_rate: f64) -> BandMetrics {
        let uplink = (0..n_up)
            .map(|_| UplinkRecord { sinr: 1.0, rate: up_rate, interference_from_d2d: 0.0, noise: 1e-15 })
            .collect::<Vec<_>>();
        let d2d = (0..n_d2d)
            .map(|_| D2dRecord {
                sinr: 1.0,
                rate: d2d_rate,
                interference_from_d2d: 0.0,
                interference_from_cellular: 0.0,
                signal: 1.0,
            })
            .collect::<Vec<_>>();
        BandMetrics { band, uplink, d2d, ee: None }
    }

    #[test]
    fn total_ee_sums_before_dividing() {
        let c = cfg();
        // single band degenerates to the band EE
        let one = [synthetic_band(0, 2, 1e8, 1, 5e7)];
        let t = total_ee(&one, &c).unwrap();
        let band = band_ee(2.5e8, 2, &c).unwrap();
        assert!((t.ee_total - band).abs() / band < 1e-12);

        // two bands with equal cellular counts: total is the mean of band EEs
        let two = [synthetic_band(0, 2, 1e8, 0, 0.0), synthetic_band(1, 2, 3e8, 0, 0.0)];
        let t = total_ee(&two, &c).unwrap();
        let e0 = band_ee(2e8, 2, &c).unwrap();
        let e1 = band_ee(6e8, 2, &c).unwrap();
        assert!((t.ee_total - 0.5 * (e0 + e1)).abs() / t.ee_total < 1e-12);

        assert_eq!(total_ee(&[synthetic_band(0, 0, 0.0, 3, 1e8)], &c), Err(MetricsError::UndefinedEe));
    }

    #[test]
    fn evaluate_trial_matches_the_public_ops() {
        let mut c = cfg();
        c.l_min_override = Some(10.0);
        let d = dep(
            vec![
                CellularUser { position: Point2 { x: 40.0, y: 10.0 }, band: 0 },
                CellularUser { position: Point2 { x: -200.0, y: 35.0 }, band: 1 },
            ],
            vec![pair_at(0.0, 0.0, 0), pair_at(60.0, -20.0, 0), pair_at(300.0, 200.0, 1)],
            Fading::Seeded { fading_seed: 99 },
        );
        for scenario in [Scenario::Free, Scenario::EhEnabled] {
            let m = evaluate_trial(&c, &d, scenario).unwrap();
            let actual = scenario_powers(&c, &d, scenario).unwrap();
            let nominal = vec![c.p_tx_d2d_fixed; 3];
            for bm in &m.bands {
                let users: Vec<usize> = (0..d.cellular.len())
                    .filter(|&j| d.cellular[j].band == bm.band)
                    .collect();
                for (slot, &j) in users.iter().enumerate() {
                    assert_eq!(bm.uplink[slot].sinr, uplink_sinr(&c, &d, j, &nominal));
                }
                let pairs: Vec<usize> = (0..d.d2d_pairs.len())
                    .filter(|&i| d.d2d_pairs[i].band == bm.band)
                    .collect();
                for (slot, &b) in pairs.iter().enumerate() {
                    assert_eq!(bm.d2d[slot].sinr, d2d_sinr(&c, &d, b, &actual));
                }
            }
        }
    }

    #[test]
    fn empty_cellular_set_is_undefined_ee() {
        let c = cfg();
        let d = dep(vec![], vec![pair_at(0.0, 0.0, 0)], Fading::fixed(&[], 1.0));
        assert_eq!(evaluate_trial(&c, &d, Scenario::Free).unwrap_err(), MetricsError::UndefinedEe);
    }

    #[test]
    fn bands_without_cellular_users_have_no_band_ee_but_count_in_total() {
        let mut c = cfg();
        c.q_bands = 2;
        let d = dep(
            vec![CellularUser { position: Point2 { x: 40.0, y: 10.0 }, band: 0 }],
            vec![pair_at(0.0, 0.0, 1)],
            Fading::fixed(&[], 1.0),
        );
        let m = evaluate_trial(&c, &d, Scenario::Free).unwrap();
        assert!(m.bands[0].ee.is_some());
        assert!(m.bands[1].ee.is_none());
        let d2d_rate = m.bands[1].d2d[0].rate;
        assert!(d2d_rate > 0.0);
        // the orphan band's d2d rate is in the total numerator
        let expect =
            (m.total.sum_rate_uplink + d2d_rate) / ((c.t_uplink + c.t_eh) * c.p_tx_cellular);
        assert!((m.total.ee_total - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn uplink_side_is_scenario_independent() {
        let mut c = cfg();
        c.lambda_c = 5e-5;
        c.lambda_d2d = 5e-5;
        let d = crate::geometry::sample_deployment(&c, 4);
        let free = evaluate_trial(&c, &d, Scenario::Free).unwrap();
        let eh = evaluate_trial(&c, &d, Scenario::EhEnabled).unwrap();
        assert_eq!(free.total.sum_rate_uplink.to_bits(), eh.total.sum_rate_uplink.to_bits());
        assert_ne!(free.total.sum_rate_d2d.to_bits(), eh.total.sum_rate_d2d.to_bits());
    }
}
