//! Channel models: ground-to-ground Rayleigh links and the ground-to-air
//! line-of-sight mixture.

use crate::config::SimConfig;
use crate::errors::MetricsError;
use crate::math;

/// Ground-to-air channel constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2aChannelParams {
    pub env_b: f64,
    pub env_c: f64,
    /// NLoS extra attenuation, linear in (0, 1].
    pub eta_nlos: f64,
    pub alpha_a: f64,
}

impl G2aChannelParams {
    pub fn from_config(c: &SimConfig) -> Self {
        G2aChannelParams { env_b: c.env_b, env_c: c.env_c, eta_nlos: c.eta_nlos, alpha_a: c.alpha_a }
    }
}

/// Ground-to-ground channel constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2gChannelParams {
    pub alpha_g: f64,
}

impl G2gChannelParams {
    pub fn from_config(c: &SimConfig) -> Self {
        G2gChannelParams { alpha_g: c.alpha_g }
    }
}

/// Line-of-sight probability at elevation angle `theta_deg`:
/// `1 / (1 + C exp(-B (theta - C)))`. The complementary NLoS probability is
/// `1 - los_probability(..)`.
pub fn los_probability(theta_deg: f64, params: &G2aChannelParams) -> f64 {
    1.0 / (1.0 + params.env_c * math::exp(-params.env_b * (theta_deg - params.env_c)))
}

/// Received power of a faded ground link: `p_tx * fading * d^(-alpha_g)`.
pub fn g2g_received_power(
    p_tx: f64,
    fading: f64,
    distance: f64,
    params: &G2gChannelParams,
) -> Result<f64, MetricsError> {
    if distance <= 0.0 {
        return Err(MetricsError::DegenerateGeometry);
    }
    Ok(p_tx * fading * math::pathloss_from_dist_sq(distance * distance, params.alpha_g))
}

/// Received power of the desired uplink signal at the UAV: the LoS/NLoS
/// mixture times power-law path loss, no fast fading.
pub fn g2a_received_power(
    p_tx: f64,
    distance_3d: f64,
    theta_deg: f64,
    params: &G2aChannelParams,
) -> f64 {
    let p_los = los_probability(theta_deg, params);
    let mix = p_los + params.eta_nlos * (1.0 - p_los);
    mix * p_tx * math::pathloss_from_dist_sq(distance_3d * distance_3d, params.alpha_a)
}

/// Interference power of a ground transmitter at the UAV: faded power-law
/// path loss with no LoS mixture.
pub fn g2a_interference_power(
    p_tx: f64,
    fading: f64,
    distance_3d: f64,
    params: &G2aChannelParams,
) -> f64 {
    p_tx * fading * math::pathloss_from_dist_sq(distance_3d * distance_3d, params.alpha_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2a() -> G2aChannelParams {
        G2aChannelParams { env_b: 0.136, env_c: 11.95, eta_nlos: 0.01, alpha_a: 2.0 }
    }

    fn g2g() -> G2gChannelParams {
        G2gChannelParams { alpha_g: 4.0 }
    }

    #[test]
    fn los_probability_known_points() {
        // direct sigmoid evaluation at 45 degrees
        let p = los_probability(45.0, &g2a());
        let expect = 1.0 / (1.0 + 11.95 * math::exp(-0.136 * (45.0 - 11.95)));
        assert!((p - expect).abs() < 1e-15);
        assert!((p - 0.882).abs() < 5e-4);

        // at theta == C the exponent vanishes
        let p = los_probability(11.95, &g2a());
        assert!((p - 1.0 / 12.95).abs() < 1e-15);

        // saturation for steep sigmoids
        let steep = G2aChannelParams { env_b: 1e6, ..g2a() };
        assert!(los_probability(90.0, &steep) > 1.0 - 1e-12);
    }

    #[test]
    fn los_curve_is_an_s_shape() {
        let p = g2a();
        let mut prev = los_probability(1.0, &p);
        assert!(prev < 0.05, "near zero at grazing angles, got {prev}");
        let mut theta = 1.5;
        while theta <= 90.0 {
            let v = los_probability(theta, &p);
            assert!(v > prev);
            prev = v;
            theta += 0.5;
        }
        assert!(prev > 0.99, "near one at zenith, got {prev}");
    }

    #[test]
    fn g2g_known_values() {
        let p = g2g();
        assert!((g2g_received_power(1.0, 1.0, 10.0, &p).unwrap() - 1e-4).abs() < 1e-18);
        // linear in fading
        assert!((g2g_received_power(1.0, 0.5, 10.0, &p).unwrap() - 5e-5).abs() < 1e-18);
        // unit distance returns the transmit power
        assert_eq!(g2g_received_power(3.7, 1.0, 1.0, &p).unwrap(), 3.7);
        assert_eq!(g2g_received_power(1.0, 1.0, 0.0, &p), Err(MetricsError::DegenerateGeometry));
    }

    #[test]
    fn g2a_known_values() {
        // forced LoS via a steep sigmoid: pure path loss at 700 m, alpha 2
        let forced = G2aChannelParams { env_b: 1e9, ..g2a() };
        let v = g2a_received_power(1.0, 700.0, 90.0, &forced);
        assert!((v - 1.0 / 490000.0).abs() < 1e-12);

        // eta scaling with LoS forced off (theta tiny, steep sigmoid)
        let v_nlos = g2a_received_power(1.0, 700.0, 1e-9, &forced);
        assert!((v_nlos - 0.01 / 490000.0).abs() / v_nlos < 1e-9);

        // eta = 1 makes the mixture angle-independent
        let flat = G2aChannelParams { eta_nlos: 1.0, ..g2a() };
        let a = g2a_received_power(2.0, 500.0, 10.0, &flat);
        let b = g2a_received_power(2.0, 500.0, 80.0, &flat);
        assert_eq!(a, b);
    }

    #[test]
    fn g2a_interference_known_values() {
        let p = g2a();
        let v = g2a_interference_power(0.2, 1.0, 700.0, &p);
        assert!((v - 0.2 / 490000.0).abs() < 1e-18);
        assert_eq!(g2a_interference_power(0.2, 2.0, 700.0, &p), 2.0 * v);
        assert_eq!(g2a_interference_power(0.0, 1.0, 700.0, &p), 0.0);
    }
}
