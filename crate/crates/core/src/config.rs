//! Simulation parameter set, validation and key-based access.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::errors::{ConfigError, ConfigKeyError};
use crate::math;

/// Every scalar parameter of the model. Field names double as the keys of the
/// flat `key = value` config file; decibel-valued inputs use the `_db` /
/// `_dbm` key variants and are converted to linear scale at the boundary, so
/// everything in here is strictly linear.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    /// Density of cellular users, users/m^2.
    pub lambda_c: f64,
    /// Density of D2D pairs, pairs/m^2.
    pub lambda_d2d: f64,
    /// Transmitter-receiver separation of every D2D pair, meters.
    pub l_d2d: f64,
    /// Fixed nearest-cellular-user distance, meters. `None` means use the
    /// measured nearest neighbor of each D2D transmitter.
    pub l_min_override: Option<f64>,
    /// Cellular transmit power per band, watts.
    pub p_tx_cellular: f64,
    /// Fixed D2D transmit power, watts. This is the data power of the
    /// no-harvesting scenario and the nominal power used for D2D-to-UAV
    /// interference in both scenarios.
    pub p_tx_d2d_fixed: f64,
    /// UAV altitude, meters.
    pub uav_altitude: f64,
    /// Ground-to-air path-loss exponent.
    pub alpha_a: f64,
    /// Ground-to-ground path-loss exponent.
    pub alpha_g: f64,
    /// LoS-probability sigmoid environment constant B.
    pub env_b: f64,
    /// LoS-probability sigmoid environment constant C.
    pub env_c: f64,
    /// Extra NLoS attenuation, linear scale in (0, 1].
    pub eta_nlos: f64,
    /// Number of frequency bands.
    pub q_bands: u32,
    /// Per-band bandwidth, Hz.
    pub bandwidth_hz: f64,
    /// AWGN power at the UAV receiver, watts.
    pub noise_a: f64,
    /// AWGN power at D2D receivers, watts.
    pub noise_g: f64,
    /// Harvesting polynomial quadratic coefficient.
    pub eh_a1: f64,
    /// Harvesting polynomial linear coefficient.
    pub eh_a2: f64,
    /// Harvesting polynomial constant coefficient.
    pub eh_a3: f64,
    /// Power-splitting ratio: this fraction of incident power goes to the
    /// decoding branch, the rest to the harvester.
    pub delta_pseh: f64,
    /// Cellular energy-transfer time, seconds.
    pub t_eh: f64,
    /// D2D transmission time, seconds.
    pub t_d2d: f64,
    /// Uplink transmission time, seconds.
    pub t_uplink: f64,
    /// Simulation disk radius, meters.
    pub region_radius: f64,
    /// Truncation radius for interference sums (ground-plane distance),
    /// meters.
    pub interference_radius: f64,
    /// RNG seed.
    pub seed: u64,
}

impl Default for SimConfig {
    /// Reference parameter set: suburban air-to-ground constants, five
    /// 100 MHz bands, -120 dBm noise, the published harvester polynomial,
    /// equal 50 ms time slots and a 1 km simulation disk.
    ///
    /// `p_tx_d2d_fixed` defaults to 0.5 pW: the no-harvesting scenario models
    /// D2D radios left with only a residual trickle of stored energy, and
    /// this keeps the shared uplink close to its noise floor, where altitude
    /// actually trades coverage against received power.
    fn default() -> Self {
        SimConfig {
            lambda_c: 3e-4,
            lambda_d2d: 3e-4,
            l_d2d: 10.0,
            l_min_override: Some(10.0),
            p_tx_cellular: 1.0,
            p_tx_d2d_fixed: 5e-13,
            uav_altitude: 700.0,
            alpha_a: 2.0,
            alpha_g: 4.0,
            env_b: 0.136,
            env_c: 11.95,
            eta_nlos: 0.01,
            q_bands: 5,
            bandwidth_hz: 1e8,
            noise_a: 1e-15,
            noise_g: 1e-15,
            eh_a1: -0.116,
            eh_a2: 0.6574,
            eh_a3: -6.549e-7,
            delta_pseh: 0.1,
            t_eh: 0.05,
            t_d2d: 0.05,
            t_uplink: 0.05,
            region_radius: 1000.0,
            interference_radius: 1000.0,
            seed: 1,
        }
    }
}

fn positive(key: &'static str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError { key, reason: format!("must be strictly positive, got {v}") })
    }
}

impl SimConfig {
    /// Checks every invariant; on failure names the offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("lambda_c", self.lambda_c)?;
        positive("lambda_d2d", self.lambda_d2d)?;
        positive("l_d2d", self.l_d2d)?;
        if let Some(l) = self.l_min_override {
            positive("l_min_override", l)?;
        }
        positive("p_tx_cellular", self.p_tx_cellular)?;
        positive("p_tx_d2d_fixed", self.p_tx_d2d_fixed)?;
        positive("uav_altitude", self.uav_altitude)?;
        positive("env_b", self.env_b)?;
        positive("env_c", self.env_c)?;
        positive("bandwidth_hz", self.bandwidth_hz)?;
        positive("noise_a", self.noise_a)?;
        positive("noise_g", self.noise_g)?;
        positive("t_eh", self.t_eh)?;
        positive("t_d2d", self.t_d2d)?;
        positive("t_uplink", self.t_uplink)?;
        positive("region_radius", self.region_radius)?;
        positive("interference_radius", self.interference_radius)?;
        if self.alpha_a < 2.0 {
            return Err(ConfigError {
                key: "alpha_a",
                reason: format!("path-loss exponent must be >= 2, got {}", self.alpha_a),
            });
        }
        if self.alpha_g < 2.0 {
            return Err(ConfigError {
                key: "alpha_g",
                reason: format!("path-loss exponent must be >= 2, got {}", self.alpha_g),
            });
        }
        if !(self.eta_nlos > 0.0 && self.eta_nlos <= 1.0) {
            return Err(ConfigError {
                key: "eta_nlos",
                reason: format!("attenuation factor must be in (0, 1], got {}", self.eta_nlos),
            });
        }
        if self.q_bands == 0 {
            return Err(ConfigError { key: "q_bands", reason: "need at least one band".into() });
        }
        if !(0.0..=1.0).contains(&self.delta_pseh) {
            return Err(ConfigError {
                key: "delta_pseh",
                reason: format!("split ratio must be in [0, 1], got {}", self.delta_pseh),
            });
        }
        if self.interference_radius > self.region_radius {
            return Err(ConfigError {
                key: "interference_radius",
                reason: format!(
                    "must not exceed region_radius ({} > {})",
                    self.interference_radius, self.region_radius
                ),
            });
        }
        Ok(())
    }

    /// Assigns one parameter by its config-file key. Accepts the `_db` /
    /// `_dbm` spellings and converts to linear. `l_min_override` additionally
    /// accepts the literal `none`.
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), ConfigKeyError> {
        let bad = || ConfigKeyError { key: format!("{key} (unparsable value `{value}`)") };
        let num = || -> Result<f64, ConfigKeyError> { value.trim().parse::<f64>().map_err(|_| bad()) };
        match key {
            "lambda_c" => self.lambda_c = num()?,
            "lambda_d2d" => self.lambda_d2d = num()?,
            "l_d2d" => self.l_d2d = num()?,
            "l_min_override" => {
                if value.trim().eq_ignore_ascii_case("none") {
                    self.l_min_override = None;
                } else {
                    self.l_min_override = Some(num()?);
                }
            }
            "p_tx_cellular" => self.p_tx_cellular = num()?,
            "p_tx_d2d_fixed" => self.p_tx_d2d_fixed = num()?,
            "uav_altitude" => self.uav_altitude = num()?,
            "alpha_a" => self.alpha_a = num()?,
            "alpha_g" => self.alpha_g = num()?,
            "env_b" => self.env_b = num()?,
            "env_c" => self.env_c = num()?,
            "eta_nlos" => self.eta_nlos = num()?,
            "eta_db" => self.eta_nlos = math::powf(10.0, -num()? / 10.0),
            "q_bands" => {
                self.q_bands = value.trim().parse::<u32>().map_err(|_| bad())?;
            }
            "bandwidth_hz" => self.bandwidth_hz = num()?,
            "noise_a" => self.noise_a = num()?,
            "noise_g" => self.noise_g = num()?,
            "noise_a_dbm" => self.noise_a = math::powf(10.0, (num()? - 30.0) / 10.0),
            "noise_g_dbm" => self.noise_g = math::powf(10.0, (num()? - 30.0) / 10.0),
            "eh_a1" => self.eh_a1 = num()?,
            "eh_a2" => self.eh_a2 = num()?,
            "eh_a3" => self.eh_a3 = num()?,
            "delta_pseh" => self.delta_pseh = num()?,
            "t_eh" => self.t_eh = num()?,
            "t_d2d" => self.t_d2d = num()?,
            "t_uplink" => self.t_uplink = num()?,
            "region_radius" => self.region_radius = num()?,
            "interference_radius" => self.interference_radius = num()?,
            "seed" => {
                self.seed = value.trim().parse::<u64>().map_err(|_| bad())?;
            }
            _ => return Err(ConfigKeyError { key: key.to_string() }),
        }
        Ok(())
    }

    /// Assigns one numeric parameter by key; used by sweep axes. Rejects keys
    /// that are not plain numbers (`seed`, `q_bands` stay out of sweeps).
    pub fn apply_numeric(&mut self, key: &str, value: f64) -> Result<(), ConfigKeyError> {
        match key {
            "seed" | "q_bands" => Err(ConfigKeyError { key: format!("{key} (not sweepable)") }),
            _ => self.apply_key(key, &format!("{value:e}")),
        }
    }

    /// The documented key set, in file order.
    pub fn keys() -> &'static [&'static str] {
        &[
            "lambda_c",
            "lambda_d2d",
            "l_d2d",
            "l_min_override",
            "p_tx_cellular",
            "p_tx_d2d_fixed",
            "uav_altitude",
            "alpha_a",
            "alpha_g",
            "env_b",
            "env_c",
            "eta_nlos",
            "q_bands",
            "bandwidth_hz",
            "noise_a",
            "noise_g",
            "eh_a1",
            "eh_a2",
            "eh_a3",
            "delta_pseh",
            "t_eh",
            "t_d2d",
            "t_uplink",
            "region_radius",
            "interference_radius",
            "seed",
        ]
    }

    /// Canonical `key = value` listing of the resolved config (linear units).
    /// This is what run manifests embed and hash.
    pub fn canonical_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.push(format!("lambda_c = {:e}", self.lambda_c));
        out.push(format!("lambda_d2d = {:e}", self.lambda_d2d));
        out.push(format!("l_d2d = {}", self.l_d2d));
        match self.l_min_override {
            Some(l) => out.push(format!("l_min_override = {l}")),
            None => out.push("l_min_override = none".to_string()),
        }
        out.push(format!("p_tx_cellular = {:e}", self.p_tx_cellular));
        out.push(format!("p_tx_d2d_fixed = {:e}", self.p_tx_d2d_fixed));
        out.push(format!("uav_altitude = {}", self.uav_altitude));
        out.push(format!("alpha_a = {}", self.alpha_a));
        out.push(format!("alpha_g = {}", self.alpha_g));
        out.push(format!("env_b = {}", self.env_b));
        out.push(format!("env_c = {}", self.env_c));
        out.push(format!("eta_nlos = {:e}", self.eta_nlos));
        out.push(format!("q_bands = {}", self.q_bands));
        out.push(format!("bandwidth_hz = {:e}", self.bandwidth_hz));
        out.push(format!("noise_a = {:e}", self.noise_a));
        out.push(format!("noise_g = {:e}", self.noise_g));
        out.push(format!("eh_a1 = {:e}", self.eh_a1));
        out.push(format!("eh_a2 = {:e}", self.eh_a2));
        out.push(format!("eh_a3 = {:e}", self.eh_a3));
        out.push(format!("delta_pseh = {}", self.delta_pseh));
        out.push(format!("t_eh = {}", self.t_eh));
        out.push(format!("t_d2d = {}", self.t_d2d));
        out.push(format!("t_uplink = {}", self.t_uplink));
        out.push(format!("region_radius = {}", self.region_radius));
        out.push(format!("interference_radius = {}", self.interference_radius));
        out.push(format!("seed = {}", self.seed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_validates() {
        SimConfig::default().validate().unwrap();
    }

    #[test]
    fn validation_names_the_offending_key() {
        let mut c = SimConfig::default();
        c.delta_pseh = 1.5;
        let err = c.validate().unwrap_err();
        assert_eq!(err.key, "delta_pseh");

        let mut c = SimConfig::default();
        c.interference_radius = c.region_radius * 2.0;
        assert_eq!(c.validate().unwrap_err().key, "interference_radius");

        let mut c = SimConfig::default();
        c.lambda_c = 0.0;
        assert_eq!(c.validate().unwrap_err().key, "lambda_c");
    }

    #[test]
    fn db_keys_convert_to_linear() {
        let mut c = SimConfig::default();
        c.apply_key("eta_db", "20").unwrap();
        assert!((c.eta_nlos - 0.01).abs() < 1e-15);
        c.apply_key("noise_a_dbm", "-120").unwrap();
        assert!((c.noise_a - 1e-15).abs() < 1e-27);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut c = SimConfig::default();
        let err = c.apply_key("lambda_q", "1").unwrap_err();
        assert!(err.key.contains("lambda_q"));
    }

    #[test]
    fn l_min_override_accepts_none() {
        let mut c = SimConfig::default();
        c.apply_key("l_min_override", "none").unwrap();
        assert_eq!(c.l_min_override, None);
        c.apply_key("l_min_override", "12.5").unwrap();
        assert_eq!(c.l_min_override, Some(12.5));
    }

    #[test]
    fn numeric_apply_rejects_non_sweepable() {
        let mut c = SimConfig::default();
        assert!(c.apply_numeric("seed", 3.0).is_err());
        assert!(c.apply_numeric("uav_altitude", 500.0).is_ok());
        assert_eq!(c.uav_altitude, 500.0);
    }
}
