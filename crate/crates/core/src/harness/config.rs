//! Flat `key = value` configuration files.
//!
//! Keys are the field names of [`ScenarioConfig`], [`PowerConfig`],
//! [`QosSettings`] and [`LinkModels`]; the link models take the `link_`
//! prefix (`link_cue_dc = cellular`). Blank lines and `#` comments are
//! ignored. Unset keys keep their defaults.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::channel::{LinkModels, PowerConfig};
use crate::error::{Error, Result};
use crate::interference::QosSettings;
use crate::topology::ScenarioConfig;

/// Everything needed to run one drop.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimConfig {
    pub scenario: ScenarioConfig,
    pub power: PowerConfig,
    pub qos: QosSettings,
    pub links: LinkModels,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(format!("{key}: cannot parse `{value}`")))
}

impl SimConfig {
    pub const KEYS: &'static [&'static str] = &[
        "cell_radius_m",
        "num_cues",
        "num_dcs",
        "sms_per_dc",
        "max_sm_dc_distance_m",
        "dc_enb_distance_m",
        "rng_seed",
        "cue_tx_dbm",
        "sm_tx_dbm",
        "noise_psd_dbm_hz",
        "rb_bandwidth_hz",
        "cue_sinr_min_db",
        "cue_sinr_max_db",
        "sm_sinr_db",
        "link_cue_enb",
        "link_sm_enb",
        "link_sm_dc",
        "link_cue_dc",
    ];

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.power.validate()?;
        self.qos.validate()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let (s, p, q, k) = (&mut self.scenario, &mut self.power, &mut self.qos, &mut self.links);
        match key {
            "cell_radius_m" => s.cell_radius_m = parse(key, value)?,
            "num_cues" => s.num_cues = parse(key, value)?,
            "num_dcs" => s.num_dcs = parse(key, value)?,
            "sms_per_dc" => s.sms_per_dc = parse(key, value)?,
            "max_sm_dc_distance_m" => s.max_sm_dc_distance_m = parse(key, value)?,
            "dc_enb_distance_m" => s.dc_enb_distance_m = parse(key, value)?,
            "rng_seed" => s.rng_seed = parse(key, value)?,
            "cue_tx_dbm" => p.cue_tx_dbm = parse(key, value)?,
            "sm_tx_dbm" => p.sm_tx_dbm = parse(key, value)?,
            "noise_psd_dbm_hz" => p.noise_psd_dbm_hz = parse(key, value)?,
            "rb_bandwidth_hz" => p.rb_bandwidth_hz = parse(key, value)?,
            "cue_sinr_min_db" => q.cue_sinr_min_db = parse(key, value)?,
            "cue_sinr_max_db" => q.cue_sinr_max_db = parse(key, value)?,
            "sm_sinr_db" => q.sm_sinr_db = parse(key, value)?,
            "link_cue_enb" => k.cue_enb = value.parse()?,
            "link_sm_enb" => k.sm_enb = value.parse()?,
            "link_sm_dc" => k.sm_dc = value.parse()?,
            "link_cue_dc" => k.cue_dc = value.parse()?,
            _ => return Err(Error::config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::config(format!("expected key=value, got `{assignment}`")))?;
        self.set(key.trim(), value.trim())
    }

    /// Parses configuration text on top of the defaults.
    pub fn parse_str(text: &str) -> std::result::Result<Self, (usize, Error)> {
        let mut cfg = SimConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            cfg.apply_override(line).map_err(|e| (i + 1, e))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.to_owned(),
            source,
        })?;
        SimConfig::parse_str(&text).map_err(|(line, e)| Error::ConfigFile {
            path: path.to_owned(),
            line,
            message: match e {
                Error::Config(msg) => msg,
                other => other.to_string(),
            },
        })
    }

    /// Renders every key in file format; parsing the output gives back `self`.
    pub fn to_config_string(&self) -> String {
        let (s, p, q, k) = (&self.scenario, &self.power, &self.qos, &self.links);
        let mut out = String::new();
        let mut put = |key: &str, value: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{key} = {value}");
        };
        put("cell_radius_m", &s.cell_radius_m);
        put("num_cues", &s.num_cues);
        put("num_dcs", &s.num_dcs);
        put("sms_per_dc", &s.sms_per_dc);
        put("max_sm_dc_distance_m", &s.max_sm_dc_distance_m);
        put("dc_enb_distance_m", &s.dc_enb_distance_m);
        put("rng_seed", &s.rng_seed);
        put("cue_tx_dbm", &p.cue_tx_dbm);
        put("sm_tx_dbm", &p.sm_tx_dbm);
        put("noise_psd_dbm_hz", &p.noise_psd_dbm_hz);
        put("rb_bandwidth_hz", &p.rb_bandwidth_hz);
        put("cue_sinr_min_db", &q.cue_sinr_min_db);
        put("cue_sinr_max_db", &q.cue_sinr_max_db);
        put("sm_sinr_db", &q.sm_sinr_db);
        put("link_cue_enb", &k.cue_enb);
        put("link_sm_enb", &k.sm_enb);
        put("link_sm_dc", &k.sm_dc);
        put("link_cue_dc", &k.cue_dc);
        out
    }
}
