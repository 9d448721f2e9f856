//! Path loss, power units and the per-drop channel gain table.
//!
//! Power arithmetic inside the crate is done in linear milliwatts; dBm and dB
//! only appear in configuration and reports.

use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::Dims;
use crate::topology::{link_distance, Topology};

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Macro-cell path loss in dB, `128.1 + 37.6 log10(d_km)`.
pub fn path_loss_cellular(distance_m: f64) -> f64 {
    128.1 + 37.6 * (distance_m / 1000.0).log10()
}

/// Device-to-device path loss in dB, `148 + 40 log10(d_km)`.
pub fn path_loss_d2d(distance_m: f64) -> f64 {
    148.0 + 40.0 * (distance_m / 1000.0).log10()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathLossModel {
    Cellular,
    D2d,
}

impl PathLossModel {
    pub fn loss_db(self, distance_m: f64) -> f64 {
        match self {
            PathLossModel::Cellular => path_loss_cellular(distance_m),
            PathLossModel::D2d => path_loss_d2d(distance_m),
        }
    }

    pub fn gain(self, distance_m: f64) -> f64 {
        db_to_linear(-self.loss_db(distance_m))
    }
}

impl FromStr for PathLossModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cellular" => Ok(PathLossModel::Cellular),
            "d2d" => Ok(PathLossModel::D2d),
            other => Err(Error::config(format!(
                "unknown path-loss model `{other}` (expected cellular or d2d)"
            ))),
        }
    }
}

impl std::fmt::Display for PathLossModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PathLossModel::Cellular => "cellular",
            PathLossModel::D2d => "d2d",
        })
    }
}

/// Path-loss model per link class.
///
/// By default only the CUE uplink uses the cellular model. Every link with a
/// smart meter or a DC at either end is treated as a device-level D2D link,
/// including SM interference arriving at the eNB.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkModels {
    pub cue_enb: PathLossModel,
    pub sm_enb: PathLossModel,
    /// SM to DC, for both the serving link and cross links to other DCs.
    pub sm_dc: PathLossModel,
    pub cue_dc: PathLossModel,
}

impl Default for LinkModels {
    fn default() -> Self {
        LinkModels {
            cue_enb: PathLossModel::Cellular,
            sm_enb: PathLossModel::D2d,
            sm_dc: PathLossModel::D2d,
            cue_dc: PathLossModel::D2d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerConfig {
    pub cue_tx_dbm: f64,
    pub sm_tx_dbm: f64,
    pub noise_psd_dbm_hz: f64,
    pub rb_bandwidth_hz: f64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            cue_tx_dbm: 24.0,
            sm_tx_dbm: 24.0,
            noise_psd_dbm_hz: -174.0,
            rb_bandwidth_hz: 180e3,
        }
    }
}

impl PowerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cue_tx_dbm.is_finite() && self.sm_tx_dbm.is_finite() && self.noise_psd_dbm_hz.is_finite()) {
            return Err(Error::config("transmit powers and noise density must be finite"));
        }
        if !(self.rb_bandwidth_hz.is_finite() && self.rb_bandwidth_hz > 0.0) {
            return Err(Error::config("rb_bandwidth_hz must be positive"));
        }
        Ok(())
    }

    /// Noise power in one resource block, identical on every channel.
    pub fn noise_dbm(&self) -> f64 {
        self.noise_psd_dbm_hz + 10.0 * self.rb_bandwidth_hz.log10()
    }

    pub fn levels(&self) -> PowerLevels {
        PowerLevels {
            cue_tx_mw: dbm_to_mw(self.cue_tx_dbm),
            sm_tx_mw: dbm_to_mw(self.sm_tx_dbm),
            noise_mw: dbm_to_mw(self.noise_dbm()),
        }
    }
}

/// Linear transmit and noise powers (mW) used by every SINR evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLevels {
    pub cue_tx_mw: f64,
    pub sm_tx_mw: f64,
    pub noise_mw: f64,
}

/// Linear channel gains for every link class of one drop. Gains are
/// frequency-flat, so one value per link serves every channel.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTable {
    dims: Dims,
    cue_enb: Vec<f64>,
    sm_enb: Vec<f64>,
    /// Indexed `[(k * N + x) * L + l]`: SM `x` of DC `k` towards DC `l`.
    sm_dc: Vec<f64>,
    /// Indexed `[m * L + l]`.
    cue_dc: Vec<f64>,
}

impl GainTable {
    /// Assembles a table from explicit gains, laid out as the accessors
    /// index them. Gains must be finite and non-negative.
    pub fn from_parts(
        dims: Dims,
        cue_enb: Vec<f64>,
        sm_enb: Vec<f64>,
        sm_dc: Vec<f64>,
        cue_dc: Vec<f64>,
    ) -> Result<Self> {
        let expect = [
            ("cue_enb", cue_enb.len(), dims.cues),
            ("sm_enb", sm_enb.len(), dims.num_sms()),
            ("sm_dc", sm_dc.len(), dims.num_sms() * dims.dcs),
            ("cue_dc", cue_dc.len(), dims.cues * dims.dcs),
        ];
        for (name, got, want) in expect {
            if got != want {
                return Err(Error::config(format!("{name}: expected {want} gains, got {got}")));
            }
        }
        let all = cue_enb.iter().chain(&sm_enb).chain(&sm_dc).chain(&cue_dc);
        if all.clone().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(Error::config("gains must be finite and non-negative"));
        }
        Ok(GainTable {
            dims,
            cue_enb,
            sm_enb,
            sm_dc,
            cue_dc,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// CUE `m` to the eNB.
    pub fn cue_enb(&self, m: usize) -> f64 {
        self.cue_enb[m]
    }

    /// SM `n` of DC `l` to the eNB.
    pub fn sm_enb(&self, l: usize, n: usize) -> f64 {
        self.sm_enb[self.dims.sm_index(l, n)]
    }

    /// SM `x` of DC `k` to DC `l`.
    pub fn sm_dc(&self, k: usize, x: usize, l: usize) -> f64 {
        self.sm_dc[self.dims.sm_index(k, x) * self.dims.dcs + l]
    }

    /// SM `n` of DC `l` to its own DC.
    pub fn desired(&self, l: usize, n: usize) -> f64 {
        self.sm_dc(l, n, l)
    }

    /// CUE `m` to DC `l`.
    pub fn cue_dc(&self, m: usize, l: usize) -> f64 {
        self.cue_dc[m * self.dims.dcs + l]
    }

    /// Writes `tx_kind,tx_idx,rx_kind,rx_idx,gain_linear`; SMs are
    /// identified as `l:n`.
    pub fn write_table<W: Write>(&self, mut out: W) -> io::Result<()> {
        let d = self.dims;
        writeln!(out, "tx_kind,tx_idx,rx_kind,rx_idx,gain_linear")?;
        for m in 0..d.cues {
            writeln!(out, "CUE,{m},ENB,0,{:e}", self.cue_enb(m))?;
            for l in 0..d.dcs {
                writeln!(out, "CUE,{m},DC,{l},{:e}", self.cue_dc(m, l))?;
            }
        }
        for (k, x) in d.sms() {
            writeln!(out, "SM,{k}:{x},ENB,0,{:e}", self.sm_enb(k, x))?;
            for l in 0..d.dcs {
                writeln!(out, "SM,{k}:{x},DC,{l},{:e}", self.sm_dc(k, x, l))?;
            }
        }
        Ok(())
    }
}

pub fn build_gain_table(topo: &Topology, models: &LinkModels) -> GainTable {
    let dims = topo.dims();
    let cue_enb = topo
        .cues
        .iter()
        .map(|&c| models.cue_enb.gain(link_distance(c, topo.enb)))
        .collect();
    let mut sm_enb = Vec::with_capacity(dims.num_sms());
    let mut sm_dc = Vec::with_capacity(dims.num_sms() * dims.dcs);
    for (k, x) in dims.sms() {
        let sm = topo.sm(k, x);
        sm_enb.push(models.sm_enb.gain(link_distance(sm, topo.enb)));
        sm_dc.extend(topo.dcs.iter().map(|&dc| models.sm_dc.gain(link_distance(sm, dc))));
    }
    let cue_dc = topo
        .cues
        .iter()
        .flat_map(|&c| topo.dcs.iter().map(move |&dc| models.cue_dc.gain(link_distance(c, dc))))
        .collect();
    GainTable {
        dims,
        cue_enb,
        sm_enb,
        sm_dc,
        cue_dc,
    }
}
