//! QoS thresholds, interference budgets and the pairwise reuse-candidate
//! matrix.

use rand::Rng;

use crate::channel::{db_to_linear, GainTable, PowerLevels};
use crate::error::{Error, Result};
use crate::grid::ReuseMatrix;

/// Minimum SINR requirements in linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct QosProfile {
    /// One threshold per CUE.
    pub cue_sinr: Vec<f64>,
    /// Common threshold for every SM.
    pub sm_sinr: f64,
}

impl QosProfile {
    pub fn from_db(cue_sinr_db: &[f64], sm_sinr_db: f64) -> Self {
        QosProfile {
            cue_sinr: cue_sinr_db.iter().map(|&db| db_to_linear(db)).collect(),
            sm_sinr: db_to_linear(sm_sinr_db),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && !v.is_nan();
        if self.cue_sinr.iter().all(|&v| ok(v)) && ok(self.sm_sinr) {
            Ok(())
        } else {
            Err(Error::config("SINR thresholds must be positive"))
        }
    }
}

/// How thresholds are drawn for a drop: each CUE gets an independent
/// uniform dB value in `[cue_sinr_min_db, cue_sinr_max_db]`; SMs share one.
#[derive(Debug, Clone, PartialEq)]
pub struct QosSettings {
    pub cue_sinr_min_db: f64,
    pub cue_sinr_max_db: f64,
    pub sm_sinr_db: f64,
}

impl Default for QosSettings {
    fn default() -> Self {
        QosSettings {
            cue_sinr_min_db: 0.0,
            cue_sinr_max_db: 25.0,
            sm_sinr_db: 5.0,
        }
    }
}

impl QosSettings {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.cue_sinr_min_db, self.cue_sinr_max_db, self.sm_sinr_db]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.cue_sinr_min_db > self.cue_sinr_max_db {
            return Err(Error::config("CUE SINR range must be finite with min <= max"));
        }
        Ok(())
    }

    pub fn draw<R: Rng + ?Sized>(&self, num_cues: usize, rng: &mut R) -> QosProfile {
        let span = self.cue_sinr_max_db - self.cue_sinr_min_db;
        let cue_db: Vec<f64> = (0..num_cues)
            .map(|_| self.cue_sinr_min_db + span * rng.gen::<f64>())
            .collect();
        QosProfile::from_db(&cue_db, self.sm_sinr_db)
    }
}

/// Largest aggregate interference (mW) each receiver tolerates. Negative
/// entries mean the desired link misses its threshold even without reuse.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceBudget {
    /// At the eNB, per CUE.
    pub cue: Vec<f64>,
    /// At the serving DC, per SM in row order.
    pub sm: Vec<f64>,
}

impl InterferenceBudget {
    pub fn compute(gains: &GainTable, pw: &PowerLevels, qos: &QosProfile) -> Self {
        InterferenceBudget {
            cue: compute_cue_budgets(gains, pw, qos),
            sm: compute_sm_budgets(gains, pw, qos),
        }
    }
}

/// `P_c * h_m,eNB / gamma_c[m] - W` for every CUE.
pub fn compute_cue_budgets(gains: &GainTable, pw: &PowerLevels, qos: &QosProfile) -> Vec<f64> {
    (0..gains.dims().cues)
        .map(|m| pw.cue_tx_mw * gains.cue_enb(m) / qos.cue_sinr[m] - pw.noise_mw)
        .collect()
}

/// `P_s * h_n,l / gamma_s - W` for every SM.
pub fn compute_sm_budgets(gains: &GainTable, pw: &PowerLevels, qos: &QosProfile) -> Vec<f64> {
    gains
        .dims()
        .sms()
        .map(|(l, n)| pw.sm_tx_mw * gains.desired(l, n) / qos.sm_sinr - pw.noise_mw)
        .collect()
}

/// Marks CUE `m` as a candidate for SM `(l, n)` when the SM alone fits in
/// the CUE's budget and the CUE alone fits in the SM's budget.
pub fn compute_reuse_matrix(gains: &GainTable, pw: &PowerLevels, budgets: &InterferenceBudget) -> ReuseMatrix {
    let dims = gains.dims();
    let mut r = ReuseMatrix::zeros(dims);
    for (l, n) in dims.sms() {
        let sm_budget = budgets.sm[dims.sm_index(l, n)];
        let sm_to_enb = pw.sm_tx_mw * gains.sm_enb(l, n);
        for m in 0..dims.cues {
            if sm_to_enb <= budgets.cue[m] && pw.cue_tx_mw * gains.cue_dc(m, l) <= sm_budget {
                r.set(l, n, m, true);
            }
        }
    }
    r
}
