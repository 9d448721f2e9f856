//! Access rate, throughput gain and Monte-Carlo summaries.

use crate::allocator::{cue_sinr, sm_sinr};
use crate::channel::{linear_to_db, GainTable, PowerLevels};
use crate::grid::{AllocationMatrix, Dims};

/// SINR of one accepted SM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmSinr {
    pub dc: usize,
    pub sm: usize,
    pub channel: usize,
    pub sinr_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DropMetrics {
    pub access_rate: f64,
    /// bit/s/Hz, summed over channels.
    pub throughput_gain: f64,
    pub accepted_sms: usize,
    pub per_cue_sinr_db: Vec<f64>,
    pub per_sm_sinr_db: Vec<SmSinr>,
}

impl DropMetrics {
    pub fn compute(a: &AllocationMatrix, gains: &GainTable, pw: &PowerLevels) -> Self {
        let dims = a.dims();
        let mut per_cue_sinr_db = Vec::with_capacity(dims.cues);
        let mut per_sm_sinr_db = Vec::new();
        for m in 0..dims.cues {
            let occupants = a.occupants(m);
            per_cue_sinr_db.push(linear_to_db(cue_sinr(m, &occupants, gains, pw)));
            for &(l, n) in &occupants {
                per_sm_sinr_db.push(SmSinr {
                    dc: l,
                    sm: n,
                    channel: m,
                    sinr_db: linear_to_db(sm_sinr(l, n, m, &occupants, gains, pw)),
                });
            }
        }
        per_sm_sinr_db.sort_by_key(|s| (s.dc, s.sm, s.channel));
        DropMetrics {
            access_rate: access_rate(a, dims),
            throughput_gain: throughput_gain(a, gains, pw),
            accepted_sms: accepted_count(a),
            per_cue_sinr_db,
            per_sm_sinr_db,
        }
    }
}

/// Number of one-entries, i.e. accepted SMs in a constraint-respecting matrix.
fn accepted_count(a: &AllocationMatrix) -> usize {
    a.count_ones()
}

/// Accepted SMs over all SMs; zero when there are no SMs.
pub fn access_rate(a: &AllocationMatrix, dims: Dims) -> f64 {
    match dims.num_sms() {
        0 => 0.0,
        total => accepted_count(a) as f64 / total as f64,
    }
}

/// Net spectral-efficiency change from reuse: the CUE rates after reuse,
/// plus the accepted SMs' rates, minus the CUE rates without reuse.
pub fn throughput_gain(a: &AllocationMatrix, gains: &GainTable, pw: &PowerLevels) -> f64 {
    let dims = a.dims();
    let channels: Vec<_> = (0..dims.cues).map(|m| a.occupants(m)).collect();
    let cue_after: f64 = channels
        .iter()
        .enumerate()
        .map(|(m, occ)| (1.0 + cue_sinr(m, occ, gains, pw)).log2())
        .sum();
    let sm_rates: f64 = a
        .ones()
        .map(|(l, n, m)| (1.0 + sm_sinr(l, n, m, &channels[m], gains, pw)).log2())
        .sum();
    let cue_before: f64 = (0..dims.cues).map(|m| (1.0 + cue_sinr(m, &[], gains, pw)).log2()).sum();
    cue_after + sm_rates - cue_before
}

/// Throughput gain split by channel. Unused channels contribute exactly 0.
pub fn channel_throughput_gains(a: &AllocationMatrix, gains: &GainTable, pw: &PowerLevels) -> Vec<f64> {
    (0..a.dims().cues)
        .map(|m| {
            let occ = a.occupants(m);
            let sm: f64 = occ
                .iter()
                .map(|&(l, n)| (1.0 + sm_sinr(l, n, m, &occ, gains, pw)).log2())
                .sum();
            (1.0 + cue_sinr(m, &occ, gains, pw)).log2() - (1.0 + cue_sinr(m, &[], gains, pw)).log2() + sm
        })
        .collect()
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
}

impl Estimate {
    /// Standard error uses the unbiased sample variance; it is 0 for fewer
    /// than two samples.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Estimate {
                mean: f64::NAN,
                std_err: f64::NAN,
            };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        if n < 2 {
            return Estimate { mean, std_err: 0.0 };
        }
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Estimate {
            mean,
            std_err: (var / n as f64).sqrt(),
        }
    }
}
