//! Greedy fewest-edges-first matching of SMs onto reusable resource blocks.
//!
//! Each round picks the unprocessed SM with the fewest live candidates and
//! tries its candidate CUEs from the least contested upwards. A candidate is
//! committed only if, with the SM added, the CUE and every SM already on that
//! channel still meet their SINR thresholds. Committing channel `m` to a DC
//! removes `m` from the candidate lists of the DC's other SMs, and the degree
//! counts are updated from the live candidate matrix after every commit.
//!
//! Ties are broken towards the lowest `(l, n)` for SMs and the lowest `m`
//! for CUEs, so the result is a deterministic function of the inputs.

use crate::channel::{GainTable, PowerLevels};
use crate::grid::{AllocationMatrix, ReuseMatrix};
use crate::interference::QosProfile;

/// SINR at the eNB for CUE `m` with the listed SMs reusing its channel.
///
/// This is the one routine every module uses for the CUE side, so that
/// allocation checks and reported metrics agree bit for bit as long as the
/// occupants are listed in row order.
pub fn cue_sinr(m: usize, occupants: &[(usize, usize)], gains: &GainTable, pw: &PowerLevels) -> f64 {
    let interference: f64 = occupants.iter().map(|&(l, n)| pw.sm_tx_mw * gains.sm_enb(l, n)).sum();
    pw.cue_tx_mw * gains.cue_enb(m) / (pw.noise_mw + interference)
}

/// SINR at DC `l` for its SM `n` on channel `m`. Co-channel SMs of other DCs
/// interfere; the SM itself and same-DC entries are skipped.
pub fn sm_sinr(l: usize, n: usize, m: usize, occupants: &[(usize, usize)], gains: &GainTable, pw: &PowerLevels) -> f64 {
    let cross: f64 = occupants
        .iter()
        .filter(|&&(k, _)| k != l)
        .map(|&(k, x)| pw.sm_tx_mw * gains.sm_dc(k, x, l))
        .sum();
    pw.sm_tx_mw * gains.desired(l, n) / (pw.cue_tx_mw * gains.cue_dc(m, l) + cross + pw.noise_mw)
}

pub fn aggregate_sinr_cue(m: usize, a: &AllocationMatrix, gains: &GainTable, pw: &PowerLevels) -> f64 {
    cue_sinr(m, &a.occupants(m), gains, pw)
}

pub fn aggregate_sinr_sm(
    l: usize,
    n: usize,
    m: usize,
    a: &AllocationMatrix,
    gains: &GainTable,
    pw: &PowerLevels,
) -> f64 {
    sm_sinr(l, n, m, &a.occupants(m), gains, pw)
}

/// `true` when CUE `m` and every listed SM meet their thresholds.
pub fn channel_is_feasible(
    m: usize,
    occupants: &[(usize, usize)],
    gains: &GainTable,
    pw: &PowerLevels,
    qos: &QosProfile,
) -> bool {
    cue_sinr(m, occupants, gains, pw) >= qos.cue_sinr[m]
        && occupants
            .iter()
            .all(|&(l, n)| sm_sinr(l, n, m, occupants, gains, pw) >= qos.sm_sinr)
}

/// Edge counts of the live candidate matrix. `sm[i] == None` marks an SM
/// that has already been processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCounts {
    pub cue: Vec<usize>,
    pub sm: Vec<Option<usize>>,
}

impl DegreeCounts {
    pub fn from_reuse(r: &ReuseMatrix) -> Self {
        let dims = r.dims();
        DegreeCounts {
            cue: (0..dims.cues).map(|m| r.column_sum(m)).collect(),
            sm: dims.sms().map(|(l, n)| Some(r.row_sum(l, n))).collect(),
        }
    }

    /// Flat index of the unprocessed SM with the fewest edges.
    fn next_sm(&self) -> Option<usize> {
        self.sm
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (d, i)))
            .min()
            .map(|(_, i)| i)
    }
}

pub fn allocate(r: &ReuseMatrix, gains: &GainTable, pw: &PowerLevels, qos: &QosProfile) -> AllocationMatrix {
    let dims = r.dims();
    let mut live = r.clone();
    let mut degrees = DegreeCounts::from_reuse(&live);
    let mut a = AllocationMatrix::zeros(dims);
    // SMs on each channel, kept in row order
    let mut channels: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dims.cues];

    while let Some(i) = degrees.next_sm() {
        let (l, n) = (i / dims.sms_per_dc, i % dims.sms_per_dc);
        let mut candidates: Vec<usize> = live.candidates(l, n).collect();
        candidates.sort_by_key(|&m| (degrees.cue[m], m));

        for m in candidates {
            let mut trial = channels[m].clone();
            let at = trial.partition_point(|&sm| sm < (l, n));
            trial.insert(at, (l, n));
            if !channel_is_feasible(m, &trial, gains, pw, qos) {
                continue;
            }
            debug_assert!(channels[m].iter().all(|&(k, _)| k != l));
            a.set(l, n, m, true);
            channels[m] = trial;
            for x in (0..dims.sms_per_dc).filter(|&x| x != n) {
                if live.get(l, x, m) {
                    live.set(l, x, m, false);
                    degrees.cue[m] -= 1;
                    if let Some(d) = degrees.sm[dims.sm_index(l, x)].as_mut() {
                        *d -= 1;
                    }
                }
            }
            break;
        }
        degrees.sm[i] = None;
    }
    a
}
