//! From-scratch constraint checker for allocation matrices.
//!
//! Deliberately shares no code with the allocator: SINRs are recomputed by
//! summing over the whole matrix instead of per-channel occupant lists.

use std::fmt;

use crate::channel::{linear_to_db, GainTable, PowerLevels};
use crate::grid::{AllocationMatrix, ReuseMatrix};
use crate::interference::QosProfile;

/// Relative slack granted at SINR thresholds to absorb summation-order
/// rounding.
pub const SINR_REL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Two SMs of one DC share a channel.
    SharedWithinDc {
        dc: usize,
        channel: usize,
        count: usize,
    },
    /// One SM holds more than one channel.
    MultipleChannels {
        dc: usize,
        sm: usize,
        count: usize,
    },
    /// An assignment that is not a reuse candidate.
    NotACandidate {
        dc: usize,
        sm: usize,
        channel: usize,
    },
    CueSinr {
        channel: usize,
        sinr: f64,
        required: f64,
    },
    SmSinr {
        dc: usize,
        sm: usize,
        channel: usize,
        sinr: f64,
        required: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::SharedWithinDc { dc, channel, count } => {
                write!(f, "DC {dc} has {count} SMs on channel {channel}")
            }
            Violation::MultipleChannels { dc, sm, count } => {
                write!(f, "SM {dc}:{sm} holds {count} channels")
            }
            Violation::NotACandidate { dc, sm, channel } => {
                write!(f, "SM {dc}:{sm} assigned to non-candidate channel {channel}")
            }
            Violation::CueSinr {
                channel,
                sinr,
                required,
            } => write!(
                f,
                "CUE {channel} SINR {:.3} dB below {:.3} dB",
                linear_to_db(sinr),
                linear_to_db(required)
            ),
            Violation::SmSinr {
                dc,
                sm,
                channel,
                sinr,
                required,
            } => write!(
                f,
                "SM {dc}:{sm} on channel {channel} SINR {:.3} dB below {:.3} dB",
                linear_to_db(sinr),
                linear_to_db(required)
            ),
        }
    }
}

fn meets(sinr: f64, required: f64) -> bool {
    sinr >= required * (1.0 - SINR_REL_TOLERANCE)
}

/// Checks the DC-exclusivity and single-channel constraints, support in `r`
/// when given, and the SINR of every accepted SM and of every CUE whose
/// channel is reused. Returns every violation.
pub fn check_allocation(
    a: &AllocationMatrix,
    r: Option<&ReuseMatrix>,
    gains: &GainTable,
    pw: &PowerLevels,
    qos: &QosProfile,
) -> Vec<Violation> {
    let dims = a.dims();
    let mut out = Vec::new();

    for l in 0..dims.dcs {
        for m in 0..dims.cues {
            let count = (0..dims.sms_per_dc).filter(|&n| a.get(l, n, m)).count();
            if count > 1 {
                out.push(Violation::SharedWithinDc {
                    dc: l,
                    channel: m,
                    count,
                });
            }
        }
    }
    for (l, n) in dims.sms() {
        let count = a.row_sum(l, n);
        if count > 1 {
            out.push(Violation::MultipleChannels { dc: l, sm: n, count });
        }
    }
    if let Some(r) = r {
        for (l, n, m) in a.ones() {
            if !r.get(l, n, m) {
                out.push(Violation::NotACandidate {
                    dc: l,
                    sm: n,
                    channel: m,
                });
            }
        }
    }

    // A CUE that misses its threshold in isolation is not an allocation
    // fault, so only channels carrying reuse are checked.
    for m in 0..dims.cues {
        let mut interference = 0.0;
        let mut reused = false;
        for l in 0..dims.dcs {
            for n in 0..dims.sms_per_dc {
                if a.get(l, n, m) {
                    interference += pw.sm_tx_mw * gains.sm_enb(l, n);
                    reused = true;
                }
            }
        }
        if !reused {
            continue;
        }
        let sinr = pw.cue_tx_mw * gains.cue_enb(m) / (pw.noise_mw + interference);
        if !meets(sinr, qos.cue_sinr[m]) {
            out.push(Violation::CueSinr {
                channel: m,
                sinr,
                required: qos.cue_sinr[m],
            });
        }
    }

    for (l, n, m) in a.ones() {
        let mut interference = pw.cue_tx_mw * gains.cue_dc(m, l) + pw.noise_mw;
        for k in (0..dims.dcs).filter(|&k| k != l) {
            for x in 0..dims.sms_per_dc {
                if a.get(k, x, m) {
                    interference += pw.sm_tx_mw * gains.sm_dc(k, x, l);
                }
            }
        }
        let sinr = pw.sm_tx_mw * gains.desired(l, n) / interference;
        if !meets(sinr, qos.sm_sinr) {
            out.push(Violation::SmSinr {
                dc: l,
                sm: n,
                channel: m,
                sinr,
                required: qos.sm_sinr,
            });
        }
    }
    out
}
