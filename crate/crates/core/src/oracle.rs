//! Exact maximum-acceptance allocation for small instances.
//!
//! Depth-first search over one choice per SM (a candidate channel or none),
//! in row order, trying channels in ascending order before "none". Branches
//! are cut when a DC already uses the channel, when adding the SM breaks an
//! SINR constraint on that channel (interference only grows as SMs are
//! added, so the branch can never recover), or when accepting every
//! remaining SM with a candidate still could not beat the incumbent.
//!
//! Because incumbents are only replaced by strictly better leaves, the result
//! is the lexicographically smallest optimal choice vector, with "none"
//! ordered after every channel.

use crate::allocator::channel_is_feasible;
use crate::channel::{GainTable, PowerLevels};
use crate::error::{Error, Result};
use crate::grid::{AllocationMatrix, ReuseMatrix};
use crate::interference::QosProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_sms: usize,
    pub max_cues: usize,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_sms: 8,
            max_cues: 6,
            node_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub allocation: AllocationMatrix,
    pub accepted: usize,
    /// Search nodes visited.
    pub nodes: u64,
}

struct Search<'a> {
    gains: &'a GainTable,
    pw: &'a PowerLevels,
    qos: &'a QosProfile,
    sms: Vec<(usize, usize)>,
    candidates: Vec<Vec<usize>>,
    /// Number of SMs from index `i` onwards that have at least one candidate.
    reachable_from: Vec<usize>,
    /// `used[l][m]`: DC `l` already occupies channel `m`.
    used: Vec<Vec<bool>>,
    channels: Vec<Vec<(usize, usize)>>,
    choice: Vec<Option<usize>>,
    best: Option<(usize, Vec<Option<usize>>)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn visit(&mut self, i: usize, accepted: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudgetExhausted(self.budget));
        }
        if let Some((best, _)) = &self.best {
            if accepted + self.reachable_from[i] <= *best {
                return Ok(());
            }
        }
        if i == self.sms.len() {
            self.best = Some((accepted, self.choice.clone()));
            return Ok(());
        }

        let (l, n) = self.sms[i];
        for c in 0..self.candidates[i].len() {
            let m = self.candidates[i][c];
            if self.used[l][m] {
                continue;
            }
            // `sms` is in row order, so pushing keeps each channel list sorted
            self.channels[m].push((l, n));
            if channel_is_feasible(m, &self.channels[m], self.gains, self.pw, self.qos) {
                self.used[l][m] = true;
                self.choice[i] = Some(m);
                let res = self.visit(i + 1, accepted + 1);
                self.choice[i] = None;
                self.used[l][m] = false;
                if let Err(e) = res {
                    self.channels[m].pop();
                    return Err(e);
                }
            }
            self.channels[m].pop();
        }
        self.visit(i + 1, accepted)
    }
}

pub fn solve_exact(
    r: &ReuseMatrix,
    gains: &GainTable,
    pw: &PowerLevels,
    qos: &QosProfile,
    limits: &OracleLimits,
) -> Result<OracleSolution> {
    let dims = r.dims();
    if dims.num_sms() > limits.max_sms || dims.cues > limits.max_cues {
        return Err(Error::InstanceTooLarge {
            sms: dims.num_sms(),
            cues: dims.cues,
            max_sms: limits.max_sms,
            max_cues: limits.max_cues,
        });
    }

    let sms: Vec<_> = dims.sms().collect();
    let candidates: Vec<Vec<usize>> = sms.iter().map(|&(l, n)| r.candidates(l, n).collect()).collect();
    let mut reachable_from = vec![0; sms.len() + 1];
    for i in (0..sms.len()).rev() {
        reachable_from[i] = reachable_from[i + 1] + usize::from(!candidates[i].is_empty());
    }

    let mut search = Search {
        gains,
        pw,
        qos,
        candidates,
        reachable_from,
        used: vec![vec![false; dims.cues]; dims.dcs],
        channels: vec![Vec::new(); dims.cues],
        choice: vec![None; sms.len()],
        sms,
        best: None,
        nodes: 0,
        budget: limits.node_budget,
    };
    search.visit(0, 0)?;

    let (accepted, choice) = search.best.expect("the all-none leaf is always reached");
    Ok(OracleSolution {
        allocation: AllocationMatrix::from_choices(dims, &choice),
        accepted,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Dims;

    fn levels() -> PowerLevels {
        PowerLevels {
            cue_tx_mw: 1.0,
            sm_tx_mw: 1.0,
            noise_mw: 1.0,
        }
    }

    #[test]
    fn all_zero_reuse() {
        let dims = Dims::new(2, 1, 2);
        let g = GainTable::from_parts(dims, vec![1.0; 2], vec![0.0; 2], vec![1.0; 2], vec![0.0; 2]).unwrap();
        let qos = QosProfile {
            cue_sinr: vec![0.5; 2],
            sm_sinr: 0.5,
        };
        let sol = solve_exact(&ReuseMatrix::zeros(dims), &g, &levels(), &qos, &OracleLimits::default()).unwrap();
        assert_eq!(sol.accepted, 0);
        assert_eq!(sol.allocation, AllocationMatrix::zeros(dims));
    }

    #[test]
    fn single_feasible_pair() {
        let dims = Dims::new(1, 1, 1);
        let g = GainTable::from_parts(dims, vec![10.0], vec![1.0], vec![10.0], vec![1.0]).unwrap();
        let qos = QosProfile {
            cue_sinr: vec![2.0],
            sm_sinr: 2.0,
        };
        let mut r = ReuseMatrix::zeros(dims);
        r.set(0, 0, 0, true);
        let sol = solve_exact(&r, &g, &levels(), &qos, &OracleLimits::default()).unwrap();
        assert_eq!(sol.accepted, 1);
        assert_eq!(sol.allocation.channel_of(0, 0), Some(0));
    }

    #[test]
    fn size_and_budget_errors() {
        let dims = Dims::new(7, 1, 1);
        let g = GainTable::from_parts(dims, vec![1.0; 7], vec![0.0], vec![1.0], vec![0.0; 7]).unwrap();
        let qos = QosProfile {
            cue_sinr: vec![0.1; 7],
            sm_sinr: 0.1,
        };
        let r = ReuseMatrix::zeros(dims);
        assert!(matches!(
            solve_exact(&r, &g, &levels(), &qos, &OracleLimits::default()),
            Err(Error::InstanceTooLarge { cues: 7, .. })
        ));

        let dims = Dims::new(3, 2, 3);
        let g = GainTable::from_parts(dims, vec![10.0; 3], vec![0.0; 6], vec![10.0; 12], vec![0.0; 6]).unwrap();
        let qos = QosProfile {
            cue_sinr: vec![0.1; 3],
            sm_sinr: 0.1,
        };
        let mut r = ReuseMatrix::zeros(dims);
        for (l, n) in dims.sms() {
            for m in 0..3 {
                r.set(l, n, m, true);
            }
        }
        let tight = OracleLimits {
            node_budget: 5,
            ..OracleLimits::default()
        };
        assert!(matches!(
            solve_exact(&r, &g, &levels(), &qos, &tight),
            Err(Error::NodeBudgetExhausted(5))
        ));
        assert_eq!(
            solve_exact(&r, &g, &levels(), &qos, &OracleLimits::default())
                .unwrap()
                .accepted,
            6
        );
    }

    #[test]
    fn lexicographic_tie_break() {
        // two interchangeable channels for one SM
        let dims = Dims::new(2, 1, 1);
        let g = GainTable::from_parts(dims, vec![10.0; 2], vec![0.0], vec![10.0], vec![0.0; 2]).unwrap();
        let qos = QosProfile {
            cue_sinr: vec![1.0; 2],
            sm_sinr: 1.0,
        };
        let mut r = ReuseMatrix::zeros(dims);
        r.set(0, 0, 0, true);
        r.set(0, 0, 1, true);
        let sol = solve_exact(&r, &g, &levels(), &qos, &OracleLimits::default()).unwrap();
        assert_eq!(sol.allocation.channel_of(0, 0), Some(0));
    }
}
