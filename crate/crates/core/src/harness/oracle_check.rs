//! Greedy allocation versus the exact optimum on small random instances.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{simulate_drop, SimConfig};
use crate::allocator::allocate;
use crate::channel::{GainTable, PowerLevels};
use crate::error::Result;
use crate::feasibility::check_allocation;
use crate::grid::ReuseMatrix;
use crate::interference::QosProfile;
use crate::oracle::{solve_exact, OracleLimits};
use crate::topology::drop_rng;

const SMALL_INSTANCE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleComparison {
    pub greedy: usize,
    pub optimum: usize,
    /// No channel is a candidate for two SMs.
    pub disjoint: bool,
    pub greedy_feasible: bool,
    pub oracle_feasible: bool,
}

pub fn compare_with_oracle(
    r: &ReuseMatrix,
    gains: &GainTable,
    pw: &PowerLevels,
    qos: &QosProfile,
    limits: &OracleLimits,
) -> Result<OracleComparison> {
    let greedy = allocate(r, gains, pw, qos);
    let exact = solve_exact(r, gains, pw, qos, limits)?;
    Ok(OracleComparison {
        greedy: greedy.count_ones(),
        optimum: exact.accepted,
        disjoint: r.has_disjoint_candidates(),
        greedy_feasible: check_allocation(&greedy, Some(r), gains, pw, qos).is_empty(),
        oracle_feasible: check_allocation(&exact.allocation, Some(r), gains, pw, qos).is_empty(),
    })
}

/// A random small scenario (at most 6 SMs and 5 CUEs) with randomised
/// geometry and CUE SINR range.
pub fn small_instance(seed: u64, index: u64) -> SimConfig {
    let mut rng = drop_rng(seed ^ SMALL_INSTANCE_SALT, index);
    let mut cfg = SimConfig::default();
    let s = &mut cfg.scenario;
    s.num_dcs = rng.gen_range(1..=3);
    s.sms_per_dc = rng.gen_range(1..=6 / s.num_dcs);
    s.num_cues = rng.gen_range(1..=5);
    s.cell_radius_m = rng.gen_range(150.0..500.0);
    s.dc_enb_distance_m = rng.gen_range(0.3..0.9) * s.cell_radius_m;
    s.max_sm_dc_distance_m = rng.gen_range(20.0..150.0);
    s.rng_seed = rng.gen();
    let low = rng.gen_range(0.0..20.0);
    cfg.qos.cue_sinr_min_db = low;
    cfg.qos.cue_sinr_max_db = low + rng.gen_range(0.0..10.0);
    cfg
}

/// Keeps, for every channel, only one randomly chosen SM among those that
/// list it, so that candidate sets become pairwise disjoint.
pub fn make_disjoint<R: Rng + ?Sized>(r: &ReuseMatrix, rng: &mut R) -> ReuseMatrix {
    let dims = r.dims();
    let mut out = ReuseMatrix::zeros(dims);
    for m in 0..dims.cues {
        let holders: Vec<_> = dims.sms().filter(|&(l, n)| r.get(l, n, m)).collect();
        if let Some(&(l, n)) = holders.choose(rng) {
            out.set(l, n, m, true);
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleReport {
    /// Two per instance: the raw and the masked candidate matrix.
    pub comparisons: usize,
    /// Comparisons where greedy accepted more SMs than the optimum.
    pub dominance_violations: usize,
    pub infeasible: usize,
    pub disjoint_comparisons: usize,
    /// Disjoint comparisons where greedy fell short of the optimum.
    pub disjoint_mismatches: usize,
    /// Comparisons where greedy fell short of the optimum.
    pub suboptimal: usize,
    /// Mean of greedy / optimum over comparisons with a non-zero optimum.
    pub mean_ratio: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.dominance_violations == 0 && self.infeasible == 0 && self.disjoint_mismatches == 0
    }
}

/// Compares greedy and exact allocation on `instances` random small
/// scenarios, plus a disjoint-candidate variant of each.
pub fn verify_oracle(seed: u64, instances: u64, limits: &OracleLimits) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let mut ratios = Vec::new();
    for i in 0..instances {
        let cfg = small_instance(seed, i);
        let drop = simulate_drop(&cfg, 0)?;
        let masked = make_disjoint(&drop.reuse, &mut drop_rng(cfg.scenario.rng_seed, 1));
        for r in [&drop.reuse, &masked] {
            let cmp = compare_with_oracle(r, &drop.gains, &drop.power, &drop.qos, limits)?;
            report.comparisons += 1;
            report.dominance_violations += usize::from(cmp.greedy > cmp.optimum);
            report.suboptimal += usize::from(cmp.greedy < cmp.optimum);
            report.infeasible += usize::from(!cmp.greedy_feasible || !cmp.oracle_feasible);
            if cmp.disjoint {
                report.disjoint_comparisons += 1;
                report.disjoint_mismatches += usize::from(cmp.greedy != cmp.optimum);
            }
            if cmp.optimum > 0 {
                ratios.push(cmp.greedy as f64 / cmp.optimum as f64);
            }
        }
    }
    report.mean_ratio = if ratios.is_empty() {
        1.0
    } else {
        ratios.iter().sum::<f64>() / ratios.len() as f64
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_fit_the_oracle() {
        let limits = OracleLimits::default();
        for i in 0..200 {
            let cfg = small_instance(3, i);
            let d = cfg.scenario.dims();
            assert!(d.num_sms() <= 6 && d.cues <= 5);
            assert!(d.num_sms() <= limits.max_sms);
            cfg.validate().unwrap();
        }
    }

    #[test]
    fn masking_yields_disjoint_subset() {
        let mut cfg = small_instance(9, 0);
        cfg.scenario.sms_per_dc = 2;
        cfg.scenario.num_dcs = 3;
        let drop = simulate_drop(&cfg, 0).unwrap();
        let masked = make_disjoint(&drop.reuse, &mut drop_rng(1, 1));
        assert!(masked.has_disjoint_candidates());
        assert!(masked.is_subset_of(&drop.reuse));
    }

    #[test]
    fn short_verification_passes() {
        let report = verify_oracle(11, 40, &OracleLimits::default()).unwrap();
        assert_eq!(report.comparisons, 80);
        assert!(report.passed(), "{report:?}");
        assert!(report.disjoint_comparisons >= 40);
    }
}
