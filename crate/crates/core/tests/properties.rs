//! Randomised properties over synthetic gain tables.

use amisim::metrics::channel_throughput_gains;
use amisim::{
    allocate, check_allocation, compute_reuse_matrix, solve_exact, throughput_gain, AllocationMatrix, Dims, GainTable,
    InterferenceBudget, OracleLimits, PowerLevels, QosProfile, ReuseMatrix,
};
use proptest::prelude::*;

const PW: PowerLevels = PowerLevels {
    cue_tx_mw: 1.0,
    sm_tx_mw: 1.0,
    noise_mw: 1.0,
};

#[derive(Debug, Clone)]
struct Instance {
    gains: GainTable,
    qos: QosProfile,
}

impl Instance {
    fn dims(&self) -> Dims {
        self.gains.dims()
    }

    fn reuse(&self) -> ReuseMatrix {
        compute_reuse_matrix(
            &self.gains,
            &PW,
            &InterferenceBudget::compute(&self.gains, &PW, &self.qos),
        )
    }
}

/// Gains spread over four decades around the unit noise floor, so that
/// thresholds bind some of the time and not always.
fn gain() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

fn instance(max_dcs: usize, max_n: usize, max_cues: usize) -> impl Strategy<Value = Instance> {
    (1..=max_dcs, 1..=max_n, 1..=max_cues)
        .prop_flat_map(|(dcs, n, cues)| {
            let dims = Dims::new(cues, dcs, n);
            let sms = dims.num_sms();
            (
                Just(dims),
                prop::collection::vec((0.0f64..30.0).prop_map(|g| 10f64.powf(g / 10.0) * 2.0), cues),
                prop::collection::vec(gain(), sms),
                prop::collection::vec(gain(), sms * dcs),
                prop::collection::vec(gain(), cues * dcs),
                prop::collection::vec(0.0f64..15.0, cues),
                0.0f64..8.0,
            )
        })
        .prop_map(|(dims, cue_enb, sm_enb, mut sm_dc, cue_dc, cue_db, sm_db)| {
            // make serving links stronger than cross links on average
            for (l, n) in dims.sms() {
                sm_dc[(l * dims.sms_per_dc + n) * dims.dcs + l] *= 30.0;
            }
            Instance {
                gains: GainTable::from_parts(dims, cue_enb, sm_enb, sm_dc, cue_dc).unwrap(),
                qos: QosProfile::from_db(&cue_db, sm_db),
            }
        })
}

fn zero_interference(inst: &Instance) -> Instance {
    let dims = inst.dims();
    let mut sm_dc = vec![0.0; dims.num_sms() * dims.dcs];
    for (l, n) in dims.sms() {
        sm_dc[(l * dims.sms_per_dc + n) * dims.dcs + l] = inst.gains.desired(l, n);
    }
    let cue_enb = (0..dims.cues).map(|m| inst.gains.cue_enb(m)).collect();
    Instance {
        gains: GainTable::from_parts(
            dims,
            cue_enb,
            vec![0.0; dims.num_sms()],
            sm_dc,
            vec![0.0; dims.cues * dims.dcs],
        )
        .unwrap(),
        qos: inst.qos.clone(),
    }
}

/// Maximum bipartite matching between one DC's SMs and their candidate
/// channels (Kuhn's augmenting paths).
fn dc_matching(r: &ReuseMatrix, l: usize) -> usize {
    let dims = r.dims();
    fn augment(r: &ReuseMatrix, l: usize, n: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for m in r.candidates(l, n) {
            if !seen[m] {
                seen[m] = true;
                if owner[m].is_none_or(|o| augment(r, l, o, seen, owner)) {
                    owner[m] = Some(n);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; dims.cues];
    (0..dims.sms_per_dc)
        .filter(|&n| augment(r, l, n, &mut vec![false; dims.cues], &mut owner))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_candidate_pair_is_feasible_alone(inst in instance(3, 4, 5)) {
        let dims = inst.dims();
        let r = inst.reuse();
        for (l, n, m) in r.ones() {
            let mut choices = vec![None; dims.num_sms()];
            choices[dims.sm_index(l, n)] = Some(m);
            let a = AllocationMatrix::from_choices(dims, &choices);
            let v = check_allocation(&a, Some(&r), &inst.gains, &PW, &inst.qos);
            prop_assert!(v.is_empty(), "pair ({l},{n},{m}): {v:?}");
        }
    }

    #[test]
    fn stricter_thresholds_shrink_candidates(inst in instance(3, 4, 5), cue_db in 0.0f64..6.0, sm_db in 0.0f64..6.0) {
        let r = inst.reuse();
        let mut strict = inst.clone();
        for g in &mut strict.qos.cue_sinr {
            *g *= 10f64.powf(cue_db / 10.0);
        }
        strict.qos.sm_sinr *= 10f64.powf(sm_db / 10.0);
        prop_assert!(strict.reuse().is_subset_of(&r));
    }

    #[test]
    fn weaker_serving_links_shrink_candidates(inst in instance(3, 4, 5), loss_db in 0.0f64..20.0) {
        // moving SMs away from their DC only lowers the serving gain
        let dims = inst.dims();
        let scale = 10f64.powf(-loss_db / 10.0);
        let mut sm_dc = Vec::with_capacity(dims.num_sms() * dims.dcs);
        for (k, x) in dims.sms() {
            for l in 0..dims.dcs {
                let g = inst.gains.sm_dc(k, x, l);
                sm_dc.push(if k == l { g * scale } else { g });
            }
        }
        let weaker = Instance {
            gains: GainTable::from_parts(
                dims,
                (0..dims.cues).map(|m| inst.gains.cue_enb(m)).collect(),
                dims.sms().map(|(l, n)| inst.gains.sm_enb(l, n)).collect(),
                sm_dc,
                (0..dims.cues).flat_map(|m| (0..dims.dcs).map(move |l| (m, l))).map(|(m, l)| inst.gains.cue_dc(m, l)).collect(),
            )
            .unwrap(),
            qos: inst.qos.clone(),
        };
        prop_assert!(weaker.reuse().is_subset_of(&inst.reuse()));
    }

    #[test]
    fn greedy_is_feasible_supported_and_deterministic(inst in instance(4, 6, 8)) {
        let r = inst.reuse();
        let a = allocate(&r, &inst.gains, &PW, &inst.qos);
        prop_assert!(a.is_subset_of(&r));
        let v = check_allocation(&a, Some(&r), &inst.gains, &PW, &inst.qos);
        prop_assert!(v.is_empty(), "{v:?}");
        prop_assert_eq!(allocate(&r, &inst.gains, &PW, &inst.qos), a);
    }

    #[test]
    fn greedy_never_beats_the_optimum(inst in instance(3, 3, 5)) {
        prop_assume!(inst.dims().num_sms() <= 6);
        let r = inst.reuse();
        let greedy = allocate(&r, &inst.gains, &PW, &inst.qos);
        let exact = solve_exact(&r, &inst.gains, &PW, &inst.qos, &OracleLimits::default()).unwrap();
        prop_assert!(greedy.accepted() <= exact.accepted);
        prop_assert_eq!(exact.allocation.accepted(), exact.accepted);
        let v = check_allocation(&exact.allocation, Some(&r), &inst.gains, &PW, &inst.qos);
        prop_assert!(v.is_empty(), "{v:?}");
        if r.has_disjoint_candidates() {
            prop_assert_eq!(greedy.accepted(), exact.accepted);
        }
    }

    #[test]
    fn without_interference_the_optimum_is_a_matching_per_dc(inst in instance(3, 3, 5)) {
        prop_assume!(inst.dims().num_sms() <= 6);
        let quiet = zero_interference(&inst);
        let r = quiet.reuse();
        let exact = solve_exact(&r, &quiet.gains, &PW, &quiet.qos, &OracleLimits::default()).unwrap();
        let expected: usize = (0..r.dims().dcs).map(|l| dc_matching(&r, l)).sum();
        prop_assert_eq!(exact.accepted, expected);
    }

    #[test]
    fn throughput_gain_splits_by_channel(inst in instance(4, 6, 8)) {
        let r = inst.reuse();
        let a = allocate(&r, &inst.gains, &PW, &inst.qos);
        let total = throughput_gain(&a, &inst.gains, &PW);
        let parts = channel_throughput_gains(&a, &inst.gains, &PW);
        let sum: f64 = parts.iter().sum();
        prop_assert!((total - sum).abs() <= 1e-9 * total.abs().max(1.0), "{total} vs {sum}");
        for (m, part) in parts.iter().enumerate() {
            if a.column_sum(m) == 0 {
                prop_assert_eq!(*part, 0.0);
            }
        }
    }
}
