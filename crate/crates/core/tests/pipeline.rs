use amisim::harness::{load_levels, run_point};
use amisim::{run_drop, run_sweep, simulate_drop, LinkModels, PathLossModel, SimConfig, Sweep, SweepSpec};

fn cfg_with(overrides: &[&str]) -> SimConfig {
    let mut cfg = SimConfig::default();
    for o in overrides {
        cfg.apply_override(o).unwrap();
    }
    cfg
}

#[test]
fn strict_cue_thresholds_still_validate() {
    // With a 20-30 dB CUE range some cell-edge CUEs miss their threshold
    // even without reuse. Their channels must stay empty and must not be
    // reported as violations.
    let cfg = cfg_with(&["sms_per_dc=25", "cue_sinr_min_db=20", "cue_sinr_max_db=30"]);
    let mut hopeless = 0;
    for d in 0..20 {
        let drop = simulate_drop(&cfg, d).unwrap();
        assert!(drop.violations().is_empty(), "drop {d}: {:?}", drop.violations());
        for (m, &budget) in drop.budgets.cue.iter().enumerate() {
            if budget < 0.0 {
                hopeless += 1;
                assert_eq!(drop.reuse.column_sum(m), 0);
                assert_eq!(drop.allocation.column_sum(m), 0);
            }
        }
    }
    assert!(hopeless > 0);
}

#[test]
fn default_link_models() {
    let links = LinkModels::default();
    assert_eq!(links.cue_enb, PathLossModel::Cellular);
    assert_eq!(links.sm_enb, PathLossModel::D2d);
    assert_eq!(links.sm_dc, PathLossModel::D2d);
    assert_eq!(links.cue_dc, PathLossModel::D2d);
}

#[test]
fn cellular_sm_uplink_override_is_stricter() {
    // The cellular model attenuates less at cell scale, so SM interference
    // at the eNB grows and candidates can only disappear.
    let d2d = simulate_drop(&cfg_with(&["sms_per_dc=20"]), 3).unwrap();
    let cellular = simulate_drop(&cfg_with(&["sms_per_dc=20", "link_sm_enb=cellular"]), 3).unwrap();
    assert_eq!(d2d.topology, cellular.topology);
    assert!(cellular.reuse.is_subset_of(&d2d.reuse));
    assert!(cellular.reuse.count_ones() < d2d.reuse.count_ones());
    assert!(cellular.violations().is_empty());
}

#[test]
fn access_rate_endpoints() {
    let none = run_drop(
        &cfg_with(&["sms_per_dc=1", "cue_sinr_min_db=60", "cue_sinr_max_db=60"]),
        0,
    )
    .unwrap();
    assert_eq!(none.access_rate, 0.0);
    assert_eq!(none.throughput_gain, 0.0);
    let all = run_drop(&cfg_with(&["sms_per_dc=1", "max_sm_dc_distance_m=10"]), 0).unwrap();
    assert_eq!(all.access_rate, 1.0);
    assert_eq!(all.accepted_sms, 4);
}

#[test]
fn load_sweep_has_twenty_rows() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SweepSpec {
        base: SimConfig::default(),
        sweep: Sweep::SmsPerDc(load_levels(50)),
        drops_per_point: 1,
        output_path: dir.path().join("load.csv"),
        validate: true,
        absolute_throughput: false,
    };
    let rows = run_sweep(&spec).unwrap();
    assert_eq!(rows.len(), 20);
    let text = std::fs::read_to_string(&spec.output_path).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text.lines().nth(20).unwrap().starts_with("50,100,1,"));
}

#[test]
fn point_estimates_reduce_in_drop_order() {
    let cfg = cfg_with(&["sms_per_dc=50"]);
    let row = run_point(&cfg, 8, true).unwrap();
    let access: Vec<f64> = (0..8).map(|d| run_drop(&cfg, d).unwrap().access_rate).collect();
    let mean = access.iter().sum::<f64>() / 8.0;
    assert_eq!(row.access_rate.mean, mean);
    assert!(row.access_rate.std_err > 0.0);
}

#[test]
fn dumps_have_expected_rows() {
    let drop = simulate_drop(&cfg_with(&["sms_per_dc=3", "num_cues=5"]), 0).unwrap();
    let mut topo = Vec::new();
    drop.topology.write_table(&mut topo).unwrap();
    // header, eNB, 5 CUEs, 4 DCs and 12 SMs
    assert_eq!(String::from_utf8(topo).unwrap().lines().count(), 1 + 1 + 5 + 4 + 12);

    let mut assignments = Vec::new();
    drop.allocation.write_assignments(&mut assignments).unwrap();
    assert_eq!(String::from_utf8(assignments).unwrap().lines().count(), 1 + 12);
}
