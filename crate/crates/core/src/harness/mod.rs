//! Monte-Carlo drops, parameter sweeps and greedy-versus-exact comparisons.

mod config;
mod oracle_check;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

pub use config::SimConfig;
pub use oracle_check::{
    compare_with_oracle, make_disjoint, small_instance, verify_oracle, OracleComparison, OracleReport,
};

use crate::allocator::allocate;
use crate::channel::{build_gain_table, GainTable, PowerLevels};
use crate::error::{Error, Result};
use crate::feasibility::{check_allocation, Violation};
use crate::grid::{AllocationMatrix, ReuseMatrix};
use crate::interference::{compute_reuse_matrix, InterferenceBudget, QosProfile};
use crate::metrics::{DropMetrics, Estimate};
use crate::topology::{drop_rng, sample_topology, Topology};

/// Every intermediate product of one drop.
#[derive(Debug, Clone)]
pub struct DropArtifacts {
    pub topology: Topology,
    pub qos: QosProfile,
    pub power: PowerLevels,
    pub gains: GainTable,
    pub budgets: InterferenceBudget,
    pub reuse: ReuseMatrix,
    pub allocation: AllocationMatrix,
    pub metrics: DropMetrics,
}

impl DropArtifacts {
    pub fn violations(&self) -> Vec<Violation> {
        check_allocation(&self.allocation, Some(&self.reuse), &self.gains, &self.power, &self.qos)
    }
}

/// Runs topology, gains, budgets, candidates, allocation and metrics for
/// one drop. Randomness (positions, DC angles, CUE thresholds) comes from
/// the `(rng_seed, drop_index)` stream only.
pub fn simulate_drop(cfg: &SimConfig, drop_index: u64) -> Result<DropArtifacts> {
    cfg.validate()?;
    let mut rng = drop_rng(cfg.scenario.rng_seed, drop_index);
    let topology = sample_topology(&cfg.scenario, &mut rng)?;
    let qos = cfg.qos.draw(cfg.scenario.num_cues, &mut rng);
    let power = cfg.power.levels();
    let gains = build_gain_table(&topology, &cfg.links);
    let budgets = InterferenceBudget::compute(&gains, &power, &qos);
    let reuse = compute_reuse_matrix(&gains, &power, &budgets);
    let allocation = allocate(&reuse, &gains, &power, &qos);
    let metrics = DropMetrics::compute(&allocation, &gains, &power);
    Ok(DropArtifacts {
        topology,
        qos,
        power,
        gains,
        budgets,
        reuse,
        allocation,
        metrics,
    })
}

pub fn run_drop(cfg: &SimConfig, drop_index: u64) -> Result<DropMetrics> {
    simulate_drop(cfg, drop_index).map(|d| d.metrics)
}

/// Like [`run_drop`], but fails if the allocation breaks any constraint.
pub fn run_drop_validated(cfg: &SimConfig, drop_index: u64) -> Result<DropMetrics> {
    let drop = simulate_drop(cfg, drop_index)?;
    let violations = drop.violations();
    if violations.is_empty() {
        Ok(drop.metrics)
    } else {
        Err(Error::Validation { drop_index, violations })
    }
}

/// The swept parameter and its values.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    SmsPerDc(Vec<usize>),
    MaxSmDcDistance(Vec<f64>),
    /// `(min_db, max_db)` ranges for the per-CUE SINR draw.
    CueSinrRange(Vec<(f64, f64)>),
}

impl Sweep {
    pub fn len(&self) -> usize {
        match self {
            Sweep::SmsPerDc(v) => v.len(),
            Sweep::MaxSmDcDistance(v) => v.len(),
            Sweep::CueSinrRange(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Configuration of point `i`.
    pub fn apply(&self, base: &SimConfig, i: usize) -> SimConfig {
        let mut cfg = base.clone();
        match self {
            Sweep::SmsPerDc(v) => cfg.scenario.sms_per_dc = v[i],
            Sweep::MaxSmDcDistance(v) => cfg.scenario.max_sm_dc_distance_m = v[i],
            Sweep::CueSinrRange(v) => (cfg.qos.cue_sinr_min_db, cfg.qos.cue_sinr_max_db) = v[i],
        }
        cfg
    }
}

/// SMs per DC at 10%, 20%, ..., 200% of the CUE count.
pub fn load_levels(num_cues: usize) -> Vec<usize> {
    (1..=20)
        .map(|k| ((k * num_cues) as f64 / 10.0).round() as usize)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SimConfig,
    pub sweep: Sweep,
    pub drops_per_point: u64,
    pub output_path: PathBuf,
    /// Check every drop's allocation and fail on the first violation.
    pub validate: bool,
    /// Adds a `mean_tg_bps` column (gain times the RB bandwidth).
    pub absolute_throughput: bool,
}

/// Aggregated result of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub md_sd_m: f64,
    pub n_per_dc: usize,
    pub drops: u64,
    pub access_rate: Estimate,
    pub throughput_gain: Estimate,
    pub mean_accepted: f64,
    pub cue_sinr_min_db: f64,
    pub cue_sinr_max_db: f64,
    pub rb_bandwidth_hz: f64,
}

pub const CSV_HEADER: &str = "md_sd_m,n_per_dc,drops,mean_access_rate,se_access_rate,mean_tg_bps_hz,se_tg,\
                              mean_accepted,cue_sinr_min_db,cue_sinr_max_db";

impl SweepRow {
    pub fn csv_header(absolute_throughput: bool) -> String {
        if absolute_throughput {
            format!("{CSV_HEADER},mean_tg_bps")
        } else {
            CSV_HEADER.to_owned()
        }
    }

    pub fn to_csv(&self, absolute_throughput: bool) -> String {
        let mut line = format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.md_sd_m,
            self.n_per_dc,
            self.drops,
            self.access_rate.mean,
            self.access_rate.std_err,
            self.throughput_gain.mean,
            self.throughput_gain.std_err,
            self.mean_accepted,
            self.cue_sinr_min_db,
            self.cue_sinr_max_db,
        );
        if absolute_throughput {
            line.push_str(&format!(",{}", self.throughput_gain.mean * self.rb_bandwidth_hz));
        }
        line
    }
}

/// Runs `drops` independent drops of `cfg` (in parallel) and reduces them in
/// drop-index order.
pub fn run_point(cfg: &SimConfig, drops: u64, validate: bool) -> Result<SweepRow> {
    if drops == 0 {
        return Err(Error::config("at least one drop per point is required"));
    }
    cfg.validate()?;
    let results: Vec<DropMetrics> = (0..drops)
        .into_par_iter()
        .map(|d| {
            if validate {
                run_drop_validated(cfg, d)
            } else {
                run_drop(cfg, d)
            }
        })
        .collect::<Result<_>>()?;
    let access: Vec<f64> = results.iter().map(|m| m.access_rate).collect();
    let tg: Vec<f64> = results.iter().map(|m| m.throughput_gain).collect();
    let accepted = results.iter().map(|m| m.accepted_sms as f64).sum::<f64>() / drops as f64;
    Ok(SweepRow {
        md_sd_m: cfg.scenario.max_sm_dc_distance_m,
        n_per_dc: cfg.scenario.sms_per_dc,
        drops,
        access_rate: Estimate::from_samples(&access),
        throughput_gain: Estimate::from_samples(&tg),
        mean_accepted: accepted,
        cue_sinr_min_db: cfg.qos.cue_sinr_min_db,
        cue_sinr_max_db: cfg.qos.cue_sinr_max_db,
        rb_bandwidth_hz: cfg.power.rb_bandwidth_hz,
    })
}

/// Runs every point of the sweep, writing one CSV row per point to
/// `spec.output_path`. The file is created before any drop runs and flushed
/// after every row.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.sweep.is_empty() {
        return Err(Error::config("sweep has no values"));
    }
    if spec.drops_per_point == 0 {
        return Err(Error::config("at least one drop per point is required"));
    }
    let file_err = |source| Error::File {
        path: spec.output_path.clone(),
        source,
    };
    let mut out = BufWriter::new(File::create(&spec.output_path).map_err(file_err)?);
    writeln!(out, "{}", SweepRow::csv_header(spec.absolute_throughput)).map_err(file_err)?;
    out.flush().map_err(file_err)?;

    let mut rows = Vec::with_capacity(spec.sweep.len());
    for i in 0..spec.sweep.len() {
        let cfg = spec.sweep.apply(&spec.base, i);
        let row = run_point(&cfg, spec.drops_per_point, spec.validate)?;
        writeln!(out, "{}", row.to_csv(spec.absolute_throughput)).map_err(file_err)?;
        out.flush().map_err(file_err)?;
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SimConfig {
        let mut cfg = SimConfig::default();
        cfg.scenario.sms_per_dc = 10;
        cfg
    }

    #[test]
    fn no_sms_gives_zero_metrics() {
        let mut cfg = SimConfig::default();
        cfg.scenario.sms_per_dc = 0;
        let m = run_drop(&cfg, 0).unwrap();
        assert_eq!(m.access_rate, 0.0);
        assert_eq!(m.throughput_gain, 0.0);
        assert_eq!(m.accepted_sms, 0);
    }

    #[test]
    fn table_defaults_drop_is_feasible() {
        let drop = simulate_drop(&SimConfig::default(), 0).unwrap();
        assert!(drop.violations().is_empty());
        assert!(drop.allocation.is_subset_of(&drop.reuse));
    }

    #[test]
    fn drops_are_deterministic() {
        let cfg = small();
        assert_eq!(run_drop(&cfg, 7).unwrap(), run_drop(&cfg, 7).unwrap());
        assert_ne!(
            simulate_drop(&cfg, 7).unwrap().topology,
            simulate_drop(&cfg, 8).unwrap().topology
        );
    }

    #[test]
    fn invalid_config_propagates() {
        let mut cfg = small();
        cfg.scenario.cell_radius_m = -1.0;
        assert!(matches!(run_drop(&cfg, 0), Err(Error::Config(_))));
    }

    #[test]
    fn load_levels_follow_cue_count() {
        let levels = load_levels(50);
        assert_eq!(levels.len(), 20);
        assert_eq!(levels[0], 5);
        assert_eq!(levels[9], 50);
        assert_eq!(levels[19], 100);
    }

    #[test]
    fn sweep_writes_one_row_per_value() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SweepSpec {
            base: small(),
            sweep: Sweep::MaxSmDcDistance(vec![50.0, 75.0, 100.0]),
            drops_per_point: 3,
            output_path: dir.path().join("out.csv"),
            validate: true,
            absolute_throughput: true,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 3);
        let text = std::fs::read_to_string(&spec.output_path).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], SweepRow::csv_header(true));
        assert!(lines[2].starts_with("75,10,3,"));
        assert_eq!(lines[1].split(',').count(), 11);
    }

    #[test]
    fn unwritable_output_fails_first() {
        let spec = SweepSpec {
            base: small(),
            sweep: Sweep::SmsPerDc(vec![5]),
            drops_per_point: 1,
            output_path: PathBuf::from("/nonexistent-dir/out.csv"),
            validate: false,
            absolute_throughput: false,
        };
        assert!(matches!(run_sweep(&spec), Err(Error::File { .. })));
    }

    #[test]
    fn sweep_rows_are_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let mk = |name: &str| SweepSpec {
            base: small(),
            sweep: Sweep::CueSinrRange(vec![(0.0, 10.0), (15.0, 25.0)]),
            drops_per_point: 1,
            output_path: dir.path().join(name),
            validate: false,
            absolute_throughput: false,
        };
        run_sweep(&mk("a.csv")).unwrap();
        run_sweep(&mk("b.csv")).unwrap();
        assert_eq!(
            std::fs::read(dir.path().join("a.csv")).unwrap(),
            std::fs::read(dir.path().join("b.csv")).unwrap()
        );
    }
}
