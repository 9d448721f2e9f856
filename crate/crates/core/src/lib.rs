//! Uplink resource-block reuse for D2D smart-meter links underlying a
//! single LTE cell.
//!
//! Smart meters (SMs) grouped around data concentrators (DCs) transmit to
//! their DC by reusing the uplink resource block of a cellular user (CUE).
//! A drop runs in two phases: [`interference`] builds the pairwise
//! reuse-candidate matrix from per-receiver interference budgets, then
//! [`allocator`] matches SMs onto candidates greedily, re-verifying the
//! aggregate SINR of every receiver on the channel before each commit.
//! [`oracle`] solves small instances exactly for comparison and
//! [`harness`] runs seeded Monte-Carlo sweeps.

pub mod allocator;
pub mod channel;
pub mod error;
pub mod feasibility;
pub mod grid;
pub mod harness;
pub mod interference;
pub mod metrics;
pub mod oracle;
pub mod topology;

pub use allocator::{aggregate_sinr_cue, aggregate_sinr_sm, allocate, DegreeCounts};
pub use channel::{build_gain_table, GainTable, LinkModels, PathLossModel, PowerConfig, PowerLevels};
pub use error::{Error, Result};
pub use feasibility::{check_allocation, Violation};
pub use grid::{AllocationMatrix, BinaryGrid, Dims, ReuseMatrix};
pub use harness::{run_drop, run_sweep, simulate_drop, SimConfig, Sweep, SweepRow, SweepSpec};
pub use interference::{compute_reuse_matrix, InterferenceBudget, QosProfile, QosSettings};
pub use metrics::{access_rate, throughput_gain, DropMetrics, Estimate};
pub use oracle::{solve_exact, OracleLimits, OracleSolution};
pub use topology::{generate_topology, Point, ScenarioConfig, Topology};
