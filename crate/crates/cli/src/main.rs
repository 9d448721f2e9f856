//! Command-line front end for the smart-meter reuse simulator.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amisim::harness::{load_levels, verify_oracle, DropArtifacts};
use amisim::{run_sweep, simulate_drop, OracleLimits, SimConfig, Sweep, SweepSpec};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "amisim", version, about = "Smart-meter D2D uplink reuse simulator")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Base seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Drops per sweep point.
    #[arg(long, global = true, default_value_t = 200)]
    drops: u64,

    /// Output file (or directory for `run-drop` dumps). Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Check every allocation against all constraints and fail on any
    /// violation.
    #[arg(long, global = true)]
    validate: bool,

    /// Configuration file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override one configuration key, e.g. `--set sms_per_dc=25`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample one topology and write it as a table.
    GenTopology {
        #[arg(long, default_value_t = 0)]
        drop_index: u64,
    },
    /// Run a single drop and print its metrics.
    RunDrop {
        #[arg(long, default_value_t = 0)]
        drop_index: u64,
    },
    /// Sweep one parameter and write one CSV row per value.
    Sweep {
        #[arg(long, value_enum)]
        var: SweepVar,

        /// Comma-separated values. Ranges for `cue-sinr` are `min:max` in dB.
        /// Without values, `n` sweeps 10% to 200% of the CUE count,
        /// `md-sd` sweeps 50,75,100 and `cue-sinr` four 10 dB windows.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,

        /// Add a `mean_tg_bps` column (TG times the RB bandwidth).
        #[arg(long)]
        absolute_throughput: bool,
    },
    /// Compare greedy and exact allocation on small random instances.
    VerifyOracle {
        #[arg(long, default_value_t = 500)]
        instances: u64,
    },
    /// Print the resolved configuration.
    ShowConfig,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepVar {
    N,
    MdSd,
    CueSinr,
}

fn resolve_config(g: &GlobalArgs) -> Result<SimConfig> {
    let mut cfg = match &g.config {
        Some(path) => SimConfig::load(path)?,
        None => SimConfig::default(),
    };
    for o in &g.overrides {
        cfg.apply_override(o).with_context(|| format!("--set {o}"))?;
    }
    if let Some(seed) = g.seed {
        cfg.scenario.rng_seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_sweep(var: SweepVar, values: &[String], cfg: &SimConfig) -> Result<Sweep> {
    fn each<T>(values: &[String], f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
        values
            .iter()
            .map(|v| f(v.trim()).with_context(|| format!("bad sweep value `{v}`")))
            .collect()
    }
    Ok(match (var, values.is_empty()) {
        (SweepVar::N, true) => Sweep::SmsPerDc(load_levels(cfg.scenario.num_cues)),
        (SweepVar::N, false) => Sweep::SmsPerDc(each(values, |v| v.parse().ok())?),
        (SweepVar::MdSd, true) => Sweep::MaxSmDcDistance(vec![50.0, 75.0, 100.0]),
        (SweepVar::MdSd, false) => Sweep::MaxSmDcDistance(each(values, |v| v.parse().ok())?),
        (SweepVar::CueSinr, true) => Sweep::CueSinrRange(vec![(0.0, 10.0), (5.0, 15.0), (10.0, 20.0), (15.0, 25.0)]),
        (SweepVar::CueSinr, false) => Sweep::CueSinrRange(each(values, |v| {
            let (lo, hi) = v.split_once(':')?;
            Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
        })?),
    })
}

fn dump_drop(drop: &DropArtifacts, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let file = |name: &str| -> Result<BufWriter<File>> {
        let path = dir.join(name);
        Ok(BufWriter::new(
            File::create(&path).with_context(|| format!("cannot create {}", path.display()))?,
        ))
    };
    drop.topology.write_table(file("topology.csv")?)?;
    drop.gains.write_table(file("gains.csv")?)?;
    drop.reuse.write_triplets(file("reuse.csv")?)?;
    drop.allocation.write_assignments(file("allocation.csv")?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let cfg = resolve_config(g)?;
    match cli.command {
        Command::GenTopology { drop_index } => {
            let drop = simulate_drop(&cfg, drop_index)?;
            let mut out = open_output(g.out.as_deref())?;
            drop.topology.write_table(&mut out)?;
            out.flush()?;
        }
        Command::RunDrop { drop_index } => {
            let drop = simulate_drop(&cfg, drop_index)?;
            if let Some(dir) = &g.out {
                dump_drop(&drop, dir)?;
            }
            let m = &drop.metrics;
            println!("drop {drop_index} (seed {})", cfg.scenario.rng_seed);
            println!("candidates      {}", drop.reuse.count_ones());
            println!(
                "accepted_sms    {} of {}",
                m.accepted_sms,
                drop.allocation.dims().num_sms()
            );
            println!("access_rate     {:.6}", m.access_rate);
            println!("throughput_gain {:.6} bit/s/Hz", m.throughput_gain);
            if g.validate {
                let violations = drop.violations();
                for v in &violations {
                    eprintln!("violation: {v}");
                }
                if !violations.is_empty() {
                    bail!("drop {drop_index}: {} constraint violations", violations.len());
                }
                println!("validation      ok");
            }
        }
        Command::Sweep {
            var,
            values,
            absolute_throughput,
        } => {
            let Some(output_path) = g.out.clone() else {
                bail!("sweep needs --out");
            };
            let spec = SweepSpec {
                sweep: parse_sweep(var, &values, &cfg)?,
                base: cfg,
                drops_per_point: g.drops,
                output_path,
                validate: g.validate,
                absolute_throughput,
            };
            let rows = run_sweep(&spec)?;
            eprintln!("wrote {} rows to {}", rows.len(), spec.output_path.display());
        }
        Command::VerifyOracle { instances } => {
            let report = verify_oracle(cfg.scenario.rng_seed, instances, &OracleLimits::default())?;
            println!("instances            {instances}");
            println!("comparisons          {}", report.comparisons);
            println!("disjoint comparisons {}", report.disjoint_comparisons);
            println!("greedy above optimum {}", report.dominance_violations);
            println!("infeasible results   {}", report.infeasible);
            println!("disjoint mismatches  {}", report.disjoint_mismatches);
            println!("greedy suboptimal    {}", report.suboptimal);
            println!("mean greedy/optimum  {:.4}", report.mean_ratio);
            if !report.passed() {
                bail!("greedy and exact allocation disagree");
            }
        }
        Command::ShowConfig => {
            let mut out = open_output(g.out.as_deref())?;
            out.write_all(cfg.to_config_string().as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
