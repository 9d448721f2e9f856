//! Random single-cell layouts.
//!
//! The eNB sits at the origin. CUEs are dropped uniformly (by area) inside
//! the cell disk, every DC is placed at a uniformly random angle on a circle
//! of radius `dc_enb_distance_m`, and each DC's smart meters are dropped
//! uniformly inside a disk of radius `max_sm_dc_distance_m` around it.

use std::f64::consts::TAU;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::Dims;

/// Link distances are floored at this value before any path-loss evaluation.
pub const MIN_LINK_DISTANCE_M: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn from_polar(center: Point, radius: f64, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Point::new(center.x + radius * cos, center.y + radius * sin)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Euclidean distance with the path-loss floor applied.
pub fn link_distance(p: Point, q: Point) -> f64 {
    p.distance(q).max(MIN_LINK_DISTANCE_M)
}

/// Geometry and size of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub cell_radius_m: f64,
    pub num_cues: usize,
    pub num_dcs: usize,
    pub sms_per_dc: usize,
    pub max_sm_dc_distance_m: f64,
    pub dc_enb_distance_m: f64,
    pub rng_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            cell_radius_m: 500.0,
            num_cues: 50,
            num_dcs: 4,
            sms_per_dc: 50,
            max_sm_dc_distance_m: 50.0,
            dc_enb_distance_m: 300.0,
            rng_seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn dims(&self) -> Dims {
        Dims::new(self.num_cues, self.num_dcs, self.sms_per_dc)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.cell_radius_m) {
            return Err(Error::config("cell_radius_m must be positive"));
        }
        if self.num_cues == 0 {
            return Err(Error::config("num_cues must be at least 1"));
        }
        if self.num_dcs == 0 {
            return Err(Error::config("num_dcs must be at least 1"));
        }
        if !positive(self.max_sm_dc_distance_m) {
            return Err(Error::config("max_sm_dc_distance_m must be positive"));
        }
        if !positive(self.dc_enb_distance_m) || self.dc_enb_distance_m >= self.cell_radius_m {
            return Err(Error::config(
                "dc_enb_distance_m must lie strictly between 0 and cell_radius_m",
            ));
        }
        Ok(())
    }
}

/// Node positions for one drop. SM positions are stored DC-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub enb: Point,
    pub cues: Vec<Point>,
    pub dcs: Vec<Point>,
    sms: Vec<Point>,
    sms_per_dc: usize,
}

impl Topology {
    /// Assembles a topology from explicit positions; `sms[l]` holds the
    /// meters of DC `l` and every DC must have the same number of them.
    pub fn from_parts(enb: Point, cues: Vec<Point>, dcs: Vec<Point>, sms: Vec<Vec<Point>>) -> Result<Self> {
        if sms.len() != dcs.len() {
            return Err(Error::config("one SM group is required per DC"));
        }
        let sms_per_dc = sms.first().map_or(0, Vec::len);
        if sms.iter().any(|group| group.len() != sms_per_dc) {
            return Err(Error::config("every DC must serve the same number of SMs"));
        }
        Ok(Topology {
            enb,
            cues,
            dcs,
            sms: sms.into_iter().flatten().collect(),
            sms_per_dc,
        })
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.cues.len(), self.dcs.len(), self.sms_per_dc)
    }

    pub fn sm(&self, dc: usize, sm: usize) -> Point {
        self.sms[dc * self.sms_per_dc + sm]
    }

    pub fn sms_of(&self, dc: usize) -> &[Point] {
        &self.sms[dc * self.sms_per_dc..(dc + 1) * self.sms_per_dc]
    }

    /// Writes the `kind,index,dc_index,x_m,y_m` table.
    pub fn write_table<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "kind,index,dc_index,x_m,y_m")?;
        writeln!(out, "ENB,0,,{},{}", self.enb.x, self.enb.y)?;
        for (m, p) in self.cues.iter().enumerate() {
            writeln!(out, "CUE,{m},,{},{}", p.x, p.y)?;
        }
        for (l, p) in self.dcs.iter().enumerate() {
            writeln!(out, "DC,{l},,{},{}", p.x, p.y)?;
        }
        for l in 0..self.dcs.len() {
            for (n, p) in self.sms_of(l).iter().enumerate() {
                writeln!(out, "SM,{n},{l},{},{}", p.x, p.y)?;
            }
        }
        Ok(())
    }
}

/// Generator for one Monte-Carlo drop: the scenario seed selects the key and
/// the drop index selects an independent ChaCha stream.
pub fn drop_rng(seed: u64, drop_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(drop_index);
    rng
}

/// Layout for drop 0 of `cfg.rng_seed`.
pub fn generate_topology(cfg: &ScenarioConfig) -> Result<Topology> {
    sample_topology(cfg, &mut drop_rng(cfg.rng_seed, 0))
}

/// Draws CUEs, then DC angles, then SMs (DC by DC) from `rng`.
pub fn sample_topology<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Result<Topology> {
    cfg.validate()?;
    let enb = Point::ORIGIN;
    let cues = (0..cfg.num_cues)
        .map(|_| uniform_in_disk(rng, enb, cfg.cell_radius_m))
        .collect();
    let dcs: Vec<Point> = (0..cfg.num_dcs)
        .map(|_| Point::from_polar(enb, cfg.dc_enb_distance_m, rng.gen::<f64>() * TAU))
        .collect();
    let mut sms = Vec::with_capacity(cfg.num_dcs * cfg.sms_per_dc);
    for dc in &dcs {
        for _ in 0..cfg.sms_per_dc {
            sms.push(uniform_in_disk(rng, *dc, cfg.max_sm_dc_distance_m));
        }
    }
    Ok(Topology {
        enb,
        cues,
        dcs,
        sms,
        sms_per_dc: cfg.sms_per_dc,
    })
}

/// Area-uniform point in a disk (radius drawn as `R * sqrt(u)`).
pub fn uniform_in_disk<R: Rng + ?Sized>(rng: &mut R, center: Point, radius: f64) -> Point {
    let r = radius * rng.gen::<f64>().sqrt();
    Point::from_polar(center, r, rng.gen::<f64>() * TAU)
}
