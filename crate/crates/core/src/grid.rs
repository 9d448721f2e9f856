//! Dense binary matrices indexed by (DC, SM, channel).
//!
//! Row `(l, n)` belongs to SM `n` of DC `l`; column `m` is the resource
//! block of CUE `m`. Rows are stored DC-major, matching the stacked
//! `(N*L) x M` layout of the reuse and allocation matrices.

use std::io::{self, Write};
use std::ops::{Deref, DerefMut};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub cues: usize,
    pub dcs: usize,
    pub sms_per_dc: usize,
}

impl Dims {
    pub const fn new(cues: usize, dcs: usize, sms_per_dc: usize) -> Self {
        Dims { cues, dcs, sms_per_dc }
    }

    pub const fn num_sms(&self) -> usize {
        self.dcs * self.sms_per_dc
    }

    /// Flat row index of SM `n` in DC `l`.
    pub const fn sm_index(&self, l: usize, n: usize) -> usize {
        l * self.sms_per_dc + n
    }

    /// `(l, n)` for every SM in row order.
    pub fn sms(&self) -> impl Iterator<Item = (usize, usize)> {
        let per_dc = self.sms_per_dc;
        (0..self.dcs).flat_map(move |l| (0..per_dc).map(move |n| (l, n)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryGrid {
    dims: Dims,
    bits: Vec<bool>,
}

impl BinaryGrid {
    pub fn zeros(dims: Dims) -> Self {
        BinaryGrid {
            dims,
            bits: vec![false; dims.num_sms() * dims.cues],
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    fn offset(&self, l: usize, n: usize, m: usize) -> usize {
        debug_assert!(l < self.dims.dcs && n < self.dims.sms_per_dc && m < self.dims.cues);
        self.dims.sm_index(l, n) * self.dims.cues + m
    }

    pub fn get(&self, l: usize, n: usize, m: usize) -> bool {
        self.bits[self.offset(l, n, m)]
    }

    pub fn set(&mut self, l: usize, n: usize, m: usize, value: bool) {
        let i = self.offset(l, n, m);
        self.bits[i] = value;
    }

    pub fn row(&self, l: usize, n: usize) -> &[bool] {
        let start = self.dims.sm_index(l, n) * self.dims.cues;
        &self.bits[start..start + self.dims.cues]
    }

    pub fn row_sum(&self, l: usize, n: usize) -> usize {
        self.row(l, n).iter().filter(|&&b| b).count()
    }

    pub fn column_sum(&self, m: usize) -> usize {
        self.bits
            .iter()
            .skip(m)
            .step_by(self.dims.cues.max(1))
            .filter(|&&b| b)
            .count()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Every `(l, n, m)` holding a one, in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let dims = self.dims;
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| {
            let row = i / dims.cues;
            (row / dims.sms_per_dc, row % dims.sms_per_dc, i % dims.cues)
        })
    }

    /// `true` when every one in `self` is also a one in `other`.
    pub fn is_subset_of(&self, other: &BinaryGrid) -> bool {
        self.dims == other.dims && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Writes a `dc,sm,channel` header, then one line per one-entry.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "dc,sm,channel")?;
        for (l, n, m) in self.ones() {
            writeln!(out, "{l},{n},{m}")?;
        }
        Ok(())
    }
}

/// Candidate matrix: `r[l][n][m] = 1` when CUE `m` is a pairwise-admissible
/// reuse partner for SM `n` of DC `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReuseMatrix(pub BinaryGrid);

impl ReuseMatrix {
    pub fn zeros(dims: Dims) -> Self {
        ReuseMatrix(BinaryGrid::zeros(dims))
    }

    /// Candidate channels of one SM, ascending.
    pub fn candidates(&self, l: usize, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(l, n).iter().enumerate().filter(|(_, &b)| b).map(|(m, _)| m)
    }

    /// `true` when no channel is a candidate for two different SMs.
    pub fn has_disjoint_candidates(&self) -> bool {
        (0..self.dims().cues).all(|m| self.column_sum(m) <= 1)
    }
}

impl Deref for ReuseMatrix {
    type Target = BinaryGrid;

    fn deref(&self) -> &BinaryGrid {
        &self.0
    }
}

impl DerefMut for ReuseMatrix {
    fn deref_mut(&mut self) -> &mut BinaryGrid {
        &mut self.0
    }
}

/// Assignment matrix: `a[l][n][m] = 1` when SM `n` of DC `l` reuses the
/// resource block of CUE `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationMatrix(pub BinaryGrid);

impl AllocationMatrix {
    pub fn zeros(dims: Dims) -> Self {
        AllocationMatrix(BinaryGrid::zeros(dims))
    }

    /// Builds a matrix from one optional channel per SM (row order).
    pub fn from_choices(dims: Dims, choices: &[Option<usize>]) -> Self {
        assert_eq!(choices.len(), dims.num_sms(), "one choice per SM");
        let mut a = AllocationMatrix::zeros(dims);
        for ((l, n), choice) in dims.sms().zip(choices) {
            if let Some(m) = *choice {
                a.set(l, n, m, true);
            }
        }
        a
    }

    /// First channel assigned to the SM, if any.
    pub fn channel_of(&self, l: usize, n: usize) -> Option<usize> {
        self.row(l, n).iter().position(|&b| b)
    }

    /// SMs reusing channel `m`, in row order.
    pub fn occupants(&self, m: usize) -> Vec<(usize, usize)> {
        self.dims().sms().filter(|&(l, n)| self.get(l, n, m)).collect()
    }

    pub fn accepted(&self) -> usize {
        self.dims()
            .sms()
            .filter(|&(l, n)| self.channel_of(l, n).is_some())
            .count()
    }

    /// Writes a `dc,sm,channel` header, then `l,n,m` per assigned SM and
    /// `l,n,-` per unassigned SM.
    pub fn write_assignments<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "dc,sm,channel")?;
        for (l, n) in self.dims().sms() {
            let row = self.row(l, n);
            let mut any = false;
            for m in (0..row.len()).filter(|&m| row[m]) {
                writeln!(out, "{l},{n},{m}")?;
                any = true;
            }
            if !any {
                writeln!(out, "{l},{n},-")?;
            }
        }
        Ok(())
    }
}

impl Deref for AllocationMatrix {
    type Target = BinaryGrid;

    fn deref(&self) -> &BinaryGrid {
        &self.0
    }
}

impl DerefMut for AllocationMatrix {
    fn deref_mut(&mut self) -> &mut BinaryGrid {
        &mut self.0
    }
}
