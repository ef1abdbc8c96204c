//! Occupancy grids for ground truth and robot belief.
//!
//! Cells are stored row-major (`i + width * j`). Every cell carries a
//! [`CellState`] and a raw cost byte on the usual costmap scale:
//! `0` free space, `1..=252` decayed inflation, [`COST_INSCRIBED`],
//! [`COST_LETHAL`], and [`COST_UNKNOWN`] as a marker for unobserved cells.

mod coverage;
mod inflation;
mod io;
mod lidar;

pub use coverage::{exploration_rate, reachable_mask};
pub use inflation::{remap_cost, InflationKernel, InflationParams};
pub use io::{load_map, parse_ascii, parse_pgm, MapFormat, PgmMeta};
pub use lidar::{raycast_reveal, LidarModel, ScanResult};

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const COST_FREE: u8 = 0;
pub const COST_INSCRIBED: u8 = 253;
pub const COST_LETHAL: u8 = 254;
pub const COST_UNKNOWN: u8 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum CellState {
    Unknown,
    Free,
    Occupied,
}

impl CellState {
    pub fn to_char(self) -> char {
        match self {
            CellState::Unknown => '?',
            CellState::Free => '.',
            CellState::Occupied => '#',
        }
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let a = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Planar robot pose in world meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn distance_to(&self, x: f64, y: f64) -> f64 {
        (self.x - x).hypot(self.y - y)
    }
}

/// A 2D occupancy grid with per-cell state and inflated cost.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    resolution: f64,
    origin: (f64, f64),
    states: Vec<CellState>,
    costs: Vec<u8>,
    inflation: InflationParams,
    kernel: InflationKernel,
}

impl OccupancyGrid {
    /// Grid filled with a single state, inflated with default parameters.
    pub fn filled(width: usize, height: usize, resolution: f64, state: CellState) -> Result<Self> {
        Self::from_states(width, height, resolution, vec![state; width * height])
    }

    pub fn from_states(
        width: usize,
        height: usize,
        resolution: f64,
        states: Vec<CellState>,
    ) -> Result<Self> {
        Self::with_inflation(
            width,
            height,
            resolution,
            states,
            InflationParams::default(),
        )
    }

    pub fn with_inflation(
        width: usize,
        height: usize,
        resolution: f64,
        states: Vec<CellState>,
        inflation: InflationParams,
    ) -> Result<Self> {
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(Error::ZeroResolution);
        }
        if width == 0 || height == 0 {
            return Err(Error::MalformedMap(
                "grid must have at least one cell".into(),
            ));
        }
        if states.len() != width * height {
            return Err(Error::MalformedMap(format!(
                "expected {} cells, got {}",
                width * height,
                states.len()
            )));
        }
        inflation.validate()?;
        let kernel = InflationKernel::new(&inflation, resolution);
        let mut grid = Self {
            width,
            height,
            resolution,
            origin: (0.0, 0.0),
            costs: vec![COST_UNKNOWN; states.len()],
            states,
            inflation,
            kernel,
        };
        grid.recompute_costs();
        Ok(grid)
    }

    /// Builds a grid from rows of `.`, `#` and `?` characters; row 0 is `j = 0`.
    pub fn from_rows(rows: &[&str], resolution: f64) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut states = Vec::with_capacity(width * height);
        for (j, row) in rows.iter().enumerate() {
            if row.chars().count() != width {
                return Err(Error::MalformedMap(format!("row {j} has wrong width")));
            }
            for c in row.chars() {
                states.push(io::state_from_char(c).ok_or_else(|| {
                    Error::MalformedMap(format!("illegal character {c:?} in row {j}"))
                })?);
            }
        }
        Self::from_states(width, height, resolution, states)
    }

    /// An all-Unknown grid sharing geometry and inflation settings with `self`.
    pub fn unknown_like(&self) -> Self {
        Self {
            states: vec![CellState::Unknown; self.states.len()],
            costs: vec![COST_UNKNOWN; self.costs.len()],
            ..self.clone()
        }
    }

    pub fn with_origin(mut self, x: f64, y: f64) -> Self {
        self.origin = (x, y);
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    pub fn inflation(&self) -> &InflationParams {
        &self.inflation
    }

    pub fn states(&self) -> &[CellState] {
        &self.states
    }

    pub fn costs(&self) -> &[u8] {
        &self.costs
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i + self.width * j
    }

    #[inline]
    pub fn coords(&self, k: usize) -> (usize, usize) {
        (k % self.width, k / self.width)
    }

    #[inline]
    pub fn state(&self, i: usize, j: usize) -> CellState {
        self.states[self.index(i, j)]
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> u8 {
        self.costs[self.index(i, j)]
    }

    pub fn in_bounds(&self, i: i64, j: i64) -> bool {
        i >= 0 && j >= 0 && (i as usize) < self.width && (j as usize) < self.height
    }

    /// World coordinates of the center of cell `(i, j)`.
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.origin.0 + (i as f64 + 0.5) * self.resolution,
            self.origin.1 + (j as f64 + 0.5) * self.resolution,
        )
    }

    /// Cell containing the world point, or `None` outside the grid.
    pub fn world_to_cell(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fi = ((x - self.origin.0) / self.resolution).floor();
        let fj = ((y - self.origin.1) / self.resolution).floor();
        if !(fi.is_finite() && fj.is_finite()) {
            return None;
        }
        let (i, j) = (fi as i64, fj as i64);
        self.in_bounds(i, j).then_some((i as usize, j as usize))
    }

    pub fn pose_cell(&self, pose: &Pose) -> Result<(usize, usize)> {
        self.world_to_cell(pose.x, pose.y)
            .ok_or(Error::PoseOutOfBounds {
                x: pose.x,
                y: pose.y,
            })
    }

    pub fn same_geometry(&self, other: &OccupancyGrid) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.resolution == other.resolution
            && self.origin == other.origin
    }

    pub fn count(&self, state: CellState) -> usize {
        self.states.iter().filter(|&&s| s == state).count()
    }

    /// Re-inflates the whole grid with new parameters.
    pub fn inflate(&mut self, params: InflationParams) -> Result<()> {
        params.validate()?;
        self.kernel = InflationKernel::new(&params, self.resolution);
        self.inflation = params;
        self.recompute_costs();
        Ok(())
    }

    fn recompute_costs(&mut self) {
        for (c, s) in self.costs.iter_mut().zip(&self.states) {
            *c = match s {
                CellState::Unknown => COST_UNKNOWN,
                CellState::Free => COST_FREE,
                CellState::Occupied => COST_LETHAL,
            };
        }
        let occupied: Vec<usize> = (0..self.states.len())
            .filter(|&k| self.states[k] == CellState::Occupied)
            .collect();
        for k in occupied {
            self.stamp(k);
        }
    }

    /// Raises the cost of Free cells around the Occupied cell `k`.
    fn stamp(&mut self, k: usize) {
        let (ci, cj) = self.coords(k);
        for e in self.kernel.entries() {
            let (i, j) = (ci as i64 + e.di as i64, cj as i64 + e.dj as i64);
            if !self.in_bounds(i, j) {
                continue;
            }
            let n = self.index(i as usize, j as usize);
            if self.states[n] == CellState::Free && self.costs[n] < e.cost {
                self.costs[n] = e.cost;
            }
        }
    }

    /// Cost of a Free cell computed from its Occupied neighbourhood.
    fn gather(&self, k: usize) -> u8 {
        let (ci, cj) = self.coords(k);
        let mut best = COST_FREE;
        for e in self.kernel.entries() {
            let (i, j) = (ci as i64 + e.di as i64, cj as i64 + e.dj as i64);
            if self.in_bounds(i, j)
                && self.states[self.index(i as usize, j as usize)] == CellState::Occupied
                && e.cost > best
            {
                best = e.cost;
            }
        }
        best
    }

    /// Applies a batch of state changes and updates costs locally.
    ///
    /// Gives the same costs as a full [`OccupancyGrid::inflate`] pass as long
    /// as no cell leaves the Occupied state.
    pub(crate) fn apply_changes(&mut self, changes: &[(usize, CellState)]) {
        for &(k, s) in changes {
            self.states[k] = s;
        }
        let mut stamped = false;
        for &(k, s) in changes {
            match s {
                CellState::Free => self.costs[k] = self.gather(k),
                CellState::Occupied => self.costs[k] = COST_LETHAL,
                CellState::Unknown => self.costs[k] = COST_UNKNOWN,
            }
            stamped |= s == CellState::Occupied;
        }
        if stamped {
            for &(k, s) in changes {
                if s == CellState::Occupied {
                    self.stamp(k);
                }
            }
        }
    }

    /// Renders the grid as ASCII (`W H RES` header, one line per row).
    pub fn to_ascii(&self) -> String {
        let mut out = format!("{} {} {}\n", self.width, self.height, self.resolution);
        for j in 0..self.height {
            out.extend((0..self.width).map(|i| self.state(i, j).to_char()));
            out.push('\n');
        }
        out
    }

    /// Checks the state/cost invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        self.states.len() == self.width * self.height
            && self.costs.len() == self.states.len()
            && self.states.iter().zip(&self.costs).all(|(s, &c)| match s {
                CellState::Unknown => c == COST_UNKNOWN,
                CellState::Occupied => c == COST_LETHAL,
                CellState::Free => c < COST_LETHAL,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_normalization_range() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((normalize_angle(-0.5) + 0.5).abs() < 1e-15);
        for k in -20..20 {
            let a = normalize_angle(k as f64 * 0.7);
            assert!(a > -PI && a <= PI);
        }
    }

    #[test]
    fn world_cell_roundtrip() {
        let g = OccupancyGrid::filled(4, 3, 0.5, CellState::Free)
            .unwrap()
            .with_origin(-1.0, 2.0);
        let (x, y) = g.cell_center(3, 2);
        assert_eq!((x, y), (0.75, 3.25));
        assert_eq!(g.world_to_cell(x, y), Some((3, 2)));
        assert_eq!(g.world_to_cell(-1.01, 2.5), None);
        assert_eq!(g.world_to_cell(1.0, 2.5), None);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert_eq!(
            OccupancyGrid::filled(2, 2, 0.0, CellState::Free).unwrap_err(),
            Error::ZeroResolution
        );
        assert!(matches!(
            OccupancyGrid::from_states(2, 2, 1.0, vec![CellState::Free; 3]),
            Err(Error::MalformedMap(_))
        ));
    }

    #[test]
    fn unknown_like_keeps_geometry() {
        let g = OccupancyGrid::from_rows(&["..#", "..."], 0.25).unwrap();
        let b = g.unknown_like();
        assert!(b.same_geometry(&g));
        assert_eq!(b.count(CellState::Unknown), 6);
        assert!(b.check_invariants());
    }

    #[test]
    fn ascii_export_marks_unknown() {
        let g = OccupancyGrid::from_rows(&[".?", "#."], 1.0).unwrap();
        assert_eq!(g.to_ascii(), "2 2 1\n.?\n#.\n");
    }
}
