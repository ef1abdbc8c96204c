//! Simulated planar LiDAR that copies ground truth into the belief grid.
//!
//! Beams originate at the center of the robot's cell and walk the grid with
//! an exact cell traversal: a cell is visited when the beam passes through
//! its interior. A beam stops at the first Occupied truth cell or once it has
//! travelled `max_range`. Only cells whose centers lie within `max_range` of
//! the sensor cell center are revealed.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{CellState, OccupancyGrid, Pose};
use crate::error::{Error, Result};

const RANGE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LidarModel {
    pub beam_count: usize,
    pub max_range: f64,
    pub angular_span: f64,
}

impl Default for LidarModel {
    fn default() -> Self {
        Self {
            beam_count: 360,
            max_range: 3.5,
            angular_span: TAU,
        }
    }
}

impl LidarModel {
    pub fn new(beam_count: usize, max_range: f64, angular_span: f64) -> Result<Self> {
        let m = Self {
            beam_count,
            max_range,
            angular_span,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.beam_count == 0 {
            return Err(Error::param("beam_count", "must be >= 1"));
        }
        if !(self.max_range.is_finite() && self.max_range > 0.0) {
            return Err(Error::param("max_range", "must be > 0"));
        }
        if !(self.angular_span.is_finite() && self.angular_span > 0.0 && self.angular_span <= TAU) {
            return Err(Error::param("angular_span", "must be in (0, 2*pi]"));
        }
        Ok(())
    }

    /// World-frame angle of beam `k` for a robot heading `theta`.
    ///
    /// A full circle puts beam 0 on the heading and spaces the rest evenly;
    /// a partial span is centred on the heading with both edges covered.
    pub fn beam_angle(&self, theta: f64, k: usize) -> f64 {
        let n = self.beam_count;
        if self.angular_span >= TAU - 1e-12 {
            theta + k as f64 * TAU / n as f64
        } else if n == 1 {
            theta
        } else {
            theta - self.angular_span / 2.0 + k as f64 * self.angular_span / (n - 1) as f64
        }
    }
}

/// Per-beam ranges and the cells whose belief state changed.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub ranges: Vec<f64>,
    pub changed: Vec<usize>,
}

impl ScanResult {
    pub fn min_range(&self) -> f64 {
        self.ranges.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Casts every beam from `pose`, reveals the observed cells in `belief` and
/// re-inflates the costs around them.
pub fn raycast_reveal(
    belief: &mut OccupancyGrid,
    truth: &OccupancyGrid,
    pose: &Pose,
    lidar: &LidarModel,
) -> Result<ScanResult> {
    if !belief.same_geometry(truth) {
        return Err(Error::GridMismatch);
    }
    lidar.validate()?;
    let (si, sj) = truth.pose_cell(pose)?;
    if truth.state(si, sj) == CellState::Occupied {
        return Err(Error::PoseInsideObstacle {
            x: pose.x,
            y: pose.y,
        });
    }

    let mut seen = vec![false; truth.len()];
    let mut changes: Vec<(usize, CellState)> = Vec::new();
    let mut ranges = Vec::with_capacity(lidar.beam_count);
    for k in 0..lidar.beam_count {
        let angle = lidar.beam_angle(pose.theta, k);
        let range = trace_beam(truth, (si, sj), angle, lidar.max_range, |idx, state| {
            if !seen[idx] {
                seen[idx] = true;
                if belief.states()[idx] != state {
                    changes.push((idx, state));
                }
            }
        });
        ranges.push(range);
    }
    belief.apply_changes(&changes);
    Ok(ScanResult {
        ranges,
        changed: changes.into_iter().map(|(k, _)| k).collect(),
    })
}

/// Walks one beam through `truth`, reporting each revealed cell, and returns
/// the measured range (center-to-center distance to the hit cell, or
/// `max_range` when nothing in range is hit).
pub(crate) fn trace_beam(
    truth: &OccupancyGrid,
    sensor: (usize, usize),
    angle: f64,
    max_range: f64,
    mut reveal: impl FnMut(usize, CellState),
) -> f64 {
    let res = truth.resolution();
    let reach = max_range / res;
    let reach2 = reach * reach + RANGE_EPS;
    let (si, sj) = (sensor.0 as i64, sensor.1 as i64);
    // Cell units: cell (i, j) spans [i, i+1] x [j, j+1].
    let ox = si as f64 + 0.5;
    let oy = sj as f64 + 0.5;
    let (dx, dy) = (angle.cos(), angle.sin());
    let step_i: i64 = if dx > 0.0 { 1 } else { -1 };
    let step_j: i64 = if dy > 0.0 { 1 } else { -1 };

    let (mut i, mut j) = (si, sj);
    loop {
        if !truth.in_bounds(i, j) {
            return max_range;
        }
        let k = truth.index(i as usize, j as usize);
        let (di, dj) = ((i - si) as f64, (j - sj) as f64);
        let d2 = di * di + dj * dj;
        let in_range = d2 <= reach2;
        let state = truth.states()[k];
        if in_range {
            reveal(k, state);
        }
        if state == CellState::Occupied {
            return if in_range { d2.sqrt() * res } else { max_range };
        }

        let tx = if dx > 0.0 {
            ((i + 1) as f64 - ox) / dx
        } else if dx < 0.0 {
            (i as f64 - ox) / dx
        } else {
            f64::INFINITY
        };
        let ty = if dy > 0.0 {
            ((j + 1) as f64 - oy) / dy
        } else if dy < 0.0 {
            (j as f64 - oy) / dy
        } else {
            f64::INFINITY
        };
        if tx.min(ty) >= reach {
            return max_range;
        }
        if tx < ty {
            i += step_i;
        } else if ty < tx {
            j += step_j;
        } else {
            // Exactly through a corner: the two side cells are only touched.
            i += step_i;
            j += step_j;
        }
    }
}
