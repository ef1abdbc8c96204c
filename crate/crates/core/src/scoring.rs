//! Frontier scoring: exponential-hyperbolic distance score `D`, occupancy
//! stochastic score `O`, their weighted combination `h`, and argmin waypoint
//! selection.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::frontier::FrontierSegment;
use crate::grid::{remap_cost, OccupancyGrid, Pose};

/// Largest `f64` strictly below one.
const ONE_BELOW: f64 = 1.0 - f64::EPSILON / 2.0;

/// Slack on squared distances when testing disk membership, in cells².
const DISK_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeuristicParams {
    /// Distance (m) where the distance score starts to rise.
    pub alpha: f64,
    /// Distance scale (m) of the exponential growth term.
    pub beta: f64,
    /// Weight of the distance score, at most 0.5.
    pub gamma: f64,
    /// Multiplier applied to the frontier length inside `sech`.
    pub af_scale: f64,
    /// Cap on exponent arguments.
    pub exp_arg_cap: f64,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            beta: 1.75,
            gamma: 0.5,
            af_scale: 1.0,
            exp_arg_cap: 30.0,
        }
    }
}

impl HeuristicParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            gamma,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    /// Defaults with `beta` set to half the sensor range.
    pub fn for_lidar_range(max_range: f64) -> Self {
        Self {
            beta: max_range / 2.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.alpha) {
            return Err(Error::param("alpha", "must be > 0"));
        }
        if !positive(self.beta) {
            return Err(Error::param("beta", "must be > 0"));
        }
        if !(0.0..=0.5).contains(&self.gamma) {
            return Err(Error::param("gamma", "must be in [0, 0.5]"));
        }
        if !positive(self.af_scale) {
            return Err(Error::param("af_scale", "must be > 0"));
        }
        if !positive(self.exp_arg_cap) {
            return Err(Error::param("exp_arg_cap", "must be > 0"));
        }
        Ok(())
    }
}

/// Per-segment scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub segment_id: usize,
    /// Robot to centroid distance, meters.
    pub d: f64,
    #[serde(rename = "D")]
    pub distance_score: f64,
    #[serde(rename = "O")]
    pub occupancy_score: f64,
    pub h: f64,
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Exponential-hyperbolic distance score:
/// `tanh(E * sigmoid(E * (1 - csch(d / alpha))))` with `E = exp(d / beta)`.
///
/// Zero at `d = 0` (the right limit), close to zero up to roughly `alpha / 4`,
/// rising through the proportional band and saturating just below one.
/// The function is monotone for `alpha <= 4 * beta`; much larger ratios
/// produce shallow dips at short range.
pub fn distance_score(d: f64, params: &HeuristicParams) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::NegativeDistance(d));
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    let cap = params.exp_arg_cap;
    let e = (d / params.beta).min(cap).exp();
    let csch = 1.0 / (d / params.alpha).sinh();
    let inner = (e * (1.0 - csch)).clamp(-cap * cap, cap * cap);
    let score = (e * sigmoid(inner)).tanh();
    Ok(score.min(ONE_BELOW))
}

fn sech(x: f64) -> f64 {
    if x.abs() > 700.0 {
        0.0
    } else {
        1.0 / x.cosh()
    }
}

/// Cells whose centers lie inside the disk around `center`, clipped to the grid.
pub fn disk_cells(belief: &OccupancyGrid, center: (f64, f64), radius: f64) -> Vec<(usize, usize)> {
    let res = belief.resolution();
    let (ox, oy) = belief.origin();
    // Work in cell units so the membership slack is resolution independent.
    let cx = (center.0 - ox) / res;
    let cy = (center.1 - oy) / res;
    let r = radius / res;
    let r2 = r * r + DISK_EPS;
    let i0 = ((cx - r - 0.5).floor() as i64 - 1).max(0);
    let i1 = ((cx + r - 0.5).ceil() as i64 + 1).min(belief.width() as i64 - 1);
    let j0 = ((cy - r - 0.5).floor() as i64 - 1).max(0);
    let j1 = ((cy + r - 0.5).ceil() as i64 + 1).min(belief.height() as i64 - 1);
    let mut cells = Vec::new();
    for j in j0..=j1 {
        for i in i0..=i1 {
            let dx = i as f64 + 0.5 - cx;
            let dy = j as f64 + 0.5 - cy;
            if dx * dx + dy * dy <= r2 {
                cells.push((i as usize, j as usize));
            }
        }
    }
    cells
}

/// Occupancy stochastic score: mean remapped cost over the disk of radius
/// `max(radius_r, resolution)` around the centroid, times `sech` of the
/// scaled frontier length.
pub fn occupancy_score(
    segment: &FrontierSegment,
    belief: &OccupancyGrid,
    params: &HeuristicParams,
) -> f64 {
    let r = segment.radius_r.max(belief.resolution());
    let cells = disk_cells(belief, segment.centroid, r);
    if cells.is_empty() {
        return 0.0;
    }
    let sum: f64 = cells
        .iter()
        .map(|&(i, j)| remap_cost(belief.cost(i, j)))
        .sum();
    sum / cells.len() as f64 * sech(params.af_scale * segment.length_af)
}

/// `h = D * gamma + O * (1 - gamma)`.
pub fn heuristic(
    distance_score: f64,
    occupancy_score: f64,
    params: &HeuristicParams,
) -> Result<f64> {
    for (name, value) in [("D", distance_score), ("O", occupancy_score)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InputOutOfRange { name, value });
        }
    }
    Ok(distance_score * params.gamma + occupancy_score * (1.0 - params.gamma))
}

/// Scores every segment against the robot position.
pub fn score_segments(
    segments: &[FrontierSegment],
    robot: &Pose,
    belief: &OccupancyGrid,
    params: &HeuristicParams,
) -> Result<Vec<ScoreBreakdown>> {
    segments
        .iter()
        .enumerate()
        .map(|(id, seg)| {
            let d = robot.distance_to(seg.centroid.0, seg.centroid.1);
            let ds = distance_score(d, params)?;
            let os = occupancy_score(seg, belief, params);
            Ok(ScoreBreakdown {
                segment_id: id,
                d,
                distance_score: ds,
                occupancy_score: os,
                h: heuristic(ds, os, params)?,
            })
        })
        .collect()
}

/// Preference order: lower `h`, then shorter `d`, then canonical index.
pub fn compare_breakdowns(a: &ScoreBreakdown, b: &ScoreBreakdown) -> Ordering {
    a.h.total_cmp(&b.h)
        .then(a.d.total_cmp(&b.d))
        .then(a.segment_id.cmp(&b.segment_id))
}

/// Picks the segment with the lowest heuristic. Returns its index and the
/// breakdown of every segment.
pub fn select_waypoint(
    segments: &[FrontierSegment],
    robot: &Pose,
    belief: &OccupancyGrid,
    params: &HeuristicParams,
) -> Result<(usize, Vec<ScoreBreakdown>)> {
    let scores = score_segments(segments, robot, belief, params)?;
    let best = scores
        .iter()
        .min_by(|a, b| compare_breakdowns(a, b))
        .ok_or(Error::NoFrontiers)?
        .segment_id;
    Ok((best, scores))
}
