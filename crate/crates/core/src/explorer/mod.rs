//! Closed-loop frontier exploration.
//!
//! Each tick the robot follows its current path one control step, scans,
//! and replans when the goal is reached, the chosen segment has vanished or
//! the remaining path crosses newly discovered obstacles.

mod compare;
mod select;
mod worlds;

pub use compare::{
    aggregate_csv, compare_selectors, start_for_seed, AggregateRow, CompareSpec, Comparison,
    MapCase, RunSummary, Stats, AGGREGATE_CSV_HEADER,
};
pub use select::{select_baseline, Selector, SelectorKind};
pub use worlds::{benchmark_maps, generate_world, Tier};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frontier::{find_segments, FrontierSegment, DEFAULT_MIN_SEGMENT_SIZE};
use crate::grid::{raycast_reveal, reachable_mask, CellState, LidarModel, OccupancyGrid, Pose};
use crate::navigator::{
    plan_path, reachable_cells, traversable, KinematicLimits, PlannedPath, PlannerConfig,
};
use crate::scoring::{HeuristicParams, ScoreBreakdown};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunLimits {
    pub max_ticks: usize,
    /// Stop once this fraction of reachable free space is observed.
    pub target_rate: f64,
}

impl Default for RunLimits {
    fn default() -> Self {
        Self {
            max_ticks: 20_000,
            target_rate: 0.99,
        }
    }
}

/// Everything a run needs besides the map, start and selector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExplorationConfig {
    pub heuristic: HeuristicParams,
    pub lidar: LidarModel,
    pub kinematics: KinematicLimits,
    pub planner: PlannerConfig,
    pub limits: RunLimits,
    pub min_segment_size: usize,
}

impl Default for ExplorationConfig {
    fn default() -> Self {
        Self {
            heuristic: HeuristicParams::default(),
            lidar: LidarModel::default(),
            kinematics: KinematicLimits::default(),
            planner: PlannerConfig::default(),
            limits: RunLimits::default(),
            min_segment_size: DEFAULT_MIN_SEGMENT_SIZE,
        }
    }
}

impl ExplorationConfig {
    pub fn validate(&self) -> Result<()> {
        self.heuristic.validate()?;
        self.lidar.validate()?;
        self.kinematics.validate()?;
        if !(self.planner.cost_weight.is_finite() && self.planner.cost_weight >= 0.0) {
            return Err(Error::param("cost_weight", "must be >= 0"));
        }
        if !(self.limits.target_rate > 0.0 && self.limits.target_rate <= 1.0) {
            return Err(Error::param("target_rate", "must be in (0, 1]"));
        }
        Ok(())
    }
}

/// Distance-score slope used for the generated benchmark maps, meters.
pub const BENCHMARK_BETA: f64 = 16.0;

/// Defaults with the distance score stretched over building-scale distances.
///
/// With `beta` at half the LiDAR range the distance score saturates within
/// a few meters, so on maps spanning 6 to 14 m every frontier beyond the
/// first room looks equally far and the occupancy term alone decides.
pub fn benchmark_config() -> ExplorationConfig {
    ExplorationConfig {
        heuristic: HeuristicParams {
            beta: BENCHMARK_BETA,
            ..HeuristicParams::default()
        },
        ..ExplorationConfig::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Complete,
    Stalled,
    TickLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub tick: usize,
    /// Seconds.
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub cumulative_distance: f64,
    pub exploration_rate: f64,
}

/// One waypoint choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub tick: usize,
    pub segment_count: usize,
    pub scores: Vec<ScoreBreakdown>,
    /// Index into this tick's segment list.
    pub chosen: usize,
    pub centroid: (f64, f64),
    pub goal: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub selector: SelectorKind,
    pub start: Pose,
    pub dt: f64,
    pub outcome: Outcome,
    pub ticks: usize,
    pub samples: Vec<Sample>,
    pub decisions: Vec<Decision>,
}

impl RunRecord {
    pub const CSV_HEADER: &'static str = "t,x,y,cumulative_distance,exploration_rate";

    fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("a run always has its initial sample")
    }

    /// Meters driven.
    pub fn distance(&self) -> f64 {
        self.last().cumulative_distance
    }

    /// Seconds elapsed.
    pub fn time(&self) -> f64 {
        self.last().t
    }

    pub fn exploration_rate(&self) -> f64 {
        self.last().exploration_rate
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.t, s.x, s.y, s.cumulative_distance, s.exploration_rate
            ));
        }
        out
    }
}

struct Active {
    path: PlannedPath,
    segment: FrontierSegment,
}

struct Run<'a> {
    truth: &'a OccupancyGrid,
    cfg: &'a ExplorationConfig,
    belief: OccupancyGrid,
    reachable: Vec<bool>,
    total: usize,
    known: usize,
    stale: Vec<bool>,
}

impl Run<'_> {
    fn rate(&self) -> f64 {
        self.known as f64 / self.total as f64
    }

    fn scan(&mut self, pose: &Pose) -> Result<()> {
        let scan = raycast_reveal(&mut self.belief, self.truth, pose, &self.cfg.lidar)?;
        self.known += scan.changed.iter().filter(|&&k| self.reachable[k]).count();
        Ok(())
    }

    fn is_frontier(&self, i: usize, j: usize) -> bool {
        if self.belief.state(i, j) != CellState::Free {
            return false;
        }
        let (w, h) = (self.belief.width(), self.belief.height());
        let unknown = |i: usize, j: usize| self.belief.state(i, j) == CellState::Unknown;
        (i > 0 && unknown(i - 1, j))
            || (i + 1 < w && unknown(i + 1, j))
            || (j > 0 && unknown(i, j - 1))
            || (j + 1 < h && unknown(i, j + 1))
    }

    fn segment_alive(&self, seg: &FrontierSegment) -> bool {
        seg.cells.iter().any(|&(i, j)| self.is_frontier(i, j))
    }

    fn mark_stale(&mut self, seg: &FrontierSegment) {
        for &(i, j) in &seg.cells {
            let k = self.belief.index(i, j);
            self.stale[k] = true;
        }
    }

    /// Current segments minus those that were reached without being cleared.
    fn candidate_segments(&self) -> Vec<FrontierSegment> {
        let mut segs = find_segments(&self.belief, self.cfg.min_segment_size);
        segs.retain(|s| {
            let stale = s
                .cells
                .iter()
                .filter(|&&(i, j)| self.stale[self.belief.index(i, j)])
                .count();
            2 * stale <= s.len()
        });
        segs
    }

    /// Plans to the centroid. Failing that, plans to the reachable
    /// traversable cell nearest the centroid among those within the relax
    /// radius of some member cell.
    fn plan_to_segment(
        &self,
        pose: &Pose,
        seg: &FrontierSegment,
        reach: &mut Option<Vec<bool>>,
    ) -> Option<(PlannedPath, (f64, f64))> {
        if let Ok(p) = plan_path(&self.belief, pose, seg.centroid, &self.cfg.planner) {
            return Some((p, seg.centroid));
        }
        if reach.is_none() {
            *reach = Some(reachable_cells(&self.belief, pose).ok()?);
        }
        let reach = reach.as_ref().expect("computed above");
        let r = self.cfg.planner.goal_relax_radius as i64;
        let mut best: Option<(f64, usize)> = None;
        for &(ci, cj) in &seg.cells {
            for dj in -r..=r {
                for di in -r..=r {
                    let (i, j) = (ci as i64 + di, cj as i64 + dj);
                    if di * di + dj * dj > r * r || !self.belief.in_bounds(i, j) {
                        continue;
                    }
                    let k = self.belief.index(i as usize, j as usize);
                    if !reach[k] || !traversable(&self.belief, k) {
                        continue;
                    }
                    let d = dist2(
                        self.belief.cell_center(i as usize, j as usize),
                        seg.centroid,
                    );
                    if best.is_none_or(|(bd, bk)| (d, k) < (bd, bk)) {
                        best = Some((d, k));
                    }
                }
            }
        }
        let (_, k) = best?;
        let (i, j) = self.belief.coords(k);
        let goal = self.belief.cell_center(i, j);
        plan_path(&self.belief, pose, goal, &self.cfg.planner)
            .ok()
            .map(|p| (p, goal))
    }
}

fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

/// Explores `truth` from `start` until completion, a stall or the tick limit.
pub fn run_exploration(
    truth: &OccupancyGrid,
    start: Pose,
    selector: SelectorKind,
    cfg: &ExplorationConfig,
) -> Result<RunRecord> {
    run_exploration_with_map(truth, start, selector, cfg).map(|(rec, _)| rec)
}

/// Like [`run_exploration`], also returning the final belief grid.
pub fn run_exploration_with_map(
    truth: &OccupancyGrid,
    start: Pose,
    selector: SelectorKind,
    cfg: &ExplorationConfig,
) -> Result<(RunRecord, OccupancyGrid)> {
    cfg.validate()?;
    truth.pose_cell(&start)?;
    let reachable = reachable_mask(truth, &start)?;
    let total = reachable.iter().filter(|&&r| r).count();
    let mut run = Run {
        truth,
        cfg,
        belief: truth.unknown_like(),
        reachable,
        total,
        known: 0,
        stale: vec![false; truth.len()],
    };
    let mut selector_state = Selector::new(selector);
    let mut robot = cfg.kinematics.at(start);
    let dt = cfg.kinematics.dt;
    let mut cumulative = 0.0;
    let mut samples = Vec::new();
    let mut decisions = Vec::new();
    let sample = |tick: usize, pose: &Pose, dist: f64, rate: f64| Sample {
        tick,
        t: tick as f64 * dt,
        x: pose.x,
        y: pose.y,
        theta: pose.theta,
        cumulative_distance: dist,
        exploration_rate: rate,
    };

    run.scan(&start)?;
    samples.push(sample(0, &start, 0.0, run.rate()));

    let mut active: Option<Active> = None;
    let mut outcome = Outcome::TickLimit;
    let mut tick = 0;
    loop {
        if run.rate() >= cfg.limits.target_rate {
            outcome = Outcome::Complete;
            break;
        }
        if tick >= cfg.limits.max_ticks {
            break;
        }

        let replan = match &active {
            None => true,
            Some(a) if a.path.is_empty() => {
                if run.segment_alive(&a.segment) {
                    let seg = a.segment.clone();
                    run.mark_stale(&seg);
                }
                true
            }
            Some(a) => !a.path.is_valid(&run.belief) || !run.segment_alive(&a.segment),
        };
        if replan {
            active = None;
            let segments = run.candidate_segments();
            if segments.is_empty() {
                outcome = Outcome::Complete;
                break;
            }
            let (order, scores) =
                selector_state.rank(&segments, &robot.pose, &run.belief, &cfg.heuristic)?;
            let mut reach = None;
            for idx in order {
                if let Some((path, goal)) =
                    run.plan_to_segment(&robot.pose, &segments[idx], &mut reach)
                {
                    decisions.push(Decision {
                        tick,
                        segment_count: segments.len(),
                        scores: scores.clone(),
                        chosen: idx,
                        centroid: segments[idx].centroid,
                        goal,
                    });
                    active = Some(Active {
                        path,
                        segment: segments[idx].clone(),
                    });
                    break;
                }
            }
            if active.is_none() {
                outcome = Outcome::Stalled;
                break;
            }
        }

        let a = active.as_mut().expect("active plan after replanning");
        cumulative += robot.advance(&mut a.path);
        tick += 1;
        run.scan(&robot.pose)?;
        samples.push(sample(tick, &robot.pose, cumulative, run.rate()));
    }

    let record = RunRecord {
        selector,
        start,
        dt,
        outcome,
        ticks: tick,
        samples,
        decisions,
    };
    Ok((record, run.belief))
}
