//! Cost-aware grid planning and a simple differential-drive follower.

use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use crate::error::{Error, Result};
use crate::grid::{normalize_angle, remap_cost, CellState, OccupancyGrid, Pose, COST_INSCRIBED};

/// No forward motion while the heading error exceeds this.
pub const HEADING_GATE: f64 = FRAC_PI_4;

const NEIGHBOURS: [(i64, i64); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    /// Multiplier on the remapped cell cost added to each step.
    pub cost_weight: f64,
    /// Search radius (cells) for a substitute goal when the goal cell is blocked.
    pub goal_relax_radius: usize,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            cost_weight: 3.0,
            goal_relax_radius: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedPath {
    /// Cell centers to visit, excluding the start cell.
    pub waypoints: VecDeque<(f64, f64)>,
    pub cells: Vec<(usize, usize)>,
    pub total_cost: f64,
    /// Meters.
    pub total_length: f64,
    pub resolution: f64,
}

impl PlannedPath {
    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn goal_cell(&self) -> Option<(usize, usize)> {
        self.cells.last().copied()
    }

    /// True while every remaining waypoint is still traversable in `belief`.
    pub fn is_valid(&self, belief: &OccupancyGrid) -> bool {
        let skip = self.cells.len() - self.waypoints.len();
        self.cells[skip..]
            .iter()
            .all(|&(i, j)| traversable(belief, belief.index(i, j)))
    }
}

/// Free and cheaper than the inscribed band.
#[inline]
pub fn traversable(belief: &OccupancyGrid, k: usize) -> bool {
    belief.states()[k] == CellState::Free && belief.costs()[k] < COST_INSCRIBED
}

/// Neighbours reachable in one step: 8-connected, no corner cutting.
fn successors(belief: &OccupancyGrid, k: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
    let (i, j) = belief.coords(k);
    NEIGHBOURS.iter().filter_map(move |&(di, dj)| {
        let (ni, nj) = (i as i64 + di, j as i64 + dj);
        if !belief.in_bounds(ni, nj) {
            return None;
        }
        let n = belief.index(ni as usize, nj as usize);
        if !traversable(belief, n) {
            return None;
        }
        if di != 0 && dj != 0 {
            let a = belief.index(ni as usize, j);
            let b = belief.index(i, nj as usize);
            if !traversable(belief, a) || !traversable(belief, b) {
                return None;
            }
            Some((n, SQRT_2))
        } else {
            Some((n, 1.0))
        }
    })
}

/// Cost of stepping into cell `n`, `step` cells long.
#[inline]
pub fn step_cost(belief: &OccupancyGrid, n: usize, step: f64, cfg: &PlannerConfig) -> f64 {
    step * belief.resolution() * (1.0 + cfg.cost_weight * remap_cost(belief.costs()[n]))
}

fn reachable_from(belief: &OccupancyGrid, start: usize) -> Vec<bool> {
    let mut seen = vec![false; belief.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(k) = queue.pop_front() {
        for (n, _) in successors(belief, k) {
            if !seen[n] {
                seen[n] = true;
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Cells the planner can reach from the pose's cell, including that cell.
pub fn reachable_cells(belief: &OccupancyGrid, from: &Pose) -> Result<Vec<bool>> {
    let (i, j) = belief.pose_cell(from)?;
    Ok(reachable_from(belief, belief.index(i, j)))
}

#[derive(PartialEq)]
struct Open {
    f: f64,
    k: usize,
}

impl Eq for Open {}

impl Ord for Open {
    fn cmp(&self, other: &Self) -> Ordering {
        self.f.total_cmp(&other.f).then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A* from the pose's cell to the cell containing `to_world`.
///
/// When the goal cell is not traversable the goal relaxes to the nearest
/// reachable traversable cell within `goal_relax_radius` cells.
pub fn plan_path(
    belief: &OccupancyGrid,
    from: &Pose,
    to_world: (f64, f64),
    cfg: &PlannerConfig,
) -> Result<PlannedPath> {
    let (si, sj) = belief.pose_cell(from)?;
    let start = belief.index(si, sj);
    if belief.states()[start] == CellState::Occupied {
        return Err(Error::NoPath);
    }
    let (gi, gj) = belief
        .world_to_cell(to_world.0, to_world.1)
        .ok_or(Error::NoPath)?;
    let goal_cell = belief.index(gi, gj);

    let goal = if goal_cell == start || traversable(belief, goal_cell) {
        goal_cell
    } else {
        relax_goal(belief, start, (gi, gj), cfg.goal_relax_radius).ok_or(Error::NoPath)?
    };
    astar(belief, start, goal, cfg).ok_or(Error::NoPath)
}

fn relax_goal(
    belief: &OccupancyGrid,
    start: usize,
    (gi, gj): (usize, usize),
    radius: usize,
) -> Option<usize> {
    let r = radius as i64;
    let mut candidates = Vec::new();
    for dj in -r..=r {
        for di in -r..=r {
            let d2 = di * di + dj * dj;
            if d2 > r * r {
                continue;
            }
            let (i, j) = (gi as i64 + di, gj as i64 + dj);
            if !belief.in_bounds(i, j) {
                continue;
            }
            let k = belief.index(i as usize, j as usize);
            if traversable(belief, k) || k == start {
                candidates.push((d2, j, i, k));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    candidates.sort_unstable();
    let reach = reachable_from(belief, start);
    candidates.into_iter().map(|c| c.3).find(|&k| reach[k])
}

fn octile(belief: &OccupancyGrid, a: usize, b: usize) -> f64 {
    let (ai, aj) = belief.coords(a);
    let (bi, bj) = belief.coords(b);
    let dx = ai.abs_diff(bi) as f64;
    let dy = aj.abs_diff(bj) as f64;
    let (lo, hi) = if dx < dy { (dx, dy) } else { (dy, dx) };
    hi - lo + SQRT_2 * lo
}

fn astar(
    belief: &OccupancyGrid,
    start: usize,
    goal: usize,
    cfg: &PlannerConfig,
) -> Option<PlannedPath> {
    let n = belief.len();
    // Cheapest traversable step multiplier is 1 + w * remap(0).
    let h_scale = belief.resolution() * (1.0 + cfg.cost_weight * remap_cost(0));
    let mut g = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    g[start] = 0.0;
    open.push(Reverse(Open {
        f: octile(belief, start, goal) * h_scale,
        k: start,
    }));
    while let Some(Reverse(Open { k, .. })) = open.pop() {
        if closed[k] {
            continue;
        }
        closed[k] = true;
        if k == goal {
            break;
        }
        for (m, step) in successors(belief, k) {
            if closed[m] {
                continue;
            }
            let cand = g[k] + step_cost(belief, m, step, cfg);
            if cand < g[m] {
                g[m] = cand;
                parent[m] = k;
                open.push(Reverse(Open {
                    f: cand + octile(belief, m, goal) * h_scale,
                    k: m,
                }));
            }
        }
    }
    if !closed[goal] {
        return None;
    }

    let mut cells = Vec::new();
    let mut k = goal;
    while k != start {
        cells.push(belief.coords(k));
        k = parent[k];
    }
    cells.reverse();
    let res = belief.resolution();
    let mut total_length = 0.0;
    let mut prev = belief.coords(start);
    for &c in &cells {
        let diag = c.0 != prev.0 && c.1 != prev.1;
        total_length += if diag { SQRT_2 } else { 1.0 } * res;
        prev = c;
    }
    Some(PlannedPath {
        waypoints: cells
            .iter()
            .map(|&(i, j)| belief.cell_center(i, j))
            .collect(),
        cells,
        total_cost: g[goal],
        total_length,
        resolution: res,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicState {
    pub pose: Pose,
    /// m/s
    pub v_max: f64,
    /// rad/s
    pub w_max: f64,
    /// Seconds per tick.
    pub dt: f64,
}

/// Speed limits and tick length without a pose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KinematicLimits {
    pub v_max: f64,
    pub w_max: f64,
    pub dt: f64,
}

impl Default for KinematicLimits {
    fn default() -> Self {
        Self {
            v_max: 0.26,
            w_max: 1.82,
            dt: 0.2,
        }
    }
}

impl KinematicLimits {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("v_max", self.v_max),
            ("w_max", self.w_max),
            ("dt", self.dt),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, "must be > 0"));
            }
        }
        Ok(())
    }

    pub fn at(&self, pose: Pose) -> KinematicState {
        KinematicState {
            pose,
            v_max: self.v_max,
            w_max: self.w_max,
            dt: self.dt,
        }
    }
}

impl KinematicState {
    /// One control tick toward the next waypoint. Returns the distance moved.
    ///
    /// The robot turns by at most `w_max * dt`, drives forward only when the
    /// remaining heading error is within [`HEADING_GATE`], and never moves
    /// more than `v_max * dt` or past the waypoint. Waypoints within half a
    /// cell are popped.
    pub fn advance(&mut self, path: &mut PlannedPath) -> f64 {
        let tol = 0.5 * path.resolution;
        self.pop_reached(path, tol);
        let Some(&(tx, ty)) = path.waypoints.front() else {
            return 0.0;
        };
        let (dx, dy) = (tx - self.pose.x, ty - self.pose.y);
        let dist = dx.hypot(dy);
        let error = normalize_angle(dy.atan2(dx) - self.pose.theta);
        let max_turn = self.w_max * self.dt;
        let turn = error.clamp(-max_turn, max_turn);
        let theta = normalize_angle(self.pose.theta + turn);
        let mut moved = 0.0;
        let (mut x, mut y) = (self.pose.x, self.pose.y);
        if (error - turn).abs() <= HEADING_GATE {
            moved = (self.v_max * self.dt).min(dist);
            x += moved * theta.cos();
            y += moved * theta.sin();
        }
        self.pose = Pose { x, y, theta };
        self.pop_reached(path, tol);
        moved
    }

    fn pop_reached(&self, path: &mut PlannedPath, tol: f64) {
        while let Some(&(x, y)) = path.waypoints.front() {
            if self.pose.distance_to(x, y) <= tol {
                path.waypoints.pop_front();
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pose_at(g: &OccupancyGrid, i: usize, j: usize) -> Pose {
        let (x, y) = g.cell_center(i, j);
        Pose::new(x, y, 0.0)
    }

    #[test]
    fn straight_corridor() {
        let mut rows = vec!["............"; 7];
        rows[0] = "############";
        rows[6] = "############";
        let g = OccupancyGrid::from_rows(&rows, 0.1).unwrap();
        let cfg = PlannerConfig::default();
        let path = plan_path(&g, &pose_at(&g, 0, 3), g.cell_center(11, 3), &cfg).unwrap();
        assert_eq!(path.cells.len(), 11);
        assert!(path.cells.iter().all(|&(_, j)| j == 3));
        assert!((path.total_length - 11.0 * 0.1).abs() < 1e-12);
    }

    #[test]
    fn relaxes_blocked_goal() {
        // 1 m cells keep inflation off the neighbouring cells.
        let g = OccupancyGrid::from_rows(
            &[".......", "....###", "....###", "....###", "......."],
            1.0,
        )
        .unwrap();
        let cfg = PlannerConfig::default();
        let path = plan_path(&g, &pose_at(&g, 0, 2), g.cell_center(6, 2), &cfg).unwrap();
        // (6,0) and (6,4) are both two cells away; the lower row wins the tie.
        assert_eq!(path.goal_cell(), Some((6, 0)));
    }

    #[test]
    fn unreachable_goal() {
        let g = OccupancyGrid::from_rows(&["..#..", "..#..", "..#.."], 1.0).unwrap();
        let err = plan_path(
            &g,
            &pose_at(&g, 0, 1),
            g.cell_center(4, 1),
            &PlannerConfig::default(),
        );
        assert_eq!(err.unwrap_err(), Error::NoPath);
    }

    #[test]
    fn unknown_is_not_traversable() {
        let g = OccupancyGrid::from_rows(&["..?.."], 1.0).unwrap();
        let cfg = PlannerConfig {
            goal_relax_radius: 0,
            ..PlannerConfig::default()
        };
        assert!(plan_path(&g, &pose_at(&g, 0, 0), g.cell_center(4, 0), &cfg).is_err());
    }

    fn straight_path(n: usize, res: f64) -> PlannedPath {
        let cells: Vec<_> = (1..=n).map(|i| (i, 0)).collect();
        PlannedPath {
            waypoints: cells
                .iter()
                .map(|&(i, _)| ((i as f64 + 0.5) * res, 0.5 * res))
                .collect(),
            cells,
            total_cost: 0.0,
            total_length: n as f64 * res,
            resolution: res,
        }
    }

    #[test]
    fn drives_straight_ahead() {
        let limits = KinematicLimits {
            v_max: 0.1,
            w_max: 1.0,
            dt: 1.0,
        };
        let res = 0.1;
        let mut state = limits.at(Pose::new(0.05, 0.05, 0.0));
        let mut path = straight_path(10, res);
        let mut total = 0.0;
        for _ in 0..10 {
            total += state.advance(&mut path);
        }
        assert!(path.is_empty());
        assert!((total - 1.0).abs() < 1e-9);
        assert!(state.pose.distance_to(1.05, 0.05) <= 0.5 * res);
    }

    #[test]
    fn rotates_before_moving_backwards() {
        let limits = KinematicLimits {
            v_max: 0.2,
            w_max: 0.5,
            dt: 1.0,
        };
        let mut state = limits.at(Pose::new(0.05, 0.05, std::f64::consts::PI));
        let mut path = straight_path(5, 0.1);
        let mut first_move = None;
        for tick in 0..20 {
            let before = state.pose.theta;
            let moved = state.advance(&mut path);
            if moved > 0.0 {
                first_move = Some(tick);
                break;
            }
            assert_ne!(before, state.pose.theta);
        }
        // Heading error pi shrinks by 0.5 rad per tick; it drops below pi/4 on the fifth tick.
        assert_eq!(first_move, Some(4));
    }

    #[test]
    fn empty_path_is_noop() {
        let mut state = KinematicLimits::default().at(Pose::new(1.0, 1.0, 0.3));
        let before = state;
        let mut path = straight_path(0, 0.1);
        assert_eq!(state.advance(&mut path), 0.0);
        assert_eq!(state, before);
    }
}
