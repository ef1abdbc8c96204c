//! LiDAR reveal checked against a brute-force slab intersection of every
//! beam with every cell.

mod common;

use frontier_explore::{raycast_reveal, CellState, LidarModel, OccupancyGrid, Pose};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Entry and exit parameters of the ray `o + t d` through `[lo, lo + 1]`.
fn slab(o: f64, d: f64, lo: f64) -> Option<(f64, f64)> {
    if d == 0.0 {
        return (o > lo && o < lo + 1.0).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let a = (lo - o) / d;
    let b = (lo + 1.0 - o) / d;
    Some((a.min(b), a.max(b)))
}

struct Expected {
    revealed: Vec<Option<CellState>>,
    ranges: Vec<f64>,
}

fn oracle(truth: &OccupancyGrid, pose: &Pose, lidar: &LidarModel) -> Expected {
    let res = truth.resolution();
    let reach = lidar.max_range / res;
    let (si, sj) = truth.pose_cell(pose).unwrap();
    let (ox, oy) = (si as f64 + 0.5, sj as f64 + 0.5);
    let mut revealed = vec![None; truth.len()];
    let mut ranges = Vec::new();
    for k in 0..lidar.beam_count {
        let a = lidar.beam_angle(pose.theta, k);
        let (dx, dy) = (a.cos(), a.sin());
        // Every cell whose interior the ray crosses before the range limit.
        let mut hit: Vec<(f64, usize)> = Vec::new();
        for j in 0..truth.height() {
            for i in 0..truth.width() {
                let (Some(x), Some(y)) = (slab(ox, dx, i as f64), slab(oy, dy, j as f64)) else {
                    continue;
                };
                let enter = x.0.max(y.0).max(0.0);
                let exit = x.1.min(y.1);
                if enter < exit && enter < reach {
                    hit.push((enter, truth.index(i, j)));
                }
            }
        }
        let first = hit
            .iter()
            .filter(|&&(_, c)| truth.states()[c] == CellState::Occupied)
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .copied();
        let cutoff = first.map_or(f64::INFINITY, |f| f.0);
        let center_dist = |c: usize| {
            let (i, j) = truth.coords(c);
            let (di, dj) = (i as f64 - si as f64, j as f64 - sj as f64);
            di * di + dj * dj
        };
        let in_range = |c: usize| center_dist(c) <= reach * reach + 1e-9;
        for &(t, c) in &hit {
            if t <= cutoff && in_range(c) {
                revealed[c] = Some(truth.states()[c]);
            }
        }
        ranges.push(match first {
            Some((_, c)) if in_range(c) => center_dist(c).sqrt() * res,
            _ => lidar.max_range,
        });
    }
    Expected { revealed, ranges }
}

fn check(truth: &OccupancyGrid, pose: Pose, lidar: LidarModel) {
    let mut belief = truth.unknown_like();
    let scan = raycast_reveal(&mut belief, truth, &pose, &lidar).unwrap();
    let want = oracle(truth, &pose, &lidar);
    for k in 0..truth.len() {
        let expected = want.revealed[k].unwrap_or(CellState::Unknown);
        assert_eq!(
            belief.states()[k],
            expected,
            "cell {:?} pose {pose:?} lidar {lidar:?}",
            truth.coords(k)
        );
    }
    assert_eq!(scan.ranges.len(), lidar.beam_count);
    for (got, want) in scan.ranges.iter().zip(&want.ranges) {
        assert!((got - want).abs() <= 1e-12, "range {got} vs {want}");
    }
    // Incremental cost update agrees with a full inflation pass.
    let mut full = belief.clone();
    full.inflate(*belief.inflation()).unwrap();
    assert_eq!(belief.costs(), full.costs());
}

#[test]
fn empty_disk_matches_slab_oracle() {
    let truth = OccupancyGrid::filled(21, 21, 0.5, CellState::Free).unwrap();
    let (x, y) = truth.cell_center(10, 10);
    let lidar = LidarModel::new(360, 5.0, TAU).unwrap();
    check(&truth, Pose::new(x, y, 0.0), lidar);
    let mut belief = truth.unknown_like();
    raycast_reveal(&mut belief, &truth, &Pose::new(x, y, 0.0), &lidar).unwrap();
    // Range 10 cells from the center reaches the grid edge on the axes only.
    for j in 0..21usize {
        for i in 0..21usize {
            let d2 = (i as f64 - 10.0).powi(2) + (j as f64 - 10.0).powi(2);
            let known = belief.state(i, j) != CellState::Unknown;
            if d2 > 100.0 {
                assert!(!known, "({i},{j}) revealed beyond range");
            }
        }
    }
}

#[test]
fn random_clutter_matches_slab_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..120 {
        let w = rng.gen_range(3..=41);
        let h = rng.gen_range(3..=41);
        let res = [0.05, 0.1, 0.25, 0.5][rng.gen_range(0..4)];
        let density = rng.gen_range(0.0..0.35);
        let mut truth = common::random_truth(&mut rng, w, h, res, density);
        let free = common::cells_in(&truth, CellState::Free);
        if free.is_empty() {
            continue;
        }
        if case % 3 == 0 {
            truth = truth.with_origin(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        }
        let (i, j) = truth.coords(free[rng.gen_range(0..free.len())]);
        let (cx, cy) = truth.cell_center(i, j);
        let jitter = 0.49 * res;
        let pose = Pose::new(
            cx + rng.gen_range(-jitter..jitter),
            cy + rng.gen_range(-jitter..jitter),
            rng.gen_range(-4.0..4.0),
        );
        let span = if rng.gen_bool(0.5) {
            TAU
        } else {
            rng.gen_range(0.1..TAU)
        };
        let lidar = LidarModel::new(
            rng.gen_range(1..=400),
            rng.gen_range(0.05..(w.max(h) as f64 * res)),
            span,
        )
        .unwrap();
        check(&truth, pose, lidar);
    }
}

#[test]
fn axis_and_diagonal_beams_match_slab_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let truth = common::random_truth(&mut rng, 25, 25, 0.1, 0.15);
        let free = common::cells_in(&truth, CellState::Free);
        let (i, j) = truth.coords(free[rng.gen_range(0..free.len())]);
        let (x, y) = truth.cell_center(i, j);
        // Eight beams on the axes and exact diagonals exercise corner crossings.
        check(
            &truth,
            Pose::new(x, y, 0.0),
            LidarModel::new(8, 2.0, TAU).unwrap(),
        );
    }
}
