use std::collections::VecDeque;

use super::{CellState, OccupancyGrid, Pose};
use crate::error::{Error, Result};

/// Truth Free cells 4-connected to the start pose's cell.
pub fn reachable_mask(truth: &OccupancyGrid, start: &Pose) -> Result<Vec<bool>> {
    let (si, sj) = truth
        .world_to_cell(start.x, start.y)
        .ok_or(Error::StartUnreachable)?;
    if truth.state(si, sj) != CellState::Free {
        return Err(Error::StartUnreachable);
    }
    let (w, h) = (truth.width(), truth.height());
    let mut mask = vec![false; truth.len()];
    let mut queue = VecDeque::new();
    let s = truth.index(si, sj);
    mask[s] = true;
    queue.push_back(s);
    while let Some(k) = queue.pop_front() {
        let (i, j) = truth.coords(k);
        let mut visit = |n: usize| {
            if !mask[n] && truth.states()[n] == CellState::Free {
                mask[n] = true;
                queue.push_back(n);
            }
        };
        if i > 0 {
            visit(k - 1);
        }
        if i + 1 < w {
            visit(k + 1);
        }
        if j > 0 {
            visit(k - w);
        }
        if j + 1 < h {
            visit(k + w);
        }
    }
    Ok(mask)
}

/// Fraction of reachable truth Free cells that the belief has observed.
pub fn exploration_rate(
    belief: &OccupancyGrid,
    truth: &OccupancyGrid,
    start: &Pose,
) -> Result<f64> {
    if !belief.same_geometry(truth) {
        return Err(Error::GridMismatch);
    }
    let mask = reachable_mask(truth, start)?;
    let total = mask.iter().filter(|&&m| m).count();
    let known = mask
        .iter()
        .zip(belief.states())
        .filter(|(&m, &s)| m && s != CellState::Unknown)
        .count();
    Ok(known as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn center(g: &OccupancyGrid, i: usize, j: usize) -> Pose {
        let (x, y) = g.cell_center(i, j);
        Pose::new(x, y, 0.0)
    }

    #[test]
    fn nothing_known() {
        let truth = OccupancyGrid::from_rows(&["...", "..."], 1.0).unwrap();
        let belief = truth.unknown_like();
        assert_eq!(
            exploration_rate(&belief, &truth, &center(&truth, 0, 0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn full_knowledge() {
        let truth = OccupancyGrid::from_rows(&["..#", "#.."], 1.0).unwrap();
        assert_eq!(
            exploration_rate(&truth, &truth, &center(&truth, 0, 0)).unwrap(),
            1.0
        );
    }

    #[test]
    fn hand_counted_fixture() {
        // 10 Free cells reachable from (0, 0); the bottom row and (4, 3) are sealed off.
        let truth =
            OccupancyGrid::from_rows(&["....#", "....#", "..###", "####.", "....#"], 1.0).unwrap();
        let belief =
            OccupancyGrid::from_rows(&["....?", "..???", "?.?##", "?????", "....?"], 1.0).unwrap();
        let mask = reachable_mask(&truth, &center(&truth, 0, 0)).unwrap();
        assert_eq!(mask.iter().filter(|&&m| m).count(), 10);
        let rate = exploration_rate(&belief, &truth, &center(&truth, 0, 0)).unwrap();
        assert!((rate - 0.7).abs() < 1e-15);
    }

    #[test]
    fn start_on_obstacle() {
        let truth = OccupancyGrid::from_rows(&[".#"], 1.0).unwrap();
        assert_eq!(
            exploration_rate(&truth, &truth, &center(&truth, 1, 0)).unwrap_err(),
            Error::StartUnreachable
        );
        assert_eq!(
            exploration_rate(&truth, &truth, &Pose::new(-1.0, 0.0, 0.0)).unwrap_err(),
            Error::StartUnreachable
        );
    }
}
