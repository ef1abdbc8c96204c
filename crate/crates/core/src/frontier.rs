//! Frontier detection and clustering.
//!
//! A frontier cell is a Free belief cell with at least one Unknown
//! 4-neighbour. Frontier cells are grouped into 8-connected segments that
//! carry the centroid, length and enclosing radius used for scoring.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::grid::{CellState, OccupancyGrid};

/// Default minimum segment size in cells.
pub const DEFAULT_MIN_SEGMENT_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierMask {
    pub width: usize,
    pub height: usize,
    pub marks: Vec<bool>,
}

impl FrontierMask {
    pub fn count(&self) -> usize {
        self.marks.iter().filter(|&&m| m).count()
    }

    pub fn is_marked(&self, i: usize, j: usize) -> bool {
        self.marks[i + self.width * j]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierSegment {
    /// Member cells `(i, j)`, sorted by `(j, i)`.
    pub cells: Vec<(usize, usize)>,
    /// Mean of the member cell centers, world meters.
    pub centroid: (f64, f64),
    /// Cell count times resolution, meters.
    pub length_af: f64,
    /// Distance from the centroid to the farthest member cell center, meters.
    pub radius_r: f64,
    pub farthest_cell: (usize, usize),
}

impl FrontierSegment {
    /// Builds a segment from its cells, computing the geometric attributes.
    ///
    /// Panics if `cells` is empty.
    pub fn from_cells(mut cells: Vec<(usize, usize)>, belief: &OccupancyGrid) -> Self {
        assert!(
            !cells.is_empty(),
            "frontier segment needs at least one cell"
        );
        cells.sort_unstable_by_key(|&(i, j)| (j, i));
        let n = cells.len() as f64;
        let (sx, sy) = cells.iter().fold((0.0, 0.0), |(sx, sy), &(i, j)| {
            let (x, y) = belief.cell_center(i, j);
            (sx + x, sy + y)
        });
        let centroid = (sx / n, sy / n);
        let mut farthest_cell = cells[0];
        let mut best = -1.0;
        for &(i, j) in &cells {
            let (x, y) = belief.cell_center(i, j);
            let d2 = (x - centroid.0).powi(2) + (y - centroid.1).powi(2);
            if d2 > best {
                best = d2;
                farthest_cell = (i, j);
            }
        }
        Self {
            length_af: n * belief.resolution(),
            radius_r: best.sqrt(),
            farthest_cell,
            centroid,
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Canonical ordering: centroid `y`, then `x`, then first cell.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.centroid
            .1
            .total_cmp(&other.centroid.1)
            .then(self.centroid.0.total_cmp(&other.centroid.0))
            .then_with(|| self.cells[0].1.cmp(&other.cells[0].1))
            .then_with(|| self.cells[0].0.cmp(&other.cells[0].0))
    }
}

/// Marks Free cells that border Unknown space (4-neighbourhood).
pub fn detect_frontiers(belief: &OccupancyGrid) -> FrontierMask {
    let (w, h) = (belief.width(), belief.height());
    let states = belief.states();
    let mut marks = vec![false; states.len()];
    let unknown = |k: usize| states[k] == CellState::Unknown;
    for j in 0..h {
        let row = j * w;
        for i in 0..w {
            let k = row + i;
            if states[k] != CellState::Free {
                continue;
            }
            marks[k] = (i > 0 && unknown(k - 1))
                || (i + 1 < w && unknown(k + 1))
                || (j > 0 && unknown(k - w))
                || (j + 1 < h && unknown(k + w));
        }
    }
    FrontierMask {
        width: w,
        height: h,
        marks,
    }
}

/// Groups marked cells into 8-connected segments of at least `min_size` cells.
pub fn cluster_segments(
    mask: &FrontierMask,
    belief: &OccupancyGrid,
    min_size: usize,
) -> Vec<FrontierSegment> {
    let (w, h) = (mask.width, mask.height);
    assert_eq!(
        (w, h),
        (belief.width(), belief.height()),
        "mask/belief size mismatch"
    );
    let mut visited = vec![false; mask.marks.len()];
    let mut stack = Vec::new();
    let mut segments = Vec::new();

    for start in 0..mask.marks.len() {
        if !mask.marks[start] || visited[start] {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        let mut cells = Vec::new();
        while let Some(k) = stack.pop() {
            let (i, j) = (k % w, k / w);
            cells.push((i, j));
            let i0 = i.saturating_sub(1);
            let i1 = (i + 1).min(w - 1);
            let j0 = j.saturating_sub(1);
            let j1 = (j + 1).min(h - 1);
            for nj in j0..=j1 {
                for ni in i0..=i1 {
                    let n = ni + nj * w;
                    if mask.marks[n] && !visited[n] {
                        visited[n] = true;
                        stack.push(n);
                    }
                }
            }
        }
        if cells.len() >= min_size.max(1) {
            segments.push(FrontierSegment::from_cells(cells, belief));
        }
    }
    segments.sort_by(|a, b| a.canonical_cmp(b));
    segments
}

/// Convenience: detect then cluster.
pub fn find_segments(belief: &OccupancyGrid, min_size: usize) -> Vec<FrontierSegment> {
    cluster_segments(&detect_frontiers(belief), belief, min_size)
}
