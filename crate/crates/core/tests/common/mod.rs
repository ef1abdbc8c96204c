#![allow(dead_code)]

use frontier_explore::{CellState, OccupancyGrid};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random truth grid with a given obstacle density and no Unknown cells.
pub fn random_truth(
    rng: &mut ChaCha8Rng,
    w: usize,
    h: usize,
    res: f64,
    density: f64,
) -> OccupancyGrid {
    let states = (0..w * h)
        .map(|_| {
            if rng.gen_bool(density) {
                CellState::Occupied
            } else {
                CellState::Free
            }
        })
        .collect();
    OccupancyGrid::from_states(w, h, res, states).unwrap()
}

/// Random belief grid mixing all three states.
pub fn random_belief(
    rng: &mut ChaCha8Rng,
    w: usize,
    h: usize,
    res: f64,
    p: [f64; 2],
) -> OccupancyGrid {
    let states = (0..w * h)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < p[0] {
                CellState::Occupied
            } else if u < p[0] + p[1] {
                CellState::Unknown
            } else {
                CellState::Free
            }
        })
        .collect();
    OccupancyGrid::from_states(w, h, res, states).unwrap()
}

/// Indices of cells in `state`.
pub fn cells_in(grid: &OccupancyGrid, state: CellState) -> Vec<usize> {
    (0..grid.len())
        .filter(|&k| grid.states()[k] == state)
        .collect()
}
