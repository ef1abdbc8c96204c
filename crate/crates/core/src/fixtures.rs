//! Hand-built maps shared by tests, examples and the CLI.

use crate::grid::{CellState, OccupancyGrid, Pose};

const RES: f64 = 0.1;

/// Character canvas; `(i, j)` with `j = 0` as the first row.
struct Canvas {
    w: usize,
    h: usize,
    cells: Vec<CellState>,
}

impl Canvas {
    fn new(w: usize, h: usize, fill: CellState) -> Self {
        Self {
            w,
            h,
            cells: vec![fill; w * h],
        }
    }

    fn set(&mut self, i: i64, j: i64, s: CellState) {
        assert!(i >= 0 && j >= 0 && (i as usize) < self.w && (j as usize) < self.h);
        self.cells[i as usize + self.w * j as usize] = s;
    }

    /// Inclusive rectangle.
    fn rect(&mut self, i0: i64, j0: i64, i1: i64, j1: i64, s: CellState) {
        for j in j0..=j1 {
            for i in i0..=i1 {
                self.set(i, j, s);
            }
        }
    }

    fn grid(self) -> OccupancyGrid {
        OccupancyGrid::from_states(self.w, self.h, RES, self.cells).expect("fixture is well formed")
    }
}

use CellState::{Free, Occupied, Unknown};

/// The three frontier types of the taxonomy, each nine cells long and two
/// meters from the robot.
#[derive(Debug, Clone)]
pub struct FrontierTypes {
    pub belief: OccupancyGrid,
    pub robot: Pose,
    /// Frontier surrounded by unknown space.
    pub closed: (f64, f64),
    /// Frontier on the edge of a wide free area with sparse obstacles.
    pub open_wide: (f64, f64),
    /// Frontier in a doorway between walls.
    pub door_gap: (f64, f64),
}

#[derive(Clone, Copy)]
enum Pod {
    Closed,
    OpenWide,
    DoorGap,
}

/// Draws a frontier of cells `(ci - 4..=ci + 4, cj)` with unknown space
/// in the `+j` direction and returns the frontier centroid cell.
fn pod(c: &mut Canvas, kind: Pod, ci: i64, cj: i64) {
    match kind {
        Pod::Closed => c.rect(ci - 4, cj, ci + 4, cj, Free),
        Pod::OpenWide | Pod::DoorGap => {
            // A free area closed off by a distant ring of wall.
            c.rect(ci - 13, cj - 13, ci + 13, cj, Occupied);
            c.rect(ci - 12, cj - 12, ci + 12, cj, Free);
            match kind {
                Pod::OpenWide => {
                    // Isolated posts continue the boundary; the free cells
                    // between them are single-cell frontiers.
                    for d in [5, 7, 9, 11] {
                        c.set(ci - d, cj, Occupied);
                        c.set(ci + d, cj, Occupied);
                    }
                }
                _ => {
                    c.rect(ci - 12, cj, ci - 5, cj, Occupied);
                    c.rect(ci + 5, cj, ci + 12, cj, Occupied);
                    c.rect(ci - 5, cj - 4, ci - 5, cj, Occupied);
                    c.rect(ci + 5, cj - 4, ci + 5, cj, Occupied);
                }
            }
        }
    }
}

pub fn frontier_types() -> FrontierTypes {
    let mut c = Canvas::new(81, 81, Unknown);
    let (ri, rj) = (40, 40);
    pod(&mut c, Pod::Closed, ri, rj + 20);
    pod(&mut c, Pod::OpenWide, ri + 20, rj);
    pod(&mut c, Pod::DoorGap, ri - 20, rj);
    let belief = c.grid();
    let center = |i: i64, j: i64| belief.cell_center(i as usize, j as usize);
    let (x, y) = center(ri, rj);
    FrontierTypes {
        robot: Pose::new(x, y, 0.0),
        closed: center(ri, rj + 20),
        open_wide: center(ri + 20, rj),
        door_gap: center(ri - 20, rj),
        belief,
    }
}

/// A room with a doorway close to the robot and a longer opening farther
/// away that looks into unknown space.
#[derive(Debug, Clone)]
pub struct CaseStudy {
    pub belief: OccupancyGrid,
    pub robot: Pose,
    /// Frontier 1: nine-cell doorway, 2.5 m away.
    pub near_door: (f64, f64),
    /// Frontier 2: fifteen-cell opening, about 3 m away.
    pub enclosed: (f64, f64),
}

pub fn case_study() -> CaseStudy {
    let mut c = Canvas::new(81, 71, Unknown);
    c.rect(9, 9, 71, 46, Occupied);
    c.rect(10, 10, 70, 45, Free);
    // Doorway in the top wall with short wing walls inside the room.
    c.rect(36, 46, 44, 46, Unknown);
    c.rect(35, 42, 35, 46, Occupied);
    c.rect(45, 42, 45, 46, Occupied);
    // Missing stretch of the right wall.
    c.rect(71, 14, 71, 28, Unknown);
    let belief = c.grid();
    let (x, y) = belief.cell_center(40, 20);
    CaseStudy {
        robot: Pose::new(x, y, 0.0),
        near_door: belief.cell_center(40, 45),
        enclosed: belief.cell_center(70, 21),
        belief,
    }
}

/// Two rooms joined by a doorway, fully known.
pub fn two_rooms() -> (OccupancyGrid, Pose) {
    let mut c = Canvas::new(52, 30, Occupied);
    c.rect(1, 1, 24, 28, Free);
    c.rect(26, 1, 50, 28, Free);
    c.rect(25, 10, 25, 18, Free);
    let g = c.grid();
    let (x, y) = g.cell_center(8, 8);
    (g, Pose::new(x, y, 0.0))
}

/// An empty square room of `n` by `n` cells including its walls.
pub fn empty_room(n: usize) -> OccupancyGrid {
    let mut c = Canvas::new(n, n, Occupied);
    c.rect(1, 1, n as i64 - 2, n as i64 - 2, Free);
    c.grid()
}
