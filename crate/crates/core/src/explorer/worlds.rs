//! Seeded multi-room test worlds built by recursive division.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MapCase;
use crate::grid::{CellState, OccupancyGrid};

const RESOLUTION: f64 = 0.1;
const DOOR_MIN: usize = 8;
const DOOR_MAX: usize = 10;
const BOX_MIN: usize = 3;
const BOX_MAX: usize = 6;
const BOX_CLEARANCE: usize = 6;

/// Layout complexity of a generated world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    /// A few large rooms.
    Low,
    /// Several mid-sized rooms.
    Medium,
    /// Many small rooms and corridors.
    High,
}

struct TierShape {
    width: usize,
    height: usize,
    min_room: usize,
    boxes: usize,
}

impl Tier {
    pub fn label(&self) -> &'static str {
        match self {
            Tier::Low => "low",
            Tier::Medium => "medium",
            Tier::High => "high",
        }
    }

    fn shape(&self) -> TierShape {
        match self {
            Tier::Low => TierShape {
                width: 60,
                height: 60,
                min_room: 22,
                boxes: 2,
            },
            Tier::Medium => TierShape {
                width: 100,
                height: 90,
                min_room: 20,
                boxes: 4,
            },
            Tier::High => TierShape {
                width: 140,
                height: 140,
                min_room: 13,
                boxes: 6,
            },
        }
    }
}

struct Builder {
    w: usize,
    cells: Vec<CellState>,
    min_room: usize,
    rooms: Vec<(usize, usize, usize, usize)>,
}

impl Builder {
    fn set(&mut self, i: usize, j: usize, s: CellState) {
        self.cells[i + self.w * j] = s;
    }

    fn get(&self, i: usize, j: usize) -> CellState {
        self.cells[i + self.w * j]
    }

    /// Splits the inclusive free rectangle `[x0, x1] x [y0, y1]`.
    fn divide(&mut self, rng: &mut ChaCha8Rng, x0: usize, y0: usize, x1: usize, y1: usize) {
        let (w, h) = (x1 - x0 + 1, y1 - y0 + 1);
        let m = self.min_room;
        let can_v = w > 2 * m;
        let can_h = h > 2 * m;
        let vertical = match (can_v, can_h) {
            (false, false) => {
                self.rooms.push((x0, y0, x1, y1));
                return;
            }
            (true, false) => true,
            (false, true) => false,
            (true, true) => {
                if w == h {
                    rng.gen_bool(0.5)
                } else {
                    w > h
                }
            }
        };
        if vertical {
            // Wall column x; it must not land in front of a door in the rows bounding the region.
            let options: Vec<usize> = (x0 + m..=x1 - m)
                .filter(|&x| self.clear_of_doors_v(x, y0, y1))
                .collect();
            if options.is_empty() {
                self.rooms.push((x0, y0, x1, y1));
                return;
            }
            let x = options[rng.gen_range(0..options.len())];
            for y in y0..=y1 {
                self.set(x, y, CellState::Occupied);
            }
            let door = rng.gen_range(DOOR_MIN..=DOOR_MAX).min(h);
            let at = rng.gen_range(y0..=y1 + 1 - door);
            for y in at..at + door {
                self.set(x, y, CellState::Free);
            }
            self.divide(rng, x0, y0, x - 1, y1);
            self.divide(rng, x + 1, y0, x1, y1);
        } else {
            let options: Vec<usize> = (y0 + m..=y1 - m)
                .filter(|&y| self.clear_of_doors_h(y, x0, x1))
                .collect();
            if options.is_empty() {
                self.rooms.push((x0, y0, x1, y1));
                return;
            }
            let y = options[rng.gen_range(0..options.len())];
            for x in x0..=x1 {
                self.set(x, y, CellState::Occupied);
            }
            let door = rng.gen_range(DOOR_MIN..=DOOR_MAX).min(w);
            let at = rng.gen_range(x0..=x1 + 1 - door);
            for x in at..at + door {
                self.set(x, y, CellState::Free);
            }
            self.divide(rng, x0, y0, x1, y - 1);
            self.divide(rng, x0, y + 1, x1, y1);
        }
    }

    /// A vertical wall at `x` keeps two cells from any doorway above or below it.
    fn clear_of_doors_v(&self, x: usize, y0: usize, y1: usize) -> bool {
        (x - 2..=x + 2).all(|xx| {
            self.get(xx, y0 - 1) == CellState::Occupied
                && self.get(xx, y1 + 1) == CellState::Occupied
        })
    }

    fn clear_of_doors_h(&self, y: usize, x0: usize, x1: usize) -> bool {
        (y - 2..=y + 2).all(|yy| {
            self.get(x0 - 1, yy) == CellState::Occupied
                && self.get(x1 + 1, yy) == CellState::Occupied
        })
    }

    fn place_box(&mut self, rng: &mut ChaCha8Rng) {
        if self.rooms.is_empty() {
            return;
        }
        for _ in 0..50 {
            let (x0, y0, x1, y1) = self.rooms[rng.gen_range(0..self.rooms.len())];
            let bw = rng.gen_range(BOX_MIN..=BOX_MAX);
            let bh = rng.gen_range(BOX_MIN..=BOX_MAX);
            let c = BOX_CLEARANCE;
            if x1 + 1 < x0 + bw + 2 * c || y1 + 1 < y0 + bh + 2 * c {
                continue;
            }
            let bx = rng.gen_range(x0 + c..=x1 + 1 - c - bw);
            let by = rng.gen_range(y0 + c..=y1 + 1 - c - bh);
            // Keep the clearance band free of walls and other boxes.
            let clear = (by - c..by + bh + c)
                .all(|y| (bx - c..bx + bw + c).all(|x| self.get(x, y) == CellState::Free));
            if !clear {
                continue;
            }
            for y in by..by + bh {
                for x in bx..bx + bw {
                    self.set(x, y, CellState::Occupied);
                }
            }
            return;
        }
    }
}

/// Builds a closed world of walled rooms joined by doorways, with a few
/// free-standing boxes. The same tier and seed always give the same map.
pub fn generate_world(tier: Tier, seed: u64) -> OccupancyGrid {
    let shape = tier.shape();
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (tier as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let (w, h) = (shape.width, shape.height);
    let mut b = Builder {
        w,
        cells: vec![CellState::Occupied; w * h],
        min_room: shape.min_room,
        rooms: Vec::new(),
    };
    for j in 1..h - 1 {
        for i in 1..w - 1 {
            b.set(i, j, CellState::Free);
        }
    }
    b.divide(&mut rng, 1, 1, w - 2, h - 2);
    for _ in 0..shape.boxes {
        b.place_box(&mut rng);
    }
    OccupancyGrid::from_states(w, h, RESOLUTION, b.cells).expect("generated world is well formed")
}

/// The standard benchmark set: twenty maps spread over the three tiers.
pub fn benchmark_maps() -> Vec<MapCase> {
    let plan = [(Tier::Low, 7), (Tier::Medium, 7), (Tier::High, 6)];
    let mut maps = Vec::new();
    for (tier, count) in plan {
        for seed in 0..count {
            maps.push(MapCase {
                name: format!("{}_{seed}", tier.label()),
                group: tier.label().to_string(),
                truth: generate_world(tier, seed),
                start: None,
            });
        }
    }
    maps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{reachable_mask, Pose};

    fn free_cells(g: &OccupancyGrid) -> usize {
        g.count(CellState::Free)
    }

    #[test]
    fn deterministic() {
        for tier in [Tier::Low, Tier::Medium, Tier::High] {
            assert_eq!(generate_world(tier, 3), generate_world(tier, 3));
        }
        assert_ne!(generate_world(Tier::High, 1), generate_world(Tier::High, 2));
    }

    #[test]
    fn free_space_is_connected() {
        for tier in [Tier::Low, Tier::Medium, Tier::High] {
            for seed in 0..6 {
                let g = generate_world(tier, seed);
                let k = g
                    .states()
                    .iter()
                    .position(|&s| s == CellState::Free)
                    .unwrap();
                let (i, j) = g.coords(k);
                let (x, y) = g.cell_center(i, j);
                let mask = reachable_mask(&g, &Pose::new(x, y, 0.0)).unwrap();
                let reach = mask.iter().filter(|&&m| m).count();
                assert_eq!(reach, free_cells(&g), "{tier:?} seed {seed}");
            }
        }
    }

    #[test]
    fn border_is_closed() {
        let g = generate_world(Tier::Medium, 9);
        let (w, h) = (g.width(), g.height());
        for i in 0..w {
            assert_eq!(g.state(i, 0), CellState::Occupied);
            assert_eq!(g.state(i, h - 1), CellState::Occupied);
        }
        for j in 0..h {
            assert_eq!(g.state(0, j), CellState::Occupied);
            assert_eq!(g.state(w - 1, j), CellState::Occupied);
        }
    }

    #[test]
    fn tiers_grow_in_rooms() {
        let rooms = |t: Tier| {
            let shape = t.shape();
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut b = Builder {
                w: shape.width,
                cells: vec![CellState::Occupied; shape.width * shape.height],
                min_room: shape.min_room,
                rooms: Vec::new(),
            };
            for j in 1..shape.height - 1 {
                for i in 1..shape.width - 1 {
                    b.set(i, j, CellState::Free);
                }
            }
            b.divide(&mut rng, 1, 1, shape.width - 2, shape.height - 2);
            b.rooms.len()
        };
        assert!(rooms(Tier::Low) < rooms(Tier::Medium));
        assert!(rooms(Tier::Medium) < rooms(Tier::High));
    }
}
