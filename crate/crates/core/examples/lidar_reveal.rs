//! Casts one scan into an unknown belief and prints what it revealed.
//!
//! cargo run --example lidar_reveal

use frontier_explore::{fixtures, raycast_reveal, CellState, LidarModel};

fn main() -> frontier_explore::Result<()> {
    let (truth, start) = fixtures::two_rooms();
    let mut belief = truth.unknown_like();
    let lidar = LidarModel::new(360, 1.5, std::f64::consts::TAU)?;
    let scan = raycast_reveal(&mut belief, &truth, &start, &lidar)?;
    println!(
        "{} cells revealed: {} free, {} occupied; nearest return {:.2} m",
        scan.changed.len(),
        belief.count(CellState::Free),
        belief.count(CellState::Occupied),
        scan.min_range()
    );
    print!("{}", belief.to_ascii());
    Ok(())
}
