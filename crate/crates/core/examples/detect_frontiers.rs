//! Scans a map once, then lists the frontier segments with their centroid,
//! length and radius.
//!
//! cargo run --example detect_frontiers

use frontier_explore::{detect_frontiers, find_segments, fixtures, raycast_reveal, LidarModel};

fn main() -> frontier_explore::Result<()> {
    let (truth, start) = fixtures::two_rooms();
    let mut belief = truth.unknown_like();
    raycast_reveal(&mut belief, &truth, &start, &LidarModel::default())?;

    let mask = detect_frontiers(&belief);
    println!("{} frontier cells", mask.count());
    for (k, s) in find_segments(&belief, 3).iter().enumerate() {
        println!(
            "segment {k}: {} cells, centroid ({:.2}, {:.2}), length {:.2} m, radius {:.2} m",
            s.len(),
            s.centroid.0,
            s.centroid.1,
            s.length_af,
            s.radius_r
        );
    }
    Ok(())
}
