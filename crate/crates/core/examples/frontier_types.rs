//! Scores the closed, open-wide and door-gap frontiers, which sit at the
//! same distance with the same length, and shows which one wins.
//!
//! cargo run --example frontier_types

use frontier_explore::{find_segments, fixtures, select_waypoint, HeuristicParams};

fn main() -> frontier_explore::Result<()> {
    let fx = fixtures::frontier_types();
    let segs = find_segments(&fx.belief, 3);
    let (chosen, rows) =
        select_waypoint(&segs, &fx.robot, &fx.belief, &HeuristicParams::default())?;
    let name = |c: (f64, f64)| {
        [
            (fx.closed, "closed"),
            (fx.open_wide, "open-wide"),
            (fx.door_gap, "door-gap"),
        ]
        .into_iter()
        .find(|(p, _)| (p.0 - c.0).abs() < 1e-9 && (p.1 - c.1).abs() < 1e-9)
        .map_or("other", |(_, n)| n)
    };
    println!(
        "{:<10} {:>6} {:>8} {:>8} {:>8}",
        "frontier", "d", "D", "O", "h"
    );
    for r in &rows {
        println!(
            "{:<10} {:>6.2} {:>8.4} {:>8.4} {:>8.4}{}",
            name(segs[r.segment_id].centroid),
            r.d,
            r.distance_score,
            r.occupancy_score,
            r.h,
            if r.segment_id == chosen {
                "  <- chosen"
            } else {
                ""
            }
        );
    }
    Ok(())
}
