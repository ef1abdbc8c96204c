//! A nearby doorway against a farther opening into unknown space: the
//! farther frontier has the lower heuristic and is chosen.
//!
//! cargo run --example score_case_study

use frontier_explore::explorer::benchmark_config;
use frontier_explore::{find_segments, fixtures, select_waypoint, HeuristicParams};

fn main() -> frontier_explore::Result<()> {
    let cs = fixtures::case_study();
    let segs = find_segments(&cs.belief, 3);
    for (label, params) in [
        ("defaults", HeuristicParams::default()),
        ("benchmark", benchmark_config().heuristic),
    ] {
        let (chosen, rows) = select_waypoint(&segs, &cs.robot, &cs.belief, &params)?;
        println!("{label} (alpha {}, beta {}):", params.alpha, params.beta);
        for r in &rows {
            let c = segs[r.segment_id].centroid;
            println!(
                "  segment {} at ({:.2}, {:.2}): d {:.3} D {:.5} O {:.5} h {:.4}{}",
                r.segment_id,
                c.0,
                c.1,
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
    }
    Ok(())
}
