//! Plans across the doorway of the two-room map and drives the path with
//! the kinematic follower.
//!
//! cargo run --example plan_path

use frontier_explore::{fixtures, plan_path, KinematicLimits, PlannerConfig};

fn main() -> frontier_explore::Result<()> {
    let (map, start) = fixtures::two_rooms();
    let goal = map.cell_center(44, 20);
    let mut path = plan_path(&map, &start, goal, &PlannerConfig::default())?;
    println!(
        "{} waypoints, {:.2} m, cost {:.3}",
        path.waypoints.len(),
        path.total_length,
        path.total_cost
    );

    let mut robot = KinematicLimits::default().at(start);
    let (mut ticks, mut travelled) = (0, 0.0);
    while !path.is_empty() && ticks < 10_000 {
        travelled += robot.advance(&mut path);
        ticks += 1;
    }
    println!(
        "reached ({:.2}, {:.2}) after {ticks} ticks, {travelled:.2} m driven",
        robot.pose.x, robot.pose.y
    );
    Ok(())
}
