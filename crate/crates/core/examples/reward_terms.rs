//! Evaluates the step reward along a short approach to a goal, in both
//! readings of the distance term.
//!
//! cargo run --example reward_terms

use frontier_explore::{
    reward_terms, DistanceTermForm, RewardConfig, RewardTerms, StepObservation,
};

fn main() -> frontier_explore::Result<()> {
    for form in [DistanceTermForm::ParenMinusOne, DistanceTermForm::Literal] {
        let cfg = RewardConfig {
            distance_term_form: form,
            ..RewardConfig::default()
        };
        println!("{form:?}");
        println!("d_now,lidar_min,{}", RewardTerms::CSV_HEADER);
        for (d_now, lidar_min) in [(3.0, 2.0), (2.0, 0.5), (1.0, 0.25), (0.2, 0.25), (0.5, 0.1)] {
            let obs = StepObservation {
                lidar_min,
                d_goal_init: 3.0,
                d_goal_now: d_now,
                goal_angle: 0.2,
                action_linear: 0.2,
                action_angular: 0.3,
            };
            println!(
                "{d_now},{lidar_min},{}",
                reward_terms(&obs, &cfg)?.to_csv_row()
            );
        }
    }
    Ok(())
}
