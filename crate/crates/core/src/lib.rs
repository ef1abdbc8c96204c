//! Frontier-based autonomous exploration on occupancy grids.
//!
//! The crate simulates a robot exploring an unknown map: LiDAR raycasting
//! reveals a belief grid, frontier cells are clustered into segments, each
//! segment is scored with an exponential-hyperbolic distance term and an
//! occupancy term, and a cost-aware A* planner drives the robot to the
//! winner. A benchmark harness compares the heuristic against simpler
//! frontier selectors, and a pure step-reward function is provided for
//! learning-based local navigation.

pub mod cli;
pub mod error;
pub mod explorer;
pub mod fixtures;
pub mod frontier;
pub mod grid;
pub mod navigator;
pub mod reward;
pub mod scoring;

pub use error::{Error, Result};
pub use explorer::{
    compare_selectors, generate_world, run_exploration, select_baseline, ExplorationConfig,
    Outcome, RunLimits, RunRecord, SelectorKind, Tier,
};
pub use frontier::{
    cluster_segments, detect_frontiers, find_segments, FrontierMask, FrontierSegment,
};
pub use grid::{
    exploration_rate, raycast_reveal, CellState, InflationParams, LidarModel, OccupancyGrid, Pose,
};
pub use navigator::{plan_path, KinematicLimits, KinematicState, PlannedPath, PlannerConfig};
pub use reward::{
    compute_reward, reward_terms, DistanceTermForm, RewardConfig, RewardTerms, StepObservation,
};
pub use scoring::{
    distance_score, heuristic, occupancy_score, select_waypoint, HeuristicParams, ScoreBreakdown,
};
